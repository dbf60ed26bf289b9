//! The connected-component-count oracle.
//!
//! Every reconstruction algorithm talks to the hidden graph only through
//! [`CcQuery`]. [`CcOracle`] is the honest implementation: it keeps a
//! [`QueryLedger`] of counts (and optionally a full trace), enforces an
//! optional query budget, and in batched mode withholds answers until the
//! batch that contains them is closed.

use std::io::{self, Write};

use thiserror::Error;

use crate::graph::{CcEvaluator, Graph, GraphError, Vertex, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("query budget of {limit} exhausted")]
    BudgetExceeded { limit: u64 },
    #[error("adaptivity contract violated: {0}")]
    ContractViolation(String),
    #[error(transparent)]
    InvalidQuery(#[from] GraphError),
}

/// Answers `CC(G[s])` for the hidden graph `G`.
pub trait CcQuery {
    /// Order of the hidden graph; vertices are `0..vertex_count()`.
    fn vertex_count(&self) -> usize;

    fn query(&mut self, set: &VertexSet) -> Result<usize, OracleError>;
}

impl<Q: CcQuery + ?Sized> CcQuery for &mut Q {
    fn vertex_count(&self) -> usize {
        (**self).vertex_count()
    }

    fn query(&mut self, set: &VertexSet) -> Result<usize, OracleError> {
        (**self).query(set)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// Every answer is released immediately.
    Adaptive,
    /// Queries are submitted into at most `rounds` batches; answers are
    /// released when a batch closes.
    Batched { rounds: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub round: usize,
    pub set: VertexSet,
    pub answer: usize,
}

/// Append-only record of oracle interactions.
#[derive(Debug, Clone)]
pub struct QueryLedger {
    mode: OracleMode,
    total: u64,
    // batched mode: one entry per opened batch, the last may still be open
    batches: Vec<u64>,
    batch_open: bool,
    trace: Option<Vec<TraceEntry>>,
}

impl QueryLedger {
    fn new(mode: OracleMode, trace: bool) -> Self {
        Self {
            mode,
            total: 0,
            batches: Vec::new(),
            batch_open: false,
            trace: trace.then(Vec::new),
        }
    }

    pub fn mode(&self) -> OracleMode {
        self.mode
    }

    pub fn total_queries(&self) -> u64 {
        self.total
    }

    /// Adaptive mode counts every query as its own round; batched mode
    /// counts closed batches.
    pub fn rounds(&self) -> u64 {
        match self.mode {
            OracleMode::Adaptive => self.total,
            OracleMode::Batched { .. } => {
                self.batches.len() as u64 - u64::from(self.batch_open)
            }
        }
    }

    /// Sizes of all batches opened so far (batched mode only).
    pub fn batch_sizes(&self) -> &[u64] {
        &self.batches
    }

    pub fn trace(&self) -> Option<&[TraceEntry]> {
        self.trace.as_deref()
    }

    /// Re-evaluates every traced query against `g`. Returns `None` when no
    /// trace was recorded.
    pub fn replay(&self, g: &Graph) -> Option<bool> {
        let trace = self.trace.as_ref()?;
        let mut eval = CcEvaluator::new(g.n());
        Some(
            trace
                .iter()
                .all(|t| eval.cc_count(g, &t.set).ok() == Some(t.answer)),
        )
    }

    /// One line per query: `round_index set_size answer`, followed by the
    /// members when `verbose`.
    pub fn write_trace<W: Write>(&self, mut w: W, verbose: bool) -> io::Result<()> {
        let Some(trace) = &self.trace else {
            return Ok(());
        };
        for t in trace {
            write!(w, "{} {} {}", t.round, t.set.len(), t.answer)?;
            if verbose {
                for v in t.set.iter() {
                    write!(w, " {v}")?;
                }
            }
            writeln!(w)?;
        }
        Ok(())
    }

    fn count_only(&mut self) {
        self.total += 1;
        if let Some(last) = self.batches.last_mut().filter(|_| self.batch_open) {
            *last += 1;
        }
    }

    fn record(&mut self, set: &VertexSet, answer: usize) {
        let round = match self.mode {
            OracleMode::Adaptive => self.total as usize,
            OracleMode::Batched { .. } => self.batches.len() - 1,
        };
        self.count_only();
        if let Some(trace) = &mut self.trace {
            trace.push(TraceEntry {
                round,
                set: set.clone(),
                answer,
            });
        }
    }
}

/// Handle to an answer submitted into the open batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ticket(pub(crate) usize);

impl Ticket {
    pub fn index(self) -> usize {
        self.0
    }
}

/// The honest, static oracle over a hidden graph.
pub struct CcOracle {
    hidden: Graph,
    eval: CcEvaluator,
    ledger: QueryLedger,
    budget: Option<u64>,
    // answers are computed at submission and held back until close
    pending: Vec<usize>,
}

impl CcOracle {
    pub fn new(hidden: Graph, mode: OracleMode) -> Self {
        Self::with_options(hidden, mode, None, false)
    }

    pub fn adaptive(hidden: Graph) -> Self {
        Self::new(hidden, OracleMode::Adaptive)
    }

    pub fn with_options(hidden: Graph, mode: OracleMode, budget: Option<u64>, trace: bool) -> Self {
        let eval = CcEvaluator::new(hidden.n());
        Self {
            hidden,
            eval,
            ledger: QueryLedger::new(mode, trace),
            budget,
            pending: Vec::new(),
        }
    }

    pub fn ledger(&self) -> &QueryLedger {
        &self.ledger
    }

    pub fn into_ledger(self) -> QueryLedger {
        self.ledger
    }

    pub fn total_queries(&self) -> u64 {
        self.ledger.total
    }

    pub fn is_batch_open(&self) -> bool {
        self.ledger.batch_open
    }

    fn charge(&mut self) -> Result<(), OracleError> {
        match self.budget {
            Some(limit) if self.ledger.total >= limit => Err(OracleError::BudgetExceeded { limit }),
            _ => Ok(()),
        }
    }

    fn answer(&mut self, set: &VertexSet) -> Result<usize, OracleError> {
        let answer = self.eval.cc_count(&self.hidden, set)?;
        self.ledger.record(set, answer);
        Ok(answer)
    }

    pub fn open_batch(&mut self) -> Result<(), OracleError> {
        let OracleMode::Batched { rounds } = self.ledger.mode else {
            return Err(OracleError::ContractViolation(
                "batches are only available in batched mode".into(),
            ));
        };
        if self.ledger.batch_open {
            return Err(OracleError::ContractViolation(
                "previous batch is still open".into(),
            ));
        }
        if self.ledger.batches.len() >= rounds {
            return Err(OracleError::ContractViolation(format!(
                "round budget of {rounds} exhausted"
            )));
        }
        self.ledger.batches.push(0);
        self.ledger.batch_open = true;
        self.pending.clear();
        Ok(())
    }

    /// Adds a query to the open batch. Its answer is released by
    /// [`close_batch`](Self::close_batch) at position `ticket.index()`.
    pub fn submit(&mut self, set: &VertexSet) -> Result<Ticket, OracleError> {
        if !self.ledger.batch_open {
            return Err(OracleError::ContractViolation(
                "query submitted outside an open batch".into(),
            ));
        }
        self.charge()?;
        let answer = self.answer(set)?;
        self.pending.push(answer);
        Ok(Ticket(self.pending.len() - 1))
    }

    /// Submits `s` and then `s ∪ {u}` as two queries of the open batch.
    /// Both are charged and traced like any other submission.
    pub fn submit_pair(&mut self, s: &VertexSet, u: Vertex) -> Result<(Ticket, Ticket), OracleError> {
        if !self.ledger.batch_open {
            return Err(OracleError::ContractViolation(
                "query submitted outside an open batch".into(),
            ));
        }
        if let Some(limit) = self.budget {
            if self.ledger.total + 2 > limit {
                return Err(OracleError::BudgetExceeded { limit });
            }
        }
        let (without, with) = self.eval.cc_count_with(&self.hidden, s, u)?;
        self.ledger.record(s, without);
        if self.ledger.trace.is_some() {
            self.ledger.record(&s.with(u), with);
        } else {
            self.ledger.count_only();
        }
        self.pending.push(without);
        self.pending.push(with);
        let first = self.pending.len() - 2;
        Ok((Ticket(first), Ticket(first + 1)))
    }

    /// Closes the open batch and releases its answers in submission order.
    pub fn close_batch(&mut self) -> Result<Vec<usize>, OracleError> {
        if !self.ledger.batch_open {
            return Err(OracleError::ContractViolation("no batch is open".into()));
        }
        self.ledger.batch_open = false;
        Ok(std::mem::take(&mut self.pending))
    }
}

impl CcQuery for CcOracle {
    fn vertex_count(&self) -> usize {
        self.hidden.n()
    }

    fn query(&mut self, set: &VertexSet) -> Result<usize, OracleError> {
        if let OracleMode::Batched { .. } = self.ledger.mode {
            return Err(OracleError::ContractViolation(
                "immediate queries are not allowed in batched mode; use submit".into(),
            ));
        }
        self.charge()?;
        self.answer(set)
    }
}

/// A local query allowance layered over another oracle. Once `limit`
/// queries have been made, further queries fail with
/// [`OracleError::BudgetExceeded`] and [`exhausted`](Self::exhausted)
/// becomes true, which lets callers tell a local halt from an exhausted
/// global budget.
pub struct Metered<'a, Q: ?Sized> {
    inner: &'a mut Q,
    used: u64,
    limit: u64,
    exhausted: bool,
}

impl<'a, Q: CcQuery + ?Sized> Metered<'a, Q> {
    pub fn new(inner: &'a mut Q, limit: u64) -> Self {
        Self {
            inner,
            used: 0,
            limit,
            exhausted: false,
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted
    }
}

impl<Q: CcQuery + ?Sized> CcQuery for Metered<'_, Q> {
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn query(&mut self, set: &VertexSet) -> Result<usize, OracleError> {
        if self.used >= self.limit {
            self.exhausted = true;
            return Err(OracleError::BudgetExceeded { limit: self.limit });
        }
        let answer = self.inner.query(set)?;
        self.used += 1;
        Ok(answer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn adaptive_query_counts() {
        let mut o = CcOracle::adaptive(triangle());
        assert_eq!(o.query(&VertexSet::full(3)).unwrap(), 1);
        assert_eq!(o.total_queries(), 1);
        assert_eq!(o.ledger().rounds(), 1);
    }

    #[test]
    fn budget_trips_on_the_violating_query() {
        let mut o = CcOracle::with_options(triangle(), OracleMode::Adaptive, Some(5), false);
        for _ in 0..5 {
            o.query(&VertexSet::pair(0, 1)).unwrap();
        }
        assert_eq!(
            o.query(&VertexSet::pair(0, 1)),
            Err(OracleError::BudgetExceeded { limit: 5 })
        );
        assert_eq!(o.total_queries(), 5);
    }

    #[test]
    fn batched_round_contract() {
        let mut o = CcOracle::new(triangle(), OracleMode::Batched { rounds: 2 });
        assert!(matches!(
            o.query(&VertexSet::full(3)),
            Err(OracleError::ContractViolation(_))
        ));
        assert!(o.submit(&VertexSet::full(3)).is_err());
        o.open_batch().unwrap();
        assert!(o.open_batch().is_err());
        let t = o.submit(&VertexSet::pair(0, 2)).unwrap();
        o.submit(&VertexSet::full(3)).unwrap();
        let answers = o.close_batch().unwrap();
        assert_eq!(answers[t.index()], 1);
        assert_eq!(answers.len(), 2);
        o.open_batch().unwrap();
        assert_eq!(o.close_batch().unwrap(), Vec::<usize>::new());
        assert_eq!(o.ledger().rounds(), 2);
        assert!(o.open_batch().is_err());
        assert!(o.submit(&VertexSet::full(3)).is_err());
        assert_eq!(o.ledger().batch_sizes(), &[2, 0]);
        assert_eq!(o.total_queries(), 2);
    }

    #[test]
    fn adaptive_mode_has_no_batches() {
        let mut o = CcOracle::adaptive(triangle());
        assert!(o.open_batch().is_err());
        assert!(o.close_batch().is_err());
    }

    #[test]
    fn trace_replays_and_dumps() {
        let g = triangle();
        let mut o = CcOracle::with_options(g.clone(), OracleMode::Adaptive, None, true);
        o.query(&VertexSet::pair(0, 1)).unwrap();
        o.query(&VertexSet::singleton(2)).unwrap();
        assert_eq!(o.ledger().replay(&g), Some(true));
        let mut other = Graph::from_edges(3, [(1, 2)]).unwrap();
        assert_eq!(o.ledger().replay(&other), Some(false));
        other = Graph::empty(3);
        assert_eq!(o.ledger().replay(&other), Some(false));

        let mut out = Vec::new();
        o.ledger().write_trace(&mut out, false).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "0 2 1\n1 1 1\n");
        let mut out = Vec::new();
        o.ledger().write_trace(&mut out, true).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "0 2 1 0 1\n1 1 1 2\n");
    }

    #[test]
    fn metered_marks_local_exhaustion() {
        let mut o = CcOracle::adaptive(triangle());
        let mut m = Metered::new(&mut o, 1);
        m.query(&VertexSet::full(3)).unwrap();
        assert!(m.query(&VertexSet::full(3)).is_err());
        assert!(m.exhausted());
        assert_eq!(o.total_queries(), 1);
    }

    #[test]
    fn invalid_vertex_is_reported() {
        let mut o = CcOracle::adaptive(triangle());
        assert!(matches!(
            o.query(&VertexSet::singleton(9)),
            Err(OracleError::InvalidQuery(_))
        ));
        assert_eq!(o.total_queries(), 0);
    }
}
