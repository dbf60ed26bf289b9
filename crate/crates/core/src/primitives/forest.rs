use std::collections::HashMap;

use crate::graph::{Edge, VertexSet};
use crate::oracle::{CcQuery, Metered, OracleError};
use crate::{Error, Result};

use super::{is_local_halt, KnownEdges};

/// Counts of still-unknown edges inside a vertex set. Values may be
/// negative or inconsistent when the underlying simulation is fed a graph
/// that violates its assumptions; reconstructors must tolerate that.
pub type DensityFn<'a> = dyn FnMut(&VertexSet) -> Result<i64, OracleError> + 'a;

/// Recovers the unknown edges inside a vertex set from unknown-edge counts.
pub trait DensityReconstructor {
    /// Appends edges to `found` as soon as they are identified, so that a
    /// budget halt from `density` leaves the partial result in place.
    /// `root` is the count for `vs` itself when the caller already has it.
    fn reconstruct(
        &self,
        vs: &VertexSet,
        root: Option<i64>,
        density: &mut DensityFn<'_>,
        found: &mut Vec<Edge>,
    ) -> Result<(), OracleError>;
}

/// Recursive bipartition over a fixed halving tree.
///
/// A node with count zero is never expanded. The count between two sibling
/// subtrees is the parent count minus the two child counts; it is narrowed
/// by splitting the larger side, one new count per split.
#[derive(Debug, Clone, Copy, Default)]
pub struct BipartitionDensity;

struct Search<'a, 'b> {
    density: &'a mut DensityFn<'b>,
    memo: HashMap<VertexSet, i64>,
    found: &'a mut Vec<Edge>,
}

impl Search<'_, '_> {
    fn count(&mut self, s: &VertexSet) -> Result<i64, OracleError> {
        if s.len() < 2 {
            return Ok(0);
        }
        if let Some(&d) = self.memo.get(s) {
            return Ok(d);
        }
        let d = (self.density)(s)?.max(0);
        self.memo.insert(s.clone(), d);
        Ok(d)
    }

    fn child_count(&mut self, parent: i64, child: &VertexSet) -> Result<i64, OracleError> {
        if parent == 0 {
            Ok(0)
        } else {
            self.count(child)
        }
    }

    fn within(&mut self, u: &VertexSet, du: i64) -> Result<(), OracleError> {
        if du <= 0 || u.len() < 2 {
            return Ok(());
        }
        if u.len() == 2 {
            let s = u.as_slice();
            self.found.push(Edge::new(s[0], s[1]));
            return Ok(());
        }
        let (l, r) = u.split_halves();
        let dl = self.count(&l)?;
        let dr = self.count(&r)?;
        self.within(&l, dl)?;
        self.within(&r, dr)?;
        self.between(&l, dl, &r, dr, du - dl - dr)
    }

    fn between(
        &mut self,
        a: &VertexSet,
        da: i64,
        b: &VertexSet,
        db: i64,
        cross: i64,
    ) -> Result<(), OracleError> {
        if cross <= 0 || a.is_empty() || b.is_empty() {
            return Ok(());
        }
        if a.len() == 1 && b.len() == 1 {
            self.found.push(Edge::new(a.as_slice()[0], b.as_slice()[0]));
            return Ok(());
        }
        if cross as usize >= a.len() * b.len() {
            for x in a.iter() {
                self.found.extend(b.iter().map(|y| Edge::new(x, y)));
            }
            return Ok(());
        }
        let (big, dbig, small, dsmall) = if a.len() >= b.len() {
            (a, da, b, db)
        } else {
            (b, db, a, da)
        };
        let (x1, x2) = big.split_halves();
        let d1 = self.child_count(dbig, &x1)?;
        let d2 = self.child_count(dbig, &x2)?;
        let joint = self.count(&x1.union(small))?;
        let c1 = (joint - d1 - dsmall).clamp(0, cross);
        self.between(&x1, d1, small, dsmall, c1)?;
        self.between(&x2, d2, small, dsmall, cross - c1)
    }
}

impl DensityReconstructor for BipartitionDensity {
    fn reconstruct(
        &self,
        vs: &VertexSet,
        root: Option<i64>,
        density: &mut DensityFn<'_>,
        found: &mut Vec<Edge>,
    ) -> Result<(), OracleError> {
        let mut search = Search {
            density,
            memo: HashMap::new(),
            found,
        };
        let d = match root {
            Some(d) => d.max(0),
            None => search.count(vs)?,
        };
        search.within(vs, d)
    }
}

/// Unknown edges inside `vs`, given exact induced-edge counts.
pub fn density_reconstruct<F>(vs: &VertexSet, known: &KnownEdges, mut density: F) -> Result<Vec<Edge>>
where
    F: FnMut(&VertexSet) -> Result<usize, OracleError>,
{
    let mut unknown = |s: &VertexSet| -> Result<i64, OracleError> {
        Ok(density(s)? as i64 - known.count_within(s) as i64)
    };
    let mut found = Vec::new();
    BipartitionDensity.reconstruct(vs, None, &mut unknown, &mut found)?;
    found.sort_unstable();
    Ok(found)
}

/// Query allowance for forest reconstruction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForestBudget {
    c_density: f64,
}

impl ForestBudget {
    pub fn new(c_density: f64) -> Result<Self> {
        if !(c_density.is_finite() && c_density > 0.0) {
            return Err(Error::InvalidInput(format!(
                "density constant must be positive, got {c_density}"
            )));
        }
        Ok(Self { c_density })
    }

    pub fn c_density(&self) -> f64 {
        self.c_density
    }

    /// Counting queries allowed for `k` unknown edges on `vs_len` vertices.
    pub fn limit(&self, vs_len: usize, k: usize) -> u64 {
        let k = k.max(2) as f64;
        let span = (vs_len.max(2) as f64).log2();
        (self.c_density * k * span / k.log2()).ceil() as u64
    }
}

impl Default for ForestBudget {
    fn default() -> Self {
        Self { c_density: 16.0 }
    }
}

/// Unknown edges of `G[vs]` when it is a forest; a sound subset otherwise.
pub fn reconstruct_forest<Q: CcQuery + ?Sized>(
    o: &mut Q,
    vs: &VertexSet,
    known: &KnownEdges,
    budget: ForestBudget,
) -> Result<Vec<Edge>> {
    reconstruct_forest_with(o, vs, known, budget, &BipartitionDensity)
}

pub fn reconstruct_forest_with<Q: CcQuery + ?Sized>(
    o: &mut Q,
    vs: &VertexSet,
    known: &KnownEdges,
    budget: ForestBudget,
    method: &dyn DensityReconstructor,
) -> Result<Vec<Edge>> {
    if vs.len() < 2 {
        return Ok(Vec::new());
    }
    let cc = o.query(vs)?;
    let estimate = (vs.len() - cc).saturating_sub(known.count_within(vs));
    if estimate == 0 {
        return Ok(Vec::new());
    }
    let mut found = Vec::new();
    {
        let mut metered = Metered::new(o, budget.limit(vs.len(), estimate));
        let mut unknown = |s: &VertexSet| -> Result<i64, OracleError> {
            let cc = metered.query(s)?;
            Ok((s.len() - cc) as i64 - known.count_within(s) as i64)
        };
        let run = method.reconstruct(vs, Some(estimate as i64), &mut unknown, &mut found);
        if let Err(e) = run {
            let e = Error::from(e);
            if !is_local_halt(&e, metered.exhausted()) {
                return Err(e);
            }
        }
    }
    let mut out = Vec::new();
    for e in found.into_iter().filter(|e| !known.contains(*e)).take(estimate) {
        if o.query(&VertexSet::pair(e.lo(), e.hi()))? != 1 {
            break;
        }
        out.push(e);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
