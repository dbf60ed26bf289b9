//! Query subroutines shared by the reconstructors.
//!
//! Everything here talks to the hidden graph only through [`CcQuery`], so
//! the same code runs against the honest oracle, a metered wrapper, or a
//! test adapter.

mod coloring;
mod forest;
mod high_degree;
mod neighbors;

use std::collections::HashMap;

use crate::graph::{Edge, Vertex, VertexSet};
use crate::oracle::{CcQuery, OracleError};

pub use coloring::{find_neighbors_in_known_subgraph, greedy_coloring, split_classes};
pub use forest::{
    density_reconstruct, reconstruct_forest, reconstruct_forest_with, BipartitionDensity,
    DensityFn, DensityReconstructor, ForestBudget,
};
pub use high_degree::{find_high_degree, high_degree_iterations, high_degree_iteration_budget};
pub use neighbors::{binary_search_reconstruct, find_adjacent_to_set, has_cross_edge, has_neighbor};

/// Edges already confirmed to be in the hidden graph.
///
/// Grows on demand, so an empty value costs nothing to create.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnownEdges {
    adj: Vec<Vec<Vertex>>,
    len: usize,
}

impl KnownEdges {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns false if the edge was already known.
    pub fn insert(&mut self, e: Edge) -> bool {
        let (u, v) = e.endpoints();
        if self.adj.len() <= v {
            self.adj.resize(v + 1, Vec::new());
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.len += 1;
                true
            }
        }
    }

    pub fn contains(&self, e: Edge) -> bool {
        let (u, v) = e.endpoints();
        self.adj
            .get(u)
            .is_some_and(|list| list.binary_search(&v).is_ok())
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        self.adj.get(v).map_or(&[], Vec::as_slice)
    }

    /// Known edges with both endpoints in `s`.
    pub fn count_within(&self, s: &VertexSet) -> usize {
        if self.len == 0 {
            return 0;
        }
        s.iter()
            .map(|v| {
                self.neighbors(v)
                    .iter()
                    .filter(|&&w| w > v && s.contains(w))
                    .count()
            })
            .sum()
    }

    /// All known edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.len);
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| Edge::new(u, v)));
        }
        out
    }
}

impl Extend<Edge> for KnownEdges {
    fn extend<I: IntoIterator<Item = Edge>>(&mut self, iter: I) {
        for e in iter {
            self.insert(e);
        }
    }
}

impl FromIterator<Edge> for KnownEdges {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        let mut k = Self::new();
        k.extend(iter);
        k
    }
}

/// Answers repeated identical queries from a cache. Only cache misses reach
/// the inner oracle, so only they are charged.
pub(crate) struct Memo<'a, Q: ?Sized> {
    inner: &'a mut Q,
    cache: HashMap<VertexSet, usize>,
}

impl<'a, Q: CcQuery + ?Sized> Memo<'a, Q> {
    pub(crate) fn new(inner: &'a mut Q) -> Self {
        Self {
            inner,
            cache: HashMap::new(),
        }
    }
}

impl<Q: CcQuery + ?Sized> CcQuery for Memo<'_, Q> {
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn query(&mut self, set: &VertexSet) -> Result<usize, OracleError> {
        if let Some(&answer) = self.cache.get(set) {
            return Ok(answer);
        }
        let answer = self.inner.query(set)?;
        self.cache.insert(set.clone(), answer);
        Ok(answer)
    }
}

/// CC of a set whose answer is forced when it has at most one vertex.
pub(crate) fn cc_or_trivial<Q: CcQuery + ?Sized>(
    o: &mut Q,
    s: &VertexSet,
) -> Result<usize, OracleError> {
    if s.len() <= 1 {
        Ok(s.len())
    } else {
        o.query(s)
    }
}

/// True when `err` is a budget halt raised by a local meter rather than by
/// the caller's own oracle.
pub(crate) fn is_local_halt(err: &crate::Error, local_exhausted: bool) -> bool {
    local_exhausted && matches!(err, crate::Error::Oracle(OracleError::BudgetExceeded { .. }))
}
