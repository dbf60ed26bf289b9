//! Lower-bound instance families as executable checks.

use std::collections::BTreeSet;

use rand::Rng;

use crate::graph::{CliqueLayout, Edge, Graph, Vertex, VertexSet};
use crate::oracle::{CcQuery, OracleError};
use crate::{Error, Result};

/// Number of pairs `{u, v}` whose two-path gadgets some query in `q` tells
/// apart.
///
/// On a set containing both `u` and `v` and any third vertex both gadgets
/// are connected, and on a set missing either endpoint they coincide, so
/// only the query `{u, v}` itself separates them.
pub fn distinguishing_pairs(q: &[VertexSet], n: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("gadgets need n >= 3, got {n}")));
    }
    let mut seen = BTreeSet::new();
    for s in q {
        if let Some(v) = s.max().filter(|&v| v >= n) {
            return Err(crate::GraphError::VertexOutOfRange { vertex: v, n }.into());
        }
        if let [a, b] = *s.as_slice() {
            seen.insert((a, b));
        }
    }
    Ok(seen.len())
}

/// A random query family over `0..n`: half uniform pairs, half uniform
/// subsets of uniform size.
pub fn random_query_family<R: Rng + ?Sized>(n: usize, count: usize, rng: &mut R) -> Vec<VertexSet> {
    (0..count)
        .map(|_| {
            let k = if rng.random_bool(0.5) { 2 } else { rng.random_range(1..=n) };
            rand::seq::index::sample(rng, n, k.min(n)).into_iter().collect()
        })
        .collect()
}

/// Answers component-count queries on the clique-minus-edge instance whose
/// missing edge is the unique `false` entry of `array`, reading the array
/// only when the query meets the clique in exactly two vertices.
#[derive(Debug, Clone)]
pub struct ArraySearchAdapter {
    layout: CliqueLayout,
    array: Vec<bool>,
    probes: u64,
    queries: u64,
}

impl ArraySearchAdapter {
    pub fn new(layout: CliqueLayout, array: Vec<bool>) -> Result<Self> {
        if array.len() != layout.array_len() {
            return Err(Error::InvalidInput(format!(
                "array has {} entries, the clique has {} pairs",
                array.len(),
                layout.array_len()
            )));
        }
        let zeros = array.iter().filter(|&&b| !b).count();
        if zeros != 1 {
            return Err(Error::InvalidInput(format!("array must hold exactly one zero, found {zeros}")));
        }
        Ok(Self {
            layout,
            array,
            probes: 0,
            queries: 0,
        })
    }

    pub fn layout(&self) -> &CliqueLayout {
        &self.layout
    }

    /// Array reads so far.
    pub fn probes(&self) -> u64 {
        self.probes
    }

    pub fn queries(&self) -> u64 {
        self.queries
    }

    /// The graph the adapter is answering for.
    pub fn materialize(&self) -> Graph {
        let zero = self.array.iter().position(|&b| !b).expect("checked at construction");
        self.layout.materialize(self.layout.pair_at(zero))
    }

    pub fn answer(&mut self, s: &VertexSet) -> Result<usize, OracleError> {
        let n = self.layout.n;
        if let Some(v) = s.max().filter(|&v| v >= n) {
            return Err(crate::GraphError::VertexOutOfRange { vertex: v, n }.into());
        }
        self.queries += 1;
        let core: Vec<Vertex> = s.iter().filter(|&v| self.layout.in_core(v)).collect();
        let dummy = self.layout.dummy().filter(|&z| s.contains(z));
        let outside = s.len() - core.len() - usize::from(dummy.is_some());
        let mut count = outside;
        // components of G[S ∩ K], with a representative of each
        let parts: Vec<Vec<Vertex>> = match core.len() {
            0 => vec![],
            1 => vec![core.clone()],
            2 => {
                self.probes += 1;
                let idx = self.layout.pair_index(Edge::new(core[0], core[1]));
                if self.array[idx] {
                    vec![core.clone()]
                } else {
                    vec![vec![core[0]], vec![core[1]]]
                }
            }
            _ => vec![core.clone()],
        };
        count += parts.len();
        if dummy.is_some() {
            let targets = &self.layout.dummy_targets;
            let joined = parts
                .iter()
                .filter(|p| p.iter().any(|v| targets.binary_search(v).is_ok()))
                .count();
            // the dummy merges every part it touches into one component
            count = count + 1 - joined;
        }
        Ok(count)
    }
}

impl CcQuery for ArraySearchAdapter {
    fn vertex_count(&self) -> usize {
        self.layout.n
    }

    fn query(&mut self, set: &VertexSet) -> Result<usize, OracleError> {
        self.answer(set)
    }
}
