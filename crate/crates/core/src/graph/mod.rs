//! Hidden-graph representation and exact induced-subgraph evaluators.
//!
//! Vertices are dense integer ids `0..n`. [`Graph::cc_count`] and
//! [`Graph::density`] are the reference answers every oracle is checked
//! against; they do no query accounting.

mod dsu;
pub mod generate;
pub mod io;
mod vertex_set;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use dsu::DisjointSet;
pub use generate::{generate, CliqueLayout, Family, Instance, InstanceSpec};
pub use vertex_set::VertexSet;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("infeasible instance: {0}")]
    Infeasible(String),
    #[error("malformed edge list at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// An unordered vertex pair, stored with `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    /// Normalises the endpoint order. Panics on a self-loop.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        assert_ne!(a, b, "self-loop at vertex {a}");
        if a < b {
            Self { u: a, v: b }
        } else {
            Self { u: b, v: a }
        }
    }

    pub fn try_new(a: Vertex, b: Vertex) -> Result<Self, GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        Ok(Self::new(a, b))
    }

    pub fn lo(&self) -> Vertex {
        self.u
    }

    pub fn hi(&self) -> Vertex {
        self.v
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    /// The endpoint that is not `x`, if `x` is an endpoint.
    pub fn other(&self, x: Vertex) -> Option<Vertex> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.u, self.v)
    }
}

/// An undirected simple graph on `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    // neighbors of v are targets[offsets[v]..offsets[v + 1]], sorted
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
    // dense adjacency rows of `words` u64 each; empty above BITSET_LIMIT
    rows: Vec<u64>,
    words: usize,
}

const BITSET_LIMIT: usize = 4096;

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self::from_edge_set(n, BTreeSet::new())
    }

    /// Builds a graph, rejecting self-loops, out-of-range endpoints and
    /// duplicate edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            let e = Edge::try_new(a, b)?;
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge(e));
            }
        }
        Ok(Self::from_edge_set(n, set))
    }

    /// Builds from a set of already validated edges.
    pub(crate) fn from_edge_set(n: usize, set: BTreeSet<Edge>) -> Self {
        let mut offsets = vec![0; n + 1];
        for e in &set {
            offsets[e.u + 1] += 1;
            offsets[e.v + 1] += 1;
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0; 2 * set.len()];
        for e in &set {
            targets[fill[e.u]] = e.v;
            fill[e.u] += 1;
        }
        for e in &set {
            targets[fill[e.v]] = e.u;
            fill[e.v] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        let words = n.div_ceil(64);
        let mut rows = Vec::new();
        if n <= BITSET_LIMIT {
            rows = vec![0u64; n * words];
            for e in &set {
                rows[e.u * words + e.v / 64] |= 1 << (e.v % 64);
                rows[e.v * words + e.u / 64] |= 1 << (e.u % 64);
            }
        }
        Self {
            n,
            edges: set.into_iter().collect(),
            offsets,
            targets,
            rows,
            words,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges.iter().copied().collect()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a < self.n && b < self.n && self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Number of edges between `v` and members of `s`.
    pub fn degree_into(&self, v: Vertex, s: &VertexSet) -> usize {
        self.neighbors(v).iter().filter(|&&w| s.contains(w)).count()
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        match s.max() {
            Some(v) if v >= self.n => Err(GraphError::VertexOutOfRange { vertex: v, n: self.n }),
            _ => Ok(()),
        }
    }

    /// Connected components of the induced subgraph `G[s]`. `cc(∅) = 0`.
    pub fn cc_count(&self, s: &VertexSet) -> Result<usize, GraphError> {
        CcEvaluator::new(self.n).cc_count(self, s)
    }

    /// Edges with both endpoints in `s`.
    pub fn density(&self, s: &VertexSet) -> Result<usize, GraphError> {
        self.check_set(s)?;
        let mut count = 0;
        for v in s.iter() {
            count += self.neighbors(v).iter().filter(|&&w| w > v && s.contains(w)).count();
        }
        Ok(count)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Reusable scratch space for repeated connected-component counts on
/// graphs of a fixed order. Each evaluation costs `O(|s| + Σ deg)`, or
/// `O(|s| · n / 64)` on the dense path taken for small or dense graphs.
#[derive(Debug, Clone, Default)]
pub struct CcEvaluator {
    // stamp[v] == epoch: v is in the current set and not yet reached;
    // stamp[v] == epoch + 1: reached
    stamp: Vec<u32>,
    epoch: u32,
    stack: Vec<Vertex>,
    label: Vec<u32>,
    remaining: Vec<u64>,
    front: Vec<u64>,
    reach: Vec<u64>,
}

impl CcEvaluator {
    pub fn new(n: usize) -> Self {
        Self {
            stamp: vec![0; n],
            ..Self::default()
        }
    }

    fn next_epoch(&mut self) {
        if self.epoch >= u32::MAX - 2 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 0;
        }
        self.epoch += 2;
    }

    pub fn cc_count(&mut self, g: &Graph, s: &VertexSet) -> Result<usize, GraphError> {
        g.check_set(s)?;
        Ok(self.count(g, s, None).0)
    }

    /// Returns `(cc(s), cc(s ∪ {u}))` from a single traversal of `G[s]`.
    pub fn cc_count_with(
        &mut self,
        g: &Graph,
        s: &VertexSet,
        u: Vertex,
    ) -> Result<(usize, usize), GraphError> {
        g.check_set(s)?;
        if u >= g.n {
            return Err(GraphError::VertexOutOfRange { vertex: u, n: g.n });
        }
        if s.contains(u) {
            let c = self.count(g, s, None).0;
            return Ok((c, c));
        }
        let (c, touched) = self.count(g, s, Some(u));
        Ok((c, c + 1 - touched))
    }

    // Component count of G[s], and how many components contain a neighbor
    // of `probe`.
    fn count(&mut self, g: &Graph, s: &VertexSet, probe: Option<Vertex>) -> (usize, usize) {
        let dense = !g.rows.is_empty() && g.words * g.n <= 4 * (g.n + 2 * g.m());
        if g.n <= 128 {
            Self::count_small(g, s, probe)
        } else if dense {
            self.count_dense(g, s, probe)
        } else {
            self.count_sparse(g, s, probe)
        }
    }

    fn count_sparse(&mut self, g: &Graph, s: &VertexSet, probe: Option<Vertex>) -> (usize, usize) {
        if self.stamp.len() < g.n {
            self.stamp.resize(g.n, 0);
        }
        self.label.resize(self.stamp.len(), 0);
        self.next_epoch();
        let (open, done) = (self.epoch, self.epoch + 1);
        let stamp = &mut self.stamp[..];
        for v in s.iter() {
            stamp[v] = open;
        }
        let mut components = 0;
        let label = &mut self.label[..];
        for root in s.iter() {
            if stamp[root] != open {
                continue;
            }
            components += 1;
            stamp[root] = done;
            label[root] = components as u32;
            self.stack.push(root);
            while let Some(v) = self.stack.pop() {
                for &w in g.neighbors(v) {
                    if stamp[w] == open {
                        stamp[w] = done;
                        label[w] = components as u32;
                        self.stack.push(w);
                    }
                }
            }
        }
        let touched = probe.map_or(0, |u| {
            let mut seen: Vec<u32> = g
                .neighbors(u)
                .iter()
                .filter(|&&w| stamp[w] == done)
                .map(|&w| label[w])
                .collect();
            seen.sort_unstable();
            seen.dedup();
            seen.len()
        });
        (components, touched)
    }

    // The dense search with every row held in one u128.
    fn count_small(g: &Graph, s: &VertexSet, probe: Option<Vertex>) -> (usize, usize) {
        let row = |v: usize| -> u128 {
            if g.words == 1 {
                u128::from(g.rows[v])
            } else {
                u128::from(g.rows[2 * v]) | u128::from(g.rows[2 * v + 1]) << 64
            }
        };
        let mut rem: u128 = s.iter().fold(0, |acc, v| acc | 1 << v);
        let probe_row = probe.map_or(0, row);
        let (mut components, mut touched) = (0, 0);
        while rem != 0 {
            let low = rem & rem.wrapping_neg();
            rem ^= low;
            components += 1;
            let (mut comp, mut front) = (low, low);
            while front != 0 {
                let mut reach = 0;
                while front != 0 {
                    reach |= row(front.trailing_zeros() as usize);
                    front &= front - 1;
                }
                front = reach & rem;
                rem &= !front;
                comp |= front;
            }
            touched += usize::from(probe_row & comp != 0);
        }
        (components, touched)
    }

    // Layer-by-layer search on bit rows: each reached vertex contributes
    // its whole row, and the next layer is what that reaches in `remaining`.
    fn count_dense(&mut self, g: &Graph, s: &VertexSet, probe: Option<Vertex>) -> (usize, usize) {
        let words = g.words;
        for buf in [&mut self.remaining, &mut self.front, &mut self.reach] {
            buf.clear();
            buf.resize(words, 0);
        }
        let (rem, front, reach) = (&mut self.remaining, &mut self.front, &mut self.reach);
        for v in s.iter() {
            rem[v / 64] |= 1 << (v % 64);
        }
        let probe_row = probe.map(|u| &g.rows[u * words..(u + 1) * words]);
        let mut components = 0;
        let mut touched = 0;
        for i in 0..words {
            while rem[i] != 0 {
                let low = rem[i] & rem[i].wrapping_neg();
                rem[i] ^= low;
                front.iter_mut().for_each(|w| *w = 0);
                front[i] = low;
                components += 1;
                let mut hit = probe_row.is_some_and(|row| row[i] & low != 0);
                loop {
                    reach.iter_mut().for_each(|w| *w = 0);
                    for (j, &f) in front.iter().enumerate() {
                        let mut f = f;
                        while f != 0 {
                            let v = j * 64 + f.trailing_zeros() as usize;
                            f &= f - 1;
                            let row = &g.rows[v * words..(v + 1) * words];
                            reach.iter_mut().zip(row).for_each(|(r, &x)| *r |= x);
                        }
                    }
                    let mut any = 0;
                    for k in 0..words {
                        front[k] = reach[k] & rem[k];
                        rem[k] &= !front[k];
                        any |= front[k];
                    }
                    if let Some(row) = probe_row {
                        hit |= row.iter().zip(front.iter()).any(|(&r, &f)| r & f != 0);
                    }
                    if any == 0 {
                        break;
                    }
                }
                touched += usize::from(hit);
            }
        }
        (components, touched)
    }
}
