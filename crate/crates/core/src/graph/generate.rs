//! Seeded instance generators for every experiment family.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{DisjointSet, Edge, Graph, GraphError, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Gnm,
    Forest,
    Star,
    TwoPath,
    CliqueMinusEdge,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Gnm,
        Family::Forest,
        Family::Star,
        Family::TwoPath,
        Family::CliqueMinusEdge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gnm => "gnm",
            Family::Forest => "forest",
            Family::Star => "star",
            Family::TwoPath => "two-path",
            Family::CliqueMinusEdge => "clique-minus-edge",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
}

fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl InstanceSpec {
    pub fn new(family: Family, n: usize, m: usize, seed: u64) -> Self {
        Self { family, n, m, seed }
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        let Self { family, n, m, .. } = *self;
        let fail = |why: String| Err(GraphError::Infeasible(why));
        if m > pairs(n) {
            return fail(format!("m = {m} exceeds n(n-1)/2 = {}", pairs(n)));
        }
        match family {
            Family::Gnm => Ok(()),
            Family::Forest | Family::Star if m + 1 > n.max(1) => {
                fail(format!("{family} on {n} vertices has at most n-1 edges, got m = {m}"))
            }
            Family::Forest | Family::Star => Ok(()),
            Family::TwoPath => {
                if n < 3 {
                    return fail(format!("two-path needs n >= 3, got {n}"));
                }
                let base = 2 * (n - 2);
                if m != base && m != base + 1 {
                    return fail(format!(
                        "two-path on {n} vertices has m = {base} (G0) or {} (G1), got {m}",
                        base + 1
                    ));
                }
                Ok(())
            }
            Family::CliqueMinusEdge => CliqueLayout::dimensions(n, m).map(|_| ()),
        }
    }
}

/// A generated instance. The two-path family yields an indistinguishable
/// pair; the hidden member is chosen by the instance's edge count.
#[derive(Debug, Clone)]
pub enum Instance {
    Single(Graph),
    TwoPath {
        u: Vertex,
        v: Vertex,
        without_edge: Graph,
        with_edge: Graph,
        hidden_has_edge: bool,
    },
}

impl Instance {
    pub fn hidden(&self) -> &Graph {
        match self {
            Instance::Single(g) => g,
            Instance::TwoPath {
                without_edge,
                with_edge,
                hidden_has_edge,
                ..
            } => {
                if *hidden_has_edge {
                    with_edge
                } else {
                    without_edge
                }
            }
        }
    }

    pub fn into_hidden(self) -> Graph {
        match self {
            Instance::Single(g) => g,
            Instance::TwoPath {
                without_edge,
                with_edge,
                hidden_has_edge,
                ..
            } => {
                if hidden_has_edge {
                    with_edge
                } else {
                    without_edge
                }
            }
        }
    }
}

/// Builds the instance described by `spec`; deterministic in `spec.seed`.
pub fn generate(spec: &InstanceSpec) -> Result<Instance, GraphError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let InstanceSpec { n, m, .. } = *spec;
    let g = match spec.family {
        Family::Gnm => gnm(n, m, &mut rng),
        Family::Forest => forest(n, m, &mut rng),
        Family::Star => star(n, m, &mut rng),
        Family::TwoPath => {
            let picked = index::sample(&mut rng, n, 2);
            let (u, v) = (picked.index(0), picked.index(1));
            let (without_edge, with_edge) = two_path_pair(n, u, v)?;
            return Ok(Instance::TwoPath {
                u: u.min(v),
                v: u.max(v),
                without_edge,
                with_edge,
                hidden_has_edge: m == 2 * (n - 2) + 1,
            });
        }
        Family::CliqueMinusEdge => {
            let layout = CliqueLayout::sample(n, m, &mut rng)?;
            let missing = layout.pair_at(rng.random_range(0..layout.array_len()));
            layout.materialize(missing)
        }
    };
    Ok(Instance::Single(g))
}

/// `m` distinct edges drawn uniformly from all vertex pairs.
pub fn gnm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    let total = pairs(n);
    assert!(m <= total);
    let mut picks = index::sample(rng, total, m).into_vec();
    picks.sort_unstable();
    // walk the row-major pair enumeration (0,1),(0,2),..,(1,2),..
    let mut set = BTreeSet::new();
    let (mut row, mut row_start) = (0usize, 0usize);
    for k in picks {
        while k >= row_start + (n - 1 - row) {
            row_start += n - 1 - row;
            row += 1;
        }
        set.insert(Edge::new(row, row + 1 + (k - row_start)));
    }
    Graph::from_edge_set(n, set)
}

/// Adds `m` edges one at a time, each uniform among pairs that keep the
/// graph acyclic.
pub fn forest<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    assert!(m < n.max(1));
    let mut dsu = DisjointSet::new(n);
    let mut set = BTreeSet::new();
    while set.len() < m {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a != b && dsu.union(a, b) {
            set.insert(Edge::new(a, b));
        }
    }
    Graph::from_edge_set(n, set)
}

/// Vertex 0 joined to `m` uniformly chosen other vertices.
pub fn star<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    assert!(m < n.max(1));
    let set = index::sample(rng, n.saturating_sub(1), m)
        .into_iter()
        .map(|i| Edge::new(0, i + 1))
        .collect();
    Graph::from_edge_set(n, set)
}

/// The pair `(G0, G1)` where `G0` joins `u` and `v` by a 2-path through
/// every other vertex and `G1` additionally contains the edge `{u, v}`.
pub fn two_path_pair(n: usize, u: Vertex, v: Vertex) -> Result<(Graph, Graph), GraphError> {
    if u == v || u >= n || v >= n || n < 3 {
        return Err(GraphError::Infeasible(format!(
            "two-path pair needs distinct u, v < n with n >= 3 (n = {n}, u = {u}, v = {v})"
        )));
    }
    let mut set: BTreeSet<Edge> = (0..n)
        .filter(|&w| w != u && w != v)
        .flat_map(|w| [Edge::new(u, w), Edge::new(w, v)])
        .collect();
    let g0 = Graph::from_edge_set(n, set.clone());
    set.insert(Edge::new(u, v));
    Ok((g0, Graph::from_edge_set(n, set)))
}

/// Layout of the dense lower-bound family: a clique on `K = {0..n0}` minus
/// one edge, plus an optional dummy vertex `n0` joined to `m_dum` vertices
/// of `K`. Pairs of `K` are indexed lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueLayout {
    pub n: usize,
    pub m: usize,
    pub n0: usize,
    pub m_dum: usize,
    pub dummy_targets: Vec<Vertex>,
}

impl CliqueLayout {
    /// `(n0, m_dum)`: the largest `n0` with `C(n0,2) - 1 <= m`, and the
    /// remainder.
    pub fn dimensions(n: usize, m: usize) -> Result<(usize, usize), GraphError> {
        let mut n0 = 2;
        while pairs(n0 + 1) - 1 <= m {
            n0 += 1;
        }
        let m_dum = m - (pairs(n0) - 1);
        let needed = n0 + usize::from(m_dum > 0);
        if needed > n {
            return Err(GraphError::Infeasible(format!(
                "clique-minus-edge with m = {m} needs n0 = {n0}{} vertices, have {n}",
                if m_dum > 0 { " + 1 dummy" } else { "" }
            )));
        }
        Ok((n0, m_dum))
    }

    pub fn new(n: usize, m: usize, dummy_targets: Vec<Vertex>) -> Result<Self, GraphError> {
        let (n0, m_dum) = Self::dimensions(n, m)?;
        let targets: BTreeSet<_> = dummy_targets.iter().copied().collect();
        if targets.len() != m_dum || dummy_targets.len() != m_dum || targets.iter().any(|&t| t >= n0)
        {
            return Err(GraphError::Infeasible(format!(
                "dummy vertex needs exactly {m_dum} distinct targets inside K = 0..{n0}"
            )));
        }
        Ok(Self {
            n,
            m,
            n0,
            m_dum,
            dummy_targets: targets.into_iter().collect(),
        })
    }

    pub fn sample<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Self, GraphError> {
        let (n0, m_dum) = Self::dimensions(n, m)?;
        Self::new(n, m, index::sample(rng, n0, m_dum).into_vec())
    }

    pub fn dummy(&self) -> Option<Vertex> {
        (self.m_dum > 0).then_some(self.n0)
    }

    pub fn in_core(&self, v: Vertex) -> bool {
        v < self.n0
    }

    pub fn array_len(&self) -> usize {
        pairs(self.n0)
    }

    pub fn pair_index(&self, e: Edge) -> usize {
        let (a, b) = e.endpoints();
        debug_assert!(b < self.n0);
        a * (2 * self.n0 - a - 1) / 2 + (b - a - 1)
    }

    pub fn pair_at(&self, mut k: usize) -> Edge {
        let mut a = 0;
        while k >= self.n0 - 1 - a {
            k -= self.n0 - 1 - a;
            a += 1;
        }
        Edge::new(a, a + 1 + k)
    }

    pub fn materialize(&self, missing: Edge) -> Graph {
        let mut set = BTreeSet::new();
        for a in 0..self.n0 {
            for b in a + 1..self.n0 {
                let e = Edge::new(a, b);
                if e != missing {
                    set.insert(e);
                }
            }
        }
        if let Some(z) = self.dummy() {
            set.extend(self.dummy_targets.iter().map(|&t| Edge::new(z, t)));
        }
        Graph::from_edge_set(self.n, set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    #[test]
    fn two_path_edge_counts() {
        let (g0, g1) = two_path_pair(5, 0, 1).unwrap();
        assert_eq!(g0.m(), 6);
        assert_eq!(g1.m(), 7);
        assert!(!g0.has_edge(0, 1));
        assert!(g1.has_edge(0, 1));
    }

    #[test]
    fn clique_dimensions() {
        assert_eq!(CliqueLayout::dimensions(5, 9).unwrap(), (5, 0));
        assert_eq!(CliqueLayout::dimensions(6, 11).unwrap(), (5, 2));
        assert_eq!(CliqueLayout::dimensions(2, 0).unwrap(), (2, 0));
        assert!(CliqueLayout::dimensions(5, 11).is_err());
        let spec = InstanceSpec::new(Family::CliqueMinusEdge, 5, 9, 3);
        let g = generate(&spec).unwrap().into_hidden();
        assert_eq!(g.m(), 9);
    }

    #[test]
    fn pair_indexing_is_a_bijection() {
        let layout = CliqueLayout::new(9, pairs(7) - 1 + 3, vec![0, 4, 6]).unwrap();
        assert_eq!(layout.n0, 7);
        for k in 0..layout.array_len() {
            assert_eq!(layout.pair_index(layout.pair_at(k)), k);
        }
        let g = layout.materialize(Edge::new(2, 5));
        assert_eq!(g.m(), layout.m);
        assert!(!g.has_edge(2, 5));
        assert_eq!(g.degree(7), 3);
    }

    #[test]
    fn generators_hit_their_edge_counts() {
        for (family, n, m) in [
            (Family::Gnm, 8, 10),
            (Family::Gnm, 6, 15),
            (Family::Forest, 30, 29),
            (Family::Star, 10, 9),
            (Family::TwoPath, 9, 14),
            (Family::TwoPath, 9, 15),
            (Family::CliqueMinusEdge, 20, 40),
        ] {
            let g = generate(&InstanceSpec::new(family, n, m, 11)).unwrap().into_hidden();
            assert_eq!((g.n(), g.m()), (n, m), "{family}");
        }
    }

    #[test]
    fn forest_is_acyclic() {
        let g = generate(&InstanceSpec::new(Family::Forest, 40, 25, 5))
            .unwrap()
            .into_hidden();
        let all = VertexSet::full(40);
        assert_eq!(g.density(&all).unwrap(), 40 - g.cc_count(&all).unwrap());
    }

    #[test]
    fn infeasible_specs_are_rejected() {
        for spec in [
            InstanceSpec::new(Family::Gnm, 4, 7, 0),
            InstanceSpec::new(Family::Forest, 4, 4, 0),
            InstanceSpec::new(Family::Star, 4, 4, 0),
            InstanceSpec::new(Family::TwoPath, 5, 5, 0),
            InstanceSpec::new(Family::TwoPath, 2, 0, 0),
        ] {
            assert!(generate(&spec).is_err(), "{spec:?}");
        }
    }

    #[test]
    fn gnm_is_deterministic() {
        let spec = InstanceSpec::new(Family::Gnm, 8, 10, 42);
        let a = generate(&spec).unwrap().into_hidden();
        let b = generate(&spec).unwrap().into_hidden();
        assert_eq!(a.edges(), b.edges());
    }
}
