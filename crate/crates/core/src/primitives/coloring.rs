use std::collections::HashMap;

use crate::graph::{Edge, Vertex, VertexSet};
use crate::oracle::CcQuery;
use crate::{Error, Result};

use super::{reconstruct_forest, ForestBudget, KnownEdges};

/// Greedy proper coloring of the graph `(u, edges)` in increasing vertex
/// order. Edges with an endpoint outside `u` are ignored. Returns the color
/// classes, each sorted.
pub fn greedy_coloring(u: &VertexSet, edges: &[Edge]) -> Vec<VertexSet> {
    let mut adj: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
    for e in edges {
        let (a, b) = e.endpoints();
        if u.contains(a) && u.contains(b) {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
    }
    let mut color: HashMap<Vertex, usize> = HashMap::with_capacity(u.len());
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    let mut taken = Vec::new();
    for v in u.iter() {
        taken.clear();
        if let Some(list) = adj.get(&v) {
            taken.extend(list.iter().filter_map(|w| color.get(w).copied()));
        }
        taken.sort_unstable();
        taken.dedup();
        let c = taken
            .iter()
            .enumerate()
            .find(|&(i, &c)| i != c)
            .map_or(taken.len(), |(i, _)| i);
        color.insert(v, c);
        if c == classes.len() {
            classes.push(Vec::new());
        }
        classes[c].push(v);
    }
    classes.into_iter().map(VertexSet::from_sorted_unchecked).collect()
}

/// Cuts every class into consecutive chunks of at most `⌈total / d⌉`
/// vertices. With `d = 0` the classes are returned unchanged.
pub fn split_classes(classes: Vec<VertexSet>, total: usize, d: usize) -> Vec<VertexSet> {
    if d == 0 {
        return classes;
    }
    let chunk = total.div_ceil(d).max(1);
    classes
        .into_iter()
        .flat_map(|c| {
            c.as_slice()
                .chunks(chunk)
                .map(|part| VertexSet::from_sorted_unchecked(part.to_vec()))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// All edges between `v` and `u`, given the complete edge set of `G[u]`
/// and a bound `d` on its maximum degree.
pub fn find_neighbors_in_known_subgraph<Q: CcQuery + ?Sized>(
    o: &mut Q,
    v: Vertex,
    u: &VertexSet,
    edges_u: &[Edge],
    d: usize,
    budget: ForestBudget,
) -> Result<Vec<Edge>> {
    if u.contains(v) {
        return Err(Error::InvalidInput(format!("vertex {v} lies inside the target set")));
    }
    if u.is_empty() {
        return Ok(Vec::new());
    }
    let classes = greedy_coloring(u, edges_u);
    if classes.len() > d + 1 {
        return Err(Error::Precondition(format!(
            "coloring used {} colors but the degree bound {d} allows {}",
            classes.len(),
            d + 1
        )));
    }
    let empty = KnownEdges::new();
    let mut out = Vec::new();
    for class in split_classes(classes, u.len(), d) {
        out.extend(reconstruct_forest(o, &class.with(v), &empty, budget)?);
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::oracle::CcOracle;
    use crate::primitives::testkit::{random_graph, subset_from_mask};
    use proptest::prelude::*;

    fn induced(g: &Graph, u: &VertexSet) -> Vec<Edge> {
        g.edges()
            .iter()
            .copied()
            .filter(|e| u.contains(e.lo()) && u.contains(e.hi()))
            .collect()
    }

    #[test]
    fn matching_takes_two_independent_classes() {
        let edges = vec![Edge::new(0, 1), Edge::new(2, 3), Edge::new(4, 5)];
        let classes = greedy_coloring(&VertexSet::full(6), &edges);
        assert_eq!(classes.len(), 2);
        for c in &classes {
            assert!(edges.iter().all(|e| !(c.contains(e.lo()) && c.contains(e.hi()))));
        }
    }

    #[test]
    fn independent_target_is_one_forest_call() {
        let g = Graph::from_edges(6, [(5, 0), (5, 3), (1, 2)]).unwrap();
        let u = VertexSet::from(vec![0, 3, 4]);
        let mut o = CcOracle::adaptive(g.clone());
        let got = find_neighbors_in_known_subgraph(&mut o, 5, &u, &[], 4, ForestBudget::default()).unwrap();
        let mut o2 = CcOracle::adaptive(g);
        let direct = reconstruct_forest(&mut o2, &u.with(5), &KnownEdges::new(), ForestBudget::default()).unwrap();
        assert_eq!(got, direct);
        assert_eq!(got, vec![Edge::new(0, 5), Edge::new(3, 5)]);
    }

    #[test]
    fn wrong_degree_bound_is_reported() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let mut o = CcOracle::adaptive(g.clone());
        let err = find_neighbors_in_known_subgraph(&mut o, 3, &VertexSet::full(3), g.edges(), 1, ForestBudget::default());
        assert!(matches!(err, Err(Error::Precondition(_))));
        let err = find_neighbors_in_known_subgraph(&mut o, 0, &VertexSet::full(3), g.edges(), 2, ForestBudget::default());
        assert!(matches!(err, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn neighbors_match_brute_force() {
        let n = 12;
        for seed in 0..40u64 {
            let g = random_graph(n, 0.3, seed);
            let v = (seed as usize * 5) % n;
            let mask = (seed as u32).wrapping_mul(2_654_435_761) & 0xfff;
            let u = subset_from_mask(n, mask).without(v);
            let edges_u = induced(&g, &u);
            let d = u.iter().map(|x| g.degree_into(x, &u)).max().unwrap_or(0);
            let mut o = CcOracle::adaptive(g.clone());
            let got = find_neighbors_in_known_subgraph(&mut o, v, &u, &edges_u, d, ForestBudget::default()).unwrap();
            let expect: Vec<Edge> = g
                .neighbors(v)
                .iter()
                .filter(|&&w| u.contains(w))
                .map(|&w| Edge::new(v, w))
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            assert_eq!(got, expect, "seed {seed}");
        }
    }

    proptest! {
        #[test]
        fn coloring_and_split_invariants(n in 1usize..40, p in 0.0f64..0.5, seed in any::<u64>()) {
            let g = random_graph(n, p, seed);
            let u = VertexSet::full(n);
            let d = g.max_degree();
            let classes = greedy_coloring(&u, g.edges());
            prop_assert!(classes.len() <= d + 1);
            let parts = split_classes(classes, n, d);
            let total: usize = parts.iter().map(VertexSet::len).sum();
            prop_assert_eq!(total, n);
            prop_assert!(parts.len() <= 2 * d + 2);
            for c in &parts {
                prop_assert!(g.density(c).unwrap() == 0);
                if d >= 1 {
                    prop_assert!(c.len() <= n.div_ceil(d));
                }
            }
        }
    }
}
