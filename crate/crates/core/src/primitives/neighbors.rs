use crate::graph::{Edge, Vertex, VertexSet};
use crate::oracle::CcQuery;
use crate::{Error, Result};

use super::{cc_or_trivial, KnownEdges, Memo};

/// Whether `u` has a neighbor in `s`. Two queries, none when `s` is empty.
///
/// Adding `u` to `s` raises the component count by exactly one when `u` is
/// isolated from `s`; otherwise it merges `k ≥ 1` components and the change
/// is `1 - k ≤ 0`.
pub fn has_neighbor<Q: CcQuery + ?Sized>(o: &mut Q, u: Vertex, s: &VertexSet) -> Result<bool> {
    if s.contains(u) {
        return Err(Error::InvalidInput(format!("vertex {u} is in the probed set")));
    }
    if s.is_empty() {
        return Ok(false);
    }
    let with_u = o.query(&s.with(u))? as i64;
    let without = o.query(s)? as i64;
    Ok(with_u - without != 1)
}

/// Whether some edge joins a vertex of `s` to a vertex of `u`. The sets may
/// overlap. At most four queries.
pub fn has_cross_edge<Q: CcQuery + ?Sized>(o: &mut Q, s: &VertexSet, u: &VertexSet) -> Result<bool> {
    if s.is_empty() || u.is_empty() {
        return Ok(false);
    }
    let w = s.intersection(u);
    let cc_w = cc_or_trivial(o, &w)?;
    if cc_w != w.len() {
        return Ok(true);
    }
    let parts = cc_or_trivial(o, &s.difference(&w))? + cc_w + cc_or_trivial(o, &u.difference(&w))?;
    let whole = cc_or_trivial(o, &s.union(u))?;
    Ok(parts != whole)
}

/// Every vertex with at least one neighbor in `s`, members of `s` included.
pub fn find_adjacent_to_set<Q: CcQuery + ?Sized>(o: &mut Q, s: &VertexSet) -> Result<VertexSet> {
    let mut out = Vec::new();
    if s.is_empty() {
        return Ok(VertexSet::new());
    }
    let mut memo = Memo::new(o);
    let all = VertexSet::full(memo.vertex_count());
    adjacent_rec(&mut memo, s, all, &mut out)?;
    Ok(VertexSet::from_sorted_unchecked(out))
}

fn adjacent_rec<Q: CcQuery + ?Sized>(
    o: &mut Q,
    s: &VertexSet,
    u: VertexSet,
    out: &mut Vec<Vertex>,
) -> Result<()> {
    if u.is_empty() || !has_cross_edge(o, s, &u)? {
        return Ok(());
    }
    if u.len() == 1 {
        out.extend(u.iter());
        return Ok(());
    }
    let (left, right) = u.split_halves();
    adjacent_rec(o, s, left, out)?;
    adjacent_rec(o, s, right, out)
}

/// All edges of `G[vs]` not already in `known`, by halving search per
/// vertex. Each pair is examined from its lower endpoint only.
pub fn binary_search_reconstruct<Q: CcQuery + ?Sized>(
    o: &mut Q,
    vs: &VertexSet,
    known: &KnownEdges,
) -> Result<Vec<Edge>> {
    let mut out = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        let candidates: VertexSet = VertexSet::from_sorted_unchecked(
            vs.as_slice()[i + 1..]
                .iter()
                .copied()
                .filter(|&w| !known.contains(Edge::new(v, w)))
                .collect(),
        );
        neighbors_rec(o, v, candidates, &mut out)?;
    }
    out.sort_unstable();
    Ok(out)
}

fn neighbors_rec<Q: CcQuery + ?Sized>(
    o: &mut Q,
    v: Vertex,
    u: VertexSet,
    out: &mut Vec<Edge>,
) -> Result<()> {
    if u.is_empty() || !has_neighbor(o, v, &u)? {
        return Ok(());
    }
    if u.len() == 1 {
        out.push(Edge::new(v, u.as_slice()[0]));
        return Ok(());
    }
    let (left, right) = u.split_halves();
    neighbors_rec(o, v, left, out)?;
    neighbors_rec(o, v, right, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family, Graph, InstanceSpec};
    use crate::oracle::CcOracle;
    use crate::primitives::testkit::{random_graph, subset_from_mask};

    #[test]
    fn merging_two_components_still_counts_as_adjacent() {
        let g = Graph::from_edges(5, [(0, 1), (2, 3), (4, 0), (4, 2)]).unwrap();
        let s = VertexSet::from(vec![0, 1, 2, 3]);
        assert_eq!(g.cc_count(&s).unwrap(), 2);
        assert_eq!(g.cc_count(&s.with(4)).unwrap(), 1);
        let mut o = CcOracle::adaptive(g);
        assert!(has_neighbor(&mut o, 4, &s).unwrap());
        assert_eq!(o.total_queries(), 2);
    }

    #[test]
    fn has_neighbor_edge_cases() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2)]).unwrap();
        let mut o = CcOracle::adaptive(g);
        assert!(!has_neighbor(&mut o, 3, &VertexSet::new()).unwrap());
        assert_eq!(o.total_queries(), 0);
        assert!(has_neighbor(&mut o, 0, &VertexSet::from(vec![1, 2])).unwrap());
        assert!(!has_neighbor(&mut o, 3, &VertexSet::from(vec![0, 1, 2])).unwrap());
        assert!(matches!(
            has_neighbor(&mut o, 1, &VertexSet::from(vec![1, 2])),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn predicates_match_brute_force_exhaustively() {
        for seed in 0..3 {
            let n = 7;
            let g = random_graph(n, 0.35, seed);
            let mut o = CcOracle::adaptive(g.clone());
            for mask in 0u32..1 << n {
                let s = subset_from_mask(n, mask);
                for u in (0..n).filter(|&u| !s.contains(u)) {
                    let expect = g.neighbors(u).iter().any(|&w| s.contains(w));
                    assert_eq!(has_neighbor(&mut o, u, &s).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn cross_edge_matches_brute_force_exhaustively() {
        let n = 6;
        for seed in 0..2 {
            let g = random_graph(n, 0.3, seed);
            let mut o = CcOracle::adaptive(g.clone());
            for a in 0u32..1 << n {
                for b in 0u32..1 << n {
                    let (s, u) = (subset_from_mask(n, a), subset_from_mask(n, b));
                    let expect = g
                        .edges()
                        .iter()
                        .any(|e| {
                            let (x, y) = e.endpoints();
                            (s.contains(x) && u.contains(y)) || (s.contains(y) && u.contains(x))
                        });
                    let before = o.total_queries();
                    assert_eq!(has_cross_edge(&mut o, &s, &u).unwrap(), expect, "{s:?} {u:?}");
                    assert!(o.total_queries() - before <= 4);
                }
            }
        }
    }

    #[test]
    fn independent_set_against_itself_has_no_cross_edge() {
        let g = Graph::from_edges(6, [(0, 1), (2, 3)]).unwrap();
        let mut o = CcOracle::adaptive(g);
        let s = VertexSet::from(vec![0, 2, 4, 5]);
        assert!(!has_cross_edge(&mut o, &s, &s).unwrap());
    }

    #[test]
    fn adjacent_set_matches_brute_force() {
        for seed in 0..20 {
            let n = 12;
            let g = random_graph(n, 0.2, seed);
            let mut o = CcOracle::adaptive(g.clone());
            for mask in [0u32, 1, 0b1010_0101_0011, 0xfff, 1 << 11, 0b11] {
                let s = subset_from_mask(n, mask);
                let expect: VertexSet = (0..n)
                    .filter(|&v| g.neighbors(v).iter().any(|&w| s.contains(w)))
                    .collect();
                assert_eq!(find_adjacent_to_set(&mut o, &s).unwrap(), expect);
            }
        }
    }

    #[test]
    fn adjacent_set_of_star_center_is_the_leaves() {
        let g = Graph::from_edges(6, (1..6).map(|v| (0, v))).unwrap();
        let mut o = CcOracle::adaptive(g);
        let got = find_adjacent_to_set(&mut o, &VertexSet::singleton(0)).unwrap();
        assert_eq!(got.as_slice(), &[1, 2, 3, 4, 5]);
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let mut o = CcOracle::adaptive(g);
        assert!(find_adjacent_to_set(&mut o, &VertexSet::singleton(2)).unwrap().is_empty());
    }

    #[test]
    fn binary_search_on_small_cases() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let mut o = CcOracle::adaptive(g.clone());
        let got = binary_search_reconstruct(&mut o, &VertexSet::full(3), &KnownEdges::new()).unwrap();
        assert_eq!(got, g.edges());
        let known: KnownEdges = g.edges().iter().copied().collect();
        let got = binary_search_reconstruct(&mut o, &VertexSet::full(3), &known).unwrap();
        assert!(got.is_empty());
    }

    #[test]
    fn binary_search_on_gnm_within_calibrated_budget() {
        let spec = InstanceSpec { family: Family::Gnm, n: 48, m: 100, seed: 3 };
        let g = generate(&spec).unwrap().into_hidden();
        let mut o = CcOracle::adaptive(g.clone());
        let got = binary_search_reconstruct(&mut o, &VertexSet::full(48), &KnownEdges::new()).unwrap();
        assert_eq!(got, g.edges());
        let bound = 8.0 * (48.0 + 100.0) * 48f64.log2();
        assert!((o.total_queries() as f64) <= bound, "{}", o.total_queries());
    }

    #[test]
    fn binary_search_skips_known_and_respects_subsets() {
        let g = random_graph(10, 0.4, 9);
        let half: KnownEdges = g.edges().iter().step_by(2).copied().collect();
        let vs = VertexSet::from(vec![0, 2, 3, 5, 7, 8]);
        let mut o = CcOracle::adaptive(g.clone());
        let got = binary_search_reconstruct(&mut o, &vs, &half).unwrap();
        let expect: Vec<Edge> = g
            .edges()
            .iter()
            .copied()
            .filter(|e| vs.contains(e.lo()) && vs.contains(e.hi()) && !half.contains(*e))
            .collect();
        assert_eq!(got, expect);
    }
}
