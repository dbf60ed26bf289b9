use rand::Rng;

use crate::graph::{Edge, VertexSet};
use crate::oracle::CcQuery;
use crate::primitives::{binary_search_reconstruct, reconstruct_forest, ForestBudget, KnownEdges};
use crate::rng::bernoulli_subset;
use crate::{Error, Result};

/// Parameters of the sampled forest peeling loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleParams {
    pub p: f64,
    pub ell: u64,
    pub d: f64,
    pub m: usize,
}

/// `1 / (10 m^(1/3) d^(1/3))`, capped at 1.
pub fn sample_rate(m: usize, d: f64) -> f64 {
    let m = m.max(1) as f64;
    (1.0 / (10.0 * m.cbrt() * d.max(1.0).cbrt())).min(1.0)
}

/// Iterations for recovery with probability `1 - delta`.
pub fn whp_iterations(p: f64, m: usize, delta: f64) -> u64 {
    let m = m.max(1) as f64;
    (2.0 / (p * p) * (m.ln() + (1.0 / delta).ln())).ceil() as u64
}

/// Iterations after which the expected leftover is small enough for a
/// binary-search sweep.
pub fn expected_iterations(p: f64, n: usize, m: usize) -> u64 {
    let ratio = (n as f64).powi(2) / m.max(1) as f64;
    if ratio <= 1.0 {
        return 0;
    }
    (2.0 * ratio.ln() / (p * p)).ceil() as u64
}

impl SampleParams {
    pub fn new(m: usize, d: f64, ell: u64) -> Self {
        Self {
            p: sample_rate(m, d),
            ell,
            d,
            m,
        }
    }

    pub fn whp(m: usize, d: f64, delta: f64) -> Result<Self> {
        check_delta(delta)?;
        let p = sample_rate(m, d);
        Ok(Self {
            p,
            ell: whp_iterations(p, m, delta),
            d,
            m,
        })
    }

    pub fn expected(n: usize, m: usize, d: f64) -> Self {
        let p = sample_rate(m, d);
        Self {
            p,
            ell: expected_iterations(p, n, m),
            d,
            m,
        }
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("failure probability must lie in (0, 1), got {delta}")))
    }
}

/// Repeatedly reconstructs sparse random induced subgraphs of `G[vs]`,
/// adding what it finds to `known`. Oversized samples are skipped.
pub fn key_subroutine<Q, R>(
    o: &mut Q,
    vs: &VertexSet,
    params: SampleParams,
    mut known: KnownEdges,
    budget: ForestBudget,
    rng: &mut R,
) -> Result<KnownEdges>
where
    Q: CcQuery + ?Sized,
    R: Rng + ?Sized,
{
    let cap = 100.0 * params.p * vs.len() as f64;
    for _ in 0..params.ell {
        let s = VertexSet::from_sorted_unchecked(bernoulli_subset(vs.as_slice(), params.p, rng));
        if s.len() < 2 || s.len() as f64 > cap {
            continue;
        }
        let found = reconstruct_forest(o, &s, &known, budget)?;
        known.extend(found);
    }
    Ok(known)
}

pub(crate) fn edges_within(known: &KnownEdges, vs: &VertexSet) -> Vec<Edge> {
    let mut out = Vec::new();
    for v in vs.iter() {
        out.extend(
            known
                .neighbors(v)
                .iter()
                .filter(|&&w| w > v && vs.contains(w))
                .map(|&w| Edge::new(v, w)),
        );
    }
    out
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn bounded_degree_whp_into<Q, R>(
    o: &mut Q,
    vs: &VertexSet,
    m: usize,
    d: f64,
    delta: f64,
    known: KnownEdges,
    budget: ForestBudget,
    rng: &mut R,
) -> Result<KnownEdges>
where
    Q: CcQuery + ?Sized,
    R: Rng + ?Sized,
{
    key_subroutine(o, vs, SampleParams::whp(m, d, delta)?, known, budget, rng)
}

pub(crate) fn bounded_degree_expected_into<Q, R>(
    o: &mut Q,
    vs: &VertexSet,
    m: usize,
    d: f64,
    known: KnownEdges,
    budget: ForestBudget,
    rng: &mut R,
) -> Result<KnownEdges>
where
    Q: CcQuery + ?Sized,
    R: Rng + ?Sized,
{
    let params = SampleParams::expected(vs.len(), m, d);
    let mut known = key_subroutine(o, vs, params, known, budget, rng)?;
    let rest = binary_search_reconstruct(o, vs, &known)?;
    known.extend(rest);
    Ok(known)
}

/// Edges of `G[vs]`, all of them with probability at least `1 - delta`.
pub fn reconstruct_bounded_degree_whp<Q, R>(
    o: &mut Q,
    vs: &VertexSet,
    m: usize,
    d: f64,
    delta: f64,
    budget: ForestBudget,
    rng: &mut R,
) -> Result<Vec<Edge>>
where
    Q: CcQuery + ?Sized,
    R: Rng + ?Sized,
{
    let known = bounded_degree_whp_into(o, vs, m, d, delta, KnownEdges::new(), budget, rng)?;
    Ok(edges_within(&known, vs))
}

/// All edges of `G[vs]`: sampling first, then a binary-search sweep for
/// whatever the sampling missed.
pub fn reconstruct_bounded_degree_expected<Q, R>(
    o: &mut Q,
    vs: &VertexSet,
    m: usize,
    d: f64,
    budget: ForestBudget,
    rng: &mut R,
) -> Result<Vec<Edge>>
where
    Q: CcQuery + ?Sized,
    R: Rng + ?Sized,
{
    let known = bounded_degree_expected_into(o, vs, m, d, KnownEdges::new(), budget, rng)?;
    Ok(edges_within(&known, vs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family, Graph, InstanceSpec};
    use crate::oracle::CcOracle;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn matching(n: usize) -> Graph {
        Graph::from_edges(n, (0..n / 2).map(|i| (2 * i, 2 * i + 1))).unwrap()
    }

    #[test]
    fn rate_and_iteration_formulas() {
        let p = sample_rate(1000, 10.0);
        assert!((p - 4.642e-3).abs() < 1e-6, "{p}");
        assert_eq!(whp_iterations(0.1, 100, 0.01), 1843);
        assert_eq!(expected_iterations(0.5, 4, 16), 0);
    }

    #[test]
    fn zero_iterations_change_nothing() {
        let g = matching(10);
        let mut o = CcOracle::adaptive(g);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let known: KnownEdges = [Edge::new(0, 1)].into_iter().collect();
        let params = SampleParams::new(5, 1.0, 0);
        let out = key_subroutine(&mut o, &VertexSet::full(10), params, known.clone(), ForestBudget::default(), &mut rng).unwrap();
        assert_eq!(out, known);
        assert_eq!(o.total_queries(), 0);
    }

    #[test]
    fn matching_is_recovered_in_most_runs() {
        let g = matching(200);
        let mut full = 0;
        for seed in 0..50 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut o = CcOracle::adaptive(g.clone());
            let params = SampleParams::new(100, 1.0, 0);
            let ell = (2.0 / (params.p * params.p) * 100f64.ln()).ceil() as u64;
            let params = SampleParams { ell, ..params };
            let known = key_subroutine(&mut o, &VertexSet::full(200), params, KnownEdges::new(), ForestBudget::default(), &mut rng).unwrap();
            assert!(known.edges().iter().all(|e| g.has_edge(e.lo(), e.hi())));
            if known.len() == g.m() {
                full += 1;
            }
        }
        assert!(full >= 45, "{full}");
    }

    #[test]
    fn whp_variant_on_matching() {
        let g = matching(100);
        let mut full = 0;
        for seed in 0..100 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut o = CcOracle::adaptive(g.clone());
            let got = reconstruct_bounded_degree_whp(&mut o, &VertexSet::full(100), 50, 1.0, 0.1, ForestBudget::default(), &mut rng).unwrap();
            if got == g.edges() {
                full += 1;
            }
        }
        assert!(full >= 85, "{full}");
    }

    #[test]
    fn expected_variant_is_exact() {
        for seed in 0..5 {
            let g = generate(&InstanceSpec { family: Family::Gnm, n: 64, m: 128, seed }).unwrap().into_hidden();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut o = CcOracle::adaptive(g.clone());
            let got = reconstruct_bounded_degree_expected(&mut o, &VertexSet::full(64), 128, 16.0, ForestBudget::default(), &mut rng).unwrap();
            assert_eq!(got, g.edges());
        }
        let single = Graph::from_edges(12, [(3, 7)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut o = CcOracle::adaptive(single.clone());
        let got = reconstruct_bounded_degree_expected(&mut o, &VertexSet::full(12), 1, 1.0, ForestBudget::default(), &mut rng).unwrap();
        assert_eq!(got, single.edges());
    }

    #[test]
    fn empty_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut o = CcOracle::adaptive(Graph::empty(30));
        let got = reconstruct_bounded_degree_whp(&mut o, &VertexSet::full(30), 10, 2.0, 0.1, ForestBudget::default(), &mut rng).unwrap();
        assert!(got.is_empty());
        let got = reconstruct_bounded_degree_expected(&mut o, &VertexSet::full(30), 10, 2.0, ForestBudget::default(), &mut rng).unwrap();
        assert!(got.is_empty());
    }
}
