//! Repeated-trial checks of the randomized subroutines. Seeds are fixed, so
//! every run sees the same draws.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ccquery::adaptive::{adaptive_reconstruct, AdaptiveConfig};
use ccquery::graph::generate::gnm;
use ccquery::primitives::find_high_degree;
use ccquery::rng::split_seed;
use ccquery::two_round::{
    decode_degree, decode_neighborhood, plan_degree, plan_neighborhood, two_round_reconstruct, Profile,
    TwoRoundConfig,
};
use ccquery::{CcOracle, Graph, OracleMode, VertexSet};

// Vertex 0 gets `deg` neighbors; the rest of the graph is a sparse random
// graph on the remaining vertices.
fn planted(n: usize, deg: usize, background: usize, seed: u64) -> Graph {
    let rest = gnm(n - 1, background, &mut ChaCha8Rng::seed_from_u64(seed));
    let edges = (1..=deg)
        .map(|v| (0, v))
        .chain(rest.edges().iter().map(|e| (e.lo() + 1, e.hi() + 1)));
    Graph::from_edges(n, edges).unwrap()
}

fn estimate_degree(g: &Graph, epsilon: f64, seed: u64) -> usize {
    let mut o = CcOracle::new(g.clone(), OracleMode::Batched { rounds: 1 });
    let plan = plan_degree(0, g.n(), epsilon, seed).unwrap();
    o.open_batch().unwrap();
    let start = plan.submit(&mut o).unwrap();
    let answers = o.close_batch().unwrap();
    decode_degree(&plan, &answers[start..start + plan.query_count() as usize]).unwrap()
}

#[test]
fn high_degree_detection_on_a_star() {
    let n = 64;
    let star = Graph::from_edges(n, (1..n).map(|v| (0, v))).unwrap();
    let (trials, delta) = (200, 0.1);
    let (mut center_missed, mut leaf_flagged) = (0, 0);
    for t in 0..trials {
        let mut o = CcOracle::adaptive(star.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(split_seed(11, t));
        let high = find_high_degree(&mut o, n - 1, 10.0, delta, 4, &mut rng).unwrap();
        center_missed += usize::from(!high.contains(0));
        leaf_flagged += usize::from(high.contains(17));
    }
    let limit = (2.0 * delta * trials as f64) as usize;
    assert!(center_missed <= limit, "center missed {center_missed}/{trials}");
    assert!(leaf_flagged <= limit, "leaf flagged {leaf_flagged}/{trials}");
}

#[test]
fn degree_estimates_land_in_range() {
    let (n, deg, trials) = (256, 8, 200);
    let epsilon = TwoRoundConfig::for_profile(Profile::Practical, n).epsilon;
    let mut hits = 0;
    for t in 0..trials {
        let g = planted(n, deg, 300, t);
        let d = estimate_degree(&g, epsilon, split_seed(21, t));
        hits += usize::from((deg..=4 * deg).contains(&d));
    }
    assert!(hits as f64 >= 0.90 * trials as f64, "{hits}/{trials} in range");
}

#[test]
fn degree_estimates_in_the_strict_profile() {
    let (n, deg, trials) = (16, 3, 1000);
    let epsilon = TwoRoundConfig::for_profile(Profile::Strict, n).epsilon;
    let g = planted(n, deg, 10, 5);
    let misses = (0..trials)
        .filter(|&t| !(deg..=4 * deg).contains(&estimate_degree(&g, epsilon, split_seed(31, t))))
        .count();
    assert!(misses as f64 <= 2.0 * epsilon * trials as f64, "{misses}/{trials} out of range");
}

#[test]
fn group_testing_recovers_neighborhoods() {
    let (n, deg, d, alpha, trials) = (128, 4, 8, 0.01, 200);
    let mut exact = 0;
    for t in 0..trials {
        let g = planted(n, deg, 150, t);
        let mut rng = ChaCha8Rng::seed_from_u64(split_seed(41, t));
        let plan = plan_neighborhood(0, n, d, alpha, TwoRoundConfig::DEFAULT_C_GT, &mut rng).unwrap();
        let mut o = CcOracle::new(g.clone(), OracleMode::Batched { rounds: 1 });
        o.open_batch().unwrap();
        let pending = plan.submit(&mut o).unwrap();
        let answers = o.close_batch().unwrap();
        let outcomes: Vec<bool> = pending.iter().map(|p| p.resolve(&answers)).collect();
        let truth = VertexSet::from_unsorted(g.neighbors(0).to_vec());
        exact += usize::from(decode_neighborhood(&plan, &outcomes).unwrap() == Some(truth));
    }
    assert!(exact as f64 >= 0.98 * trials as f64, "{exact}/{trials} exact");
}

#[test]
fn strict_profile_two_round_smoke() {
    for seed in 0..3 {
        let g = gnm(24, 30, &mut ChaCha8Rng::seed_from_u64(seed));
        let config = TwoRoundConfig::for_profile(Profile::Strict, g.n());
        let mut o = CcOracle::new(g.clone(), OracleMode::Batched { rounds: 2 });
        let out = two_round_reconstruct(&mut o, 30, &config, seed).unwrap();
        assert_eq!(out.edges.as_deref(), Some(g.edges()), "seed {seed}: {:?}", out.failure);
        assert_eq!(o.ledger().rounds(), 2);
    }
}

#[test]
fn adaptive_default_config_on_sparse_random_graphs() {
    for t in 0..50 {
        let g = gnm(256, 512, &mut ChaCha8Rng::seed_from_u64(split_seed(51, t)));
        let mut o = CcOracle::adaptive(g.clone());
        let out = adaptive_reconstruct(&mut o, 512, &AdaptiveConfig::default(), t).unwrap();
        assert_eq!(out.edges.as_deref(), Some(g.edges()), "trial {t}");
    }
}
