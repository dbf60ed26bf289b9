//! Reconstruction with two rounds of adaptivity.
//!
//! The first batch estimates every degree, each within a factor of four.
//! The second batch recovers every neighborhood by group testing with the
//! estimate as the support bound, OR queries being simulated by pairs of
//! component-count queries.

mod degree;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{Edge, Vertex};
use crate::oracle::{CcOracle, CcQuery, OracleError, OracleMode};
use crate::rng::{split_seed, stream_rng};
use crate::{Error, Result};

pub use degree::{decode_degree, degree_repetitions, degree_scales, plan_degree, DegreePlan};
pub use group_test::{
    decode_neighborhood, group_test_count, or_query_via_cc, plan_neighborhood, GroupTestPlan,
    PendingOr,
};

/// Named choices of failure probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    /// `1/n^2` for both steps. Named `paper` on the command line.
    #[serde(rename = "paper")]
    Strict,
    /// 0.05 for both steps.
    Practical,
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Strict => "paper",
            Profile::Practical => "practical",
        })
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" | "strict" => Ok(Profile::Strict),
            "practical" => Ok(Profile::Practical),
            other => Err(Error::InvalidInput(format!("unknown profile `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoRoundConfig {
    /// Failure probability of each degree estimate.
    pub epsilon: f64,
    /// Failure probability of each neighborhood decode.
    pub alpha: f64,
    /// Scale of the number of group tests.
    pub c_gt: f64,
}

impl TwoRoundConfig {
    pub const DEFAULT_C_GT: f64 = 3.0 * std::f64::consts::E;

    pub fn for_profile(profile: Profile, n: usize) -> Self {
        let p = match profile {
            Profile::Strict => 1.0 / (n.max(2) as f64).powi(2),
            Profile::Practical => 0.05,
        };
        Self {
            epsilon: p,
            alpha: p,
            c_gt: Self::DEFAULT_C_GT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoRoundFailure {
    /// The degree estimates sum past `8m`.
    Gate { total: usize, limit: usize },
    /// More candidates than the support bound.
    Decode { vertex: Vertex },
    /// `u` lists `v` as a neighbor but not the other way round.
    Asymmetric { u: Vertex, v: Vertex },
}

impl fmt::Display for TwoRoundFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwoRoundFailure::Gate { total, limit } => {
                write!(f, "degree estimates sum to {total}, above {limit}")
            }
            TwoRoundFailure::Decode { vertex } => write!(f, "neighborhood of {vertex} failed to decode"),
            TwoRoundFailure::Asymmetric { u, v } => write!(f, "{u} lists {v} but not conversely"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoRoundOutcome {
    pub edges: Option<Vec<Edge>>,
    pub failure: Option<TwoRoundFailure>,
    pub estimates: Vec<usize>,
    /// Queries in the first and second batch.
    pub round_queries: [u64; 2],
}

/// Runs both batches on `o`, which must be a fresh two-round batched
/// oracle. `m` is an upper bound on the edge count.
pub fn two_round_reconstruct(
    o: &mut CcOracle,
    m: usize,
    config: &TwoRoundConfig,
    seed: u64,
) -> Result<TwoRoundOutcome> {
    if !matches!(o.ledger().mode(), OracleMode::Batched { rounds } if rounds >= 2) {
        return Err(OracleError::ContractViolation("a two-round batched oracle is required".into()).into());
    }
    let n = o.vertex_count();
    let degree_seed = split_seed(seed, 0);
    let group_seed = split_seed(seed, 1);

    o.open_batch()?;
    let mut plans = Vec::with_capacity(n);
    if n >= 2 {
        for u in 0..n {
            let plan = plan_degree(u, n, config.epsilon, split_seed(degree_seed, u as u64))?;
            let start = plan.submit(o)?;
            plans.push((plan, start));
        }
    }
    let answers = o.close_batch()?;
    let estimates = plans
        .iter()
        .map(|(plan, start)| {
            let len = plan.query_count() as usize;
            decode_degree(plan, &answers[*start..*start + len])
        })
        .collect::<Result<Vec<_>>>()?;
    drop(answers);

    let total: usize = estimates.iter().sum();
    let limit = 8 * m;
    if total > limit {
        o.open_batch()?;
        o.close_batch()?;
        return Ok(finish(o, None, Some(TwoRoundFailure::Gate { total, limit }), estimates));
    }

    o.open_batch()?;
    let mut tests = Vec::with_capacity(n);
    for (u, &d) in estimates.iter().enumerate() {
        let mut rng = stream_rng(group_seed, u as u64);
        let plan = plan_neighborhood(u, n, d.max(1), config.alpha, config.c_gt, &mut rng)?;
        let pending = plan.submit(o)?;
        tests.push((plan, pending));
    }
    let answers = o.close_batch()?;

    let mut hoods = Vec::with_capacity(n);
    for (plan, pending) in &tests {
        let outcomes: Vec<bool> = pending.iter().map(|p| p.resolve(&answers)).collect();
        match decode_neighborhood(plan, &outcomes)? {
            Some(h) => hoods.push(h),
            None => {
                let failure = TwoRoundFailure::Decode { vertex: plan.u };
                return Ok(finish(o, None, Some(failure), estimates));
            }
        }
    }
    let mut edges = Vec::new();
    for (u, hood) in hoods.iter().enumerate() {
        for v in hood.iter() {
            if !hoods[v].contains(u) {
                let failure = TwoRoundFailure::Asymmetric { u, v };
                return Ok(finish(o, None, Some(failure), estimates));
            }
            if u < v {
                edges.push(Edge::new(u, v));
            }
        }
    }
    Ok(finish(o, Some(edges), None, estimates))
}

fn finish(
    o: &CcOracle,
    edges: Option<Vec<Edge>>,
    failure: Option<TwoRoundFailure>,
    estimates: Vec<usize>,
) -> TwoRoundOutcome {
    let sizes = o.ledger().batch_sizes();
    TwoRoundOutcome {
        edges,
        failure,
        estimates,
        round_queries: [sizes.first().copied().unwrap_or(0), sizes.get(1).copied().unwrap_or(0)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family, Graph, InstanceSpec};

    fn oracle(g: Graph) -> CcOracle {
        CcOracle::new(g, OracleMode::Batched { rounds: 2 })
    }

    #[test]
    fn empty_graph_succeeds_in_two_rounds() {
        let mut o = oracle(Graph::empty(16));
        let cfg = TwoRoundConfig::for_profile(Profile::Practical, 16);
        let out = two_round_reconstruct(&mut o, 16, &cfg, 0).unwrap();
        assert_eq!(out.edges, Some(vec![]));
        assert_eq!(o.ledger().rounds(), 2);
    }

    #[test]
    fn practical_profile_recovers_small_gnm() {
        let g = generate(&InstanceSpec { family: Family::Gnm, n: 32, m: 48, seed: 4 }).unwrap().into_hidden();
        let mut o = oracle(g.clone());
        let cfg = TwoRoundConfig::for_profile(Profile::Practical, 32);
        let out = two_round_reconstruct(&mut o, 48, &cfg, 4).unwrap();
        assert_eq!(o.ledger().rounds(), 2);
        assert_eq!(out.edges.as_deref(), Some(g.edges()), "{:?}", out.failure);
        let first: u64 = out.estimates.iter().map(|_| 2 * degree_repetitions(0.05) * 5).sum();
        assert_eq!(out.round_queries[0], first);
    }

    #[test]
    fn tight_edge_bound_trips_the_gate() {
        let g = Graph::from_edges(16, (1..16).map(|v| (0, v))).unwrap();
        let mut o = oracle(g);
        let cfg = TwoRoundConfig::for_profile(Profile::Practical, 16);
        let out = two_round_reconstruct(&mut o, 1, &cfg, 0).unwrap();
        assert!(matches!(out.failure, Some(TwoRoundFailure::Gate { .. })));
        assert_eq!(o.ledger().rounds(), 2);
        assert_eq!(out.round_queries[1], 0);
    }

    #[test]
    fn adaptive_oracle_is_refused() {
        let mut o = CcOracle::adaptive(Graph::empty(4));
        let cfg = TwoRoundConfig::for_profile(Profile::Practical, 4);
        assert!(two_round_reconstruct(&mut o, 4, &cfg, 0).is_err());
    }

    #[test]
    fn profile_names_round_trip() {
        for p in [Profile::Strict, Profile::Practical] {
            assert_eq!(p.to_string().parse::<Profile>().unwrap(), p);
        }
        let cfg = TwoRoundConfig::for_profile(Profile::Strict, 10);
        assert!((cfg.epsilon - 0.01).abs() < 1e-12);
    }
}
