//! Fully adaptive reconstruction.
//!
//! Vertices are split into degree classes by repeated high-degree
//! detection. Edges inside and between neighboring classes come from
//! sampled forest peeling, edges from a high class into a much lower one
//! from the coloring search, and every candidate graph is checked exactly
//! before it is returned.

mod levels;
mod sampling;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Edge, Vertex, VertexSet};
use crate::oracle::CcQuery;
use crate::primitives::{
    binary_search_reconstruct, find_high_degree, find_neighbors_in_known_subgraph, has_neighbor,
    ForestBudget, KnownEdges,
};
use crate::rng::stream_rng;
use crate::{Error, Result};

pub use levels::{build_levels, LevelPartition, Levels};
pub use sampling::{
    expected_iterations, key_subroutine, reconstruct_bounded_degree_expected,
    reconstruct_bounded_degree_whp, sample_rate, whp_iterations, SampleParams,
};

use sampling::{bounded_degree_expected_into, bounded_degree_whp_into, edges_within};

/// Tunable constants of the adaptive reconstructor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveConfig {
    pub forest: ForestBudget,
    /// Edge bounds below this use a single binary-search sweep.
    pub cutoff: usize,
    pub restart_cap: u32,
    /// Queries charged per recursion node of the set-adjacency search.
    pub c_adj: u64,
    /// Failure probability for each high-degree detection; defaults to
    /// `1 / (10 l)` for `l` levels.
    pub high_degree_delta: Option<f64>,
    /// Failure probability of the first pair phase.
    pub pair_delta: f64,
}

impl Default for AdaptiveConfig {
    fn default() -> Self {
        Self {
            forest: ForestBudget::default(),
            cutoff: 1_000_000,
            restart_cap: 20,
            c_adj: 4,
            high_degree_delta: None,
            pair_delta: 0.01,
        }
    }
}

/// Result of a reconstruction run.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptiveOutcome {
    /// The verified edge set, or `None` once the restart cap is used up.
    pub edges: Option<Vec<Edge>>,
    pub restarts: u32,
    pub used_fallback: bool,
    /// The partition of the final attempt, when the level machinery ran.
    pub partition: Option<LevelPartition>,
}

/// Checks that `candidate` is exactly the hidden edge set: one pair query
/// per candidate edge, then two queries per vertex confirming it has no
/// neighbor outside its candidate neighborhood.
pub fn verify_reconstruction<Q: CcQuery + ?Sized>(o: &mut Q, candidate: &[Edge]) -> Result<bool> {
    let n = o.vertex_count();
    let mut nbrs: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for e in candidate {
        let (u, v) = e.endpoints();
        if v >= n {
            return Ok(false);
        }
        if o.query(&VertexSet::pair(u, v))? != 1 {
            return Ok(false);
        }
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    let all = VertexSet::full(n);
    for (v, list) in nbrs.into_iter().enumerate() {
        let closed = VertexSet::from_unsorted(list).with(v);
        if has_neighbor(o, v, &all.difference(&closed))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reconstructs the hidden graph given an upper bound `m` on its edge
/// count. Each attempt draws its randomness from its own stream of `seed`.
pub fn adaptive_reconstruct<Q: CcQuery + ?Sized>(
    o: &mut Q,
    m: usize,
    config: &AdaptiveConfig,
    seed: u64,
) -> Result<AdaptiveOutcome> {
    let fallback = m < config.cutoff || (m as f64).cbrt() < 10.0;
    let mut partition = None;
    for attempt in 0..=config.restart_cap {
        let candidate = if fallback {
            binary_search_reconstruct(o, &VertexSet::full(o.vertex_count()), &KnownEdges::new())?
        } else {
            let mut rng = stream_rng(seed, attempt as u64);
            match level_attempt(o, m, config, &mut rng) {
                Ok((edges, p)) => {
                    partition = Some(p);
                    edges
                }
                Err(Error::Precondition(_)) => continue,
                Err(e) => return Err(e),
            }
        };
        if verify_reconstruction(o, &candidate)? {
            return Ok(AdaptiveOutcome {
                edges: Some(candidate),
                restarts: attempt,
                used_fallback: fallback,
                partition,
            });
        }
    }
    Ok(AdaptiveOutcome {
        edges: None,
        restarts: config.restart_cap,
        used_fallback: fallback,
        partition,
    })
}

/// Derives the degree classes from the high-degree sets of one attempt.
pub fn partition_levels<Q, R>(
    o: &mut Q,
    m: usize,
    config: &AdaptiveConfig,
    rng: &mut R,
) -> Result<LevelPartition>
where
    Q: CcQuery + ?Sized,
    R: Rng + ?Sized,
{
    let levels = build_levels(m)?;
    let delta = config
        .high_degree_delta
        .unwrap_or(1.0 / (10.0 * levels.len() as f64));
    let mut raw = Vec::with_capacity(levels.len());
    for &t in &levels.thresholds {
        raw.push(find_high_degree(o, m, t, delta, config.c_adj, rng)?);
    }
    Ok(LevelPartition::from_high_sets(levels, raw, o.vertex_count()))
}

fn level_attempt<Q: CcQuery + ?Sized>(
    o: &mut Q,
    m: usize,
    config: &AdaptiveConfig,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<Edge>, LevelPartition)> {
    let part = partition_levels(o, m, config, rng)?;
    let t = &part.levels.thresholds;
    let s = &part.s_classes;
    let l = s.len();
    let budget = config.forest;
    let mut known = KnownEdges::new();

    if l == 1 {
        known = bounded_degree_whp_into(o, &s[0], m, 2.0 * t[0], config.pair_delta, known, budget, rng)?;
    } else {
        for i in 0..l - 1 {
            let pair = s[i].union(&s[i + 1]);
            let d = 2.0 * t[i + 1];
            known = if i == 0 {
                bounded_degree_whp_into(o, &pair, m, d, config.pair_delta, known, budget, rng)?
            } else {
                bounded_degree_expected_into(o, &pair, m, d, known, budget, rng)?
            };
        }
    }

    let inner: Vec<Vec<Edge>> = s.iter().map(|c| edges_within(&known, c)).collect();
    for j in 2..l {
        for i in 0..j - 1 {
            let d = (2.0 * t[i]).ceil() as usize;
            for v in s[j].iter() {
                let found = find_neighbors_in_known_subgraph(o, v, &s[i], &inner[i], d, budget)?;
                known.extend(found);
            }
        }
    }

    let top: Vec<Vertex> = part.residual.iter().collect();
    for (a, &u) in top.iter().enumerate() {
        for &v in &top[a + 1..] {
            if o.query(&VertexSet::pair(u, v))? == 1 {
                known.insert(Edge::new(u, v));
            }
        }
    }
    for v in top {
        for i in 0..l {
            let d = (2.0 * t[i]).ceil() as usize;
            let found = find_neighbors_in_known_subgraph(o, v, &s[i], &inner[i], d, budget)?;
            known.extend(found);
        }
    }
    Ok((known.edges(), part))
}
