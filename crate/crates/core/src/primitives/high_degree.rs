use rand::Rng;

use crate::graph::{Vertex, VertexSet};
use crate::oracle::{CcQuery, Metered};
use crate::rng::bernoulli_subset;
use crate::{Error, Result};

use super::{find_adjacent_to_set, is_local_halt};

/// Number of sampling rounds for an edge bound `m` and failure probability
/// `delta`.
pub fn high_degree_iterations(m: usize, delta: f64) -> u64 {
    (200.0 * ((2.0 * m as f64).ln() + (1.0 / delta).ln())).ceil() as u64
}

/// Query allowance for a single sampling round.
pub fn high_degree_iteration_budget(n: usize, m: usize, t: f64, c_adj: u64) -> u64 {
    let rate = (20.0 * m as f64 / t).ceil() as u64;
    let depth = (n.max(2) as f64).log2().ceil() as u64;
    c_adj * rate.max(1) * depth
}

/// Vertices whose degree is around `t` or more, by majority vote over
/// rounds that sample vertices at rate `1/t` and collect their neighbors.
///
/// A round whose search runs past its allowance contributes nothing.
pub fn find_high_degree<Q, R>(
    o: &mut Q,
    m: usize,
    t: f64,
    delta: f64,
    c_adj: u64,
    rng: &mut R,
) -> Result<VertexSet>
where
    Q: CcQuery + ?Sized,
    R: Rng + ?Sized,
{
    if t.is_nan() || t < 10.0 {
        return Err(Error::InvalidInput(format!("threshold must be at least 10, got {t}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidInput(format!("failure probability must lie in (0, 1), got {delta}")));
    }
    let n = o.vertex_count();
    if t >= n as f64 || m == 0 {
        return Ok(VertexSet::new());
    }
    let rounds = high_degree_iterations(m, delta);
    let allowance = high_degree_iteration_budget(n, m, t, c_adj);
    let all: Vec<Vertex> = (0..n).collect();
    let mut votes = vec![0u64; n];
    for _ in 0..rounds {
        let sample = VertexSet::from_sorted_unchecked(bernoulli_subset(&all, 1.0 / t, rng));
        if sample.is_empty() {
            continue;
        }
        let mut metered = Metered::new(o, allowance);
        match find_adjacent_to_set(&mut metered, &sample) {
            Ok(hit) => hit.iter().for_each(|v| votes[v] += 1),
            Err(e) if is_local_halt(&e, metered.exhausted()) => {}
            Err(e) => return Err(e),
        }
    }
    Ok((0..n).filter(|&v| 2 * votes[v] >= rounds).collect())
}
