use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;

use crate::graph::{Vertex, VertexSet};
use crate::oracle::CcOracle;
use crate::{Error, Result};

/// Repetitions per scale for failure probability `epsilon`.
pub fn degree_repetitions(epsilon: f64) -> u64 {
    (450.0 * (800.0 / (epsilon * epsilon)).ln()).ceil() as u64
}

/// Number of sampling scales, `ceil(log2(n - 1))`.
pub fn degree_scales(n: usize) -> u32 {
    if n <= 2 {
        0
    } else {
        usize::BITS - (n - 2).leading_zeros()
    }
}

/// The fixed query schedule of one degree estimate.
///
/// Scale `p` draws `2^p` vertices uniformly with replacement from
/// `V \ {u}`; each drawn set `S` costs the two queries `S` and `S ∪ {u}`.
/// The sets are regenerated from `seed` rather than stored.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreePlan {
    pub u: Vertex,
    pub n: usize,
    pub epsilon: f64,
    pub ell: u64,
    pub seed: u64,
}

pub fn plan_degree(u: Vertex, n: usize, epsilon: f64, seed: u64) -> Result<DegreePlan> {
    if n < 2 || u >= n {
        return Err(Error::InvalidInput(format!("vertex {u} in a graph of order {n}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidInput(format!("failure probability must lie in (0, 1), got {epsilon}")));
    }
    Ok(DegreePlan {
        u,
        n,
        epsilon,
        ell: degree_repetitions(epsilon),
        seed,
    })
}

impl DegreePlan {
    pub fn scales(&self) -> u32 {
        degree_scales(self.n)
    }

    pub fn query_count(&self) -> u64 {
        2 * self.ell * u64::from(self.scales())
    }

    /// Calls `f(p, set)` for every drawn set, in submission order.
    pub fn for_each_set<F>(&self, mut f: F) -> Result<()>
    where
        F: FnMut(u32, &VertexSet) -> Result<()>,
    {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut buf = VertexSet::new();
        let mut bits = vec![0u64; self.n.div_ceil(64)];
        let others = (self.n - 1) as u32;
        for p in 1..=self.scales() {
            let draws = 1usize << p;
            for _ in 0..self.ell {
                bits.iter_mut().for_each(|w| *w = 0);
                for _ in 0..draws {
                    let x = rng.random_range(0..others) as usize;
                    let v = if x >= self.u { x + 1 } else { x };
                    bits[v / 64] |= 1 << (v % 64);
                }
                buf.refill_from_bits(&bits);
                f(p, &buf)?;
            }
        }
        Ok(())
    }

    /// Submits the whole schedule into the open batch. Answers occupy
    /// [`query_count`](Self::query_count) consecutive positions starting at
    /// the returned index.
    pub fn submit(&self, o: &mut CcOracle) -> Result<usize> {
        let mut start = None;
        self.for_each_set(|_, s| {
            let (t, _) = o.submit_pair(s, self.u)?;
            start.get_or_insert(t.index());
            Ok(())
        })?;
        Ok(start.unwrap_or(0))
    }
}

/// The estimate `floor(2(n-1) / 2^p*)`, where `p*` is the largest scale at
/// which more than a `1/(2e)` fraction of the draws missed every neighbor
/// of `u`, or 0 when no scale qualifies.
pub fn decode_degree(plan: &DegreePlan, answers: &[usize]) -> Result<usize> {
    if answers.len() as u64 != plan.query_count() {
        return Err(Error::InvalidInput(format!(
            "expected {} answers, got {}",
            plan.query_count(),
            answers.len()
        )));
    }
    let ell = plan.ell as usize;
    let threshold = 1.0 / (2.0 * std::f64::consts::E);
    let mut best = 0u32;
    for (i, chunk) in answers.chunks(2 * ell).enumerate() {
        let misses = chunk
            .chunks(2)
            .filter(|pair| pair[1] as i64 - pair[0] as i64 == 1)
            .count();
        if misses as f64 / ell as f64 > threshold {
            best = i as u32 + 1;
        }
    }
    Ok((2 * (plan.n - 1)) >> best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::oracle::OracleMode;

    fn estimate(g: &Graph, u: Vertex, epsilon: f64, seed: u64) -> usize {
        let plan = plan_degree(u, g.n(), epsilon, seed).unwrap();
        let mut o = CcOracle::new(g.clone(), OracleMode::Batched { rounds: 1 });
        o.open_batch().unwrap();
        let start = plan.submit(&mut o).unwrap();
        let answers = o.close_batch().unwrap();
        assert_eq!(answers.len() as u64, plan.query_count());
        decode_degree(&plan, &answers[start..]).unwrap()
    }

    #[test]
    fn repetition_formula() {
        assert_eq!(degree_repetitions(0.01), 7153);
    }

    #[test]
    fn scale_count() {
        assert_eq!(degree_scales(2), 0);
        assert_eq!(degree_scales(3), 1);
        assert_eq!(degree_scales(64), 6);
        assert_eq!(degree_scales(65), 6);
        assert_eq!(degree_scales(66), 7);
        assert_eq!(degree_scales(128), 7);
    }

    #[test]
    fn star_center_takes_the_fallback() {
        let g = Graph::from_edges(32, (1..32).map(|v| (0, v))).unwrap();
        assert_eq!(estimate(&g, 0, 0.05, 1), 62);
    }

    #[test]
    fn moderate_degree_lands_in_range() {
        let g = Graph::from_edges(64, (1..9).map(|v| (0, v))).unwrap();
        for seed in 0..5 {
            let d = estimate(&g, 0, 0.05, seed);
            assert!((8..=32).contains(&d), "{d}");
        }
    }

    #[test]
    fn isolated_vertex_gets_a_small_estimate() {
        let g = Graph::empty(16);
        assert!(estimate(&g, 3, 0.05, 0) <= 2);
    }

    #[test]
    fn sets_avoid_u_and_have_the_drawn_size_bound() {
        let plan = plan_degree(5, 40, 0.5, 7).unwrap();
        let mut count = 0;
        plan.for_each_set(|p, s| {
            assert!(!s.contains(5));
            assert!(!s.is_empty() && s.len() <= 1 << p);
            count += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(2 * count as u64, plan.query_count());
    }
}
