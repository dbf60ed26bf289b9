//! Seed derivation and sampling helpers shared by the randomized algorithms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};

use crate::graph::Vertex;

/// Derives an independent child seed for `stream` (splitmix64 finaliser).
pub fn split_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(split_seed(seed, stream))
}

/// Keeps each member independently with probability `p`, in `O(1 + kept)`
/// expected time via geometric gaps.
pub fn bernoulli_subset<R: Rng + ?Sized>(members: &[Vertex], p: f64, rng: &mut R) -> Vec<Vertex> {
    if p >= 1.0 {
        return members.to_vec();
    }
    if p <= 0.0 || members.is_empty() {
        return Vec::new();
    }
    let gap = Geometric::new(p).expect("0 < p < 1");
    let mut out = Vec::new();
    let mut i = 0usize;
    loop {
        let skip = gap.sample(rng);
        i = match i.checked_add(usize::try_from(skip).unwrap_or(usize::MAX)) {
            Some(i) if i < members.len() => i,
            _ => break,
        };
        out.push(members[i]);
        i += 1;
    }
    out
}
