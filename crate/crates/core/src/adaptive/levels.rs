use crate::graph::VertexSet;
use crate::{Error, Result};

/// Degree scales `α_i` and thresholds `T_i = sqrt(m / α_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Levels {
    pub alphas: Vec<f64>,
    pub thresholds: Vec<f64>,
}

impl Levels {
    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }
}

/// Starts at `α_1 = m^(1/3)` and raises to the power 0.9 until the first
/// value at most 100.
pub fn build_levels(m: usize) -> Result<Levels> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("edge bound must be at least 2, got {m}")));
    }
    let mf = m as f64;
    let mut alphas = vec![mf.cbrt()];
    while *alphas.last().unwrap() > 100.0 {
        let next = alphas.last().unwrap().powf(0.9);
        alphas.push(next);
    }
    let thresholds = alphas.iter().map(|a| (mf / a).sqrt()).collect();
    Ok(Levels { alphas, thresholds })
}

/// The degree classes found on one run.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelPartition {
    pub levels: Levels,
    /// `H_0 = V, H_1, ..., H_l`, each nested in the previous one.
    pub h_sets: Vec<VertexSet>,
    /// `S_i = H_{i-1} \ H_i` for `i = 1..=l`.
    pub s_classes: Vec<VertexSet>,
    pub residual: VertexSet,
}

impl LevelPartition {
    /// Derives the classes from `h_sets`, forcing each set inside its
    /// predecessor.
    pub fn from_high_sets(levels: Levels, raw: Vec<VertexSet>, n: usize) -> Self {
        let mut h_sets = vec![VertexSet::full(n)];
        for h in raw {
            let nested = h.intersection(h_sets.last().unwrap());
            h_sets.push(nested);
        }
        let s_classes = h_sets.windows(2).map(|w| w[0].difference(&w[1])).collect();
        let residual = h_sets.last().unwrap().clone();
        Self {
            levels,
            h_sets,
            s_classes,
            residual,
        }
    }
}
