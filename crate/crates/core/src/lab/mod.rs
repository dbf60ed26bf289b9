//! Experiment harness: seeded trials of each algorithm on each instance
//! family, CSV output, and executable checks of the lower-bound families.

mod lower_bound;
mod report;

use std::fmt;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::adaptive::{adaptive_reconstruct, AdaptiveConfig};
use crate::graph::{generate, Edge, Family, Graph, InstanceSpec, VertexSet};
use crate::oracle::{CcOracle, CcQuery, OracleMode};
use crate::primitives::{binary_search_reconstruct, ForestBudget, KnownEdges};
use crate::rng::split_seed;
use crate::two_round::{two_round_reconstruct, Profile, TwoRoundConfig};
use crate::{Error, Result};

pub use lower_bound::{distinguishing_pairs, random_query_family, ArraySearchAdapter};
pub use report::{emit_csv, read_csv, CsvRow, ReconstructionReport, CSV_HEADER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algo {
    Adaptive,
    TwoRound,
    BinarySearch,
    /// One batch holding every pair query.
    Pairwise,
}

impl Algo {
    pub const ALL: [Algo; 4] = [Algo::Adaptive, Algo::TwoRound, Algo::BinarySearch, Algo::Pairwise];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Adaptive => "adaptive",
            Algo::TwoRound => "two-round",
            Algo::BinarySearch => "binary-search",
            Algo::Pairwise => "pairwise",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown algorithm `{s}`")))
    }
}

/// Replacements for the default constants; `None` keeps the default.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub cutoff: Option<usize>,
    pub c_density: Option<f64>,
    pub restart_cap: Option<u32>,
    pub c_gt: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub algo: Algo,
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub trials: usize,
    pub seed: u64,
    pub profile: Profile,
    pub overrides: Overrides,
    pub csv: Option<PathBuf>,
    /// Per-trial query traces; with several trials the trial index is
    /// inserted before the extension.
    pub trace: Option<PathBuf>,
    /// Include set members in the trace.
    pub trace_sets: bool,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    /// Record wall-clock time. Off by default so that output is a pure
    /// function of the configuration.
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(algo: Algo, family: Family, n: usize, m: usize, trials: usize, seed: u64) -> Self {
        Self {
            algo,
            family,
            n,
            m,
            trials,
            seed,
            profile: Profile::Practical,
            overrides: Overrides::default(),
            csv: None,
            trace: None,
            trace_sets: false,
            jobs: 0,
            timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidInput("at least one trial is required".into()));
        }
        InstanceSpec::new(self.family, self.n, self.m, self.seed).validate()?;
        if self.algo == Algo::TwoRound && self.n < 2 {
            return Err(Error::InvalidInput("two-round runs need n >= 2".into()));
        }
        if let Some(c) = self.overrides.c_density {
            ForestBudget::new(c)?;
        }
        if self.overrides.c_gt.is_some_and(|c| !(c > 0.0 && c.is_finite())) {
            return Err(Error::InvalidInput("group-test scale must be positive".into()));
        }
        Ok(())
    }

    /// Seed of trial `t`; the instance and the algorithm draw from
    /// separate streams of it.
    pub fn trial_seed(&self, t: usize) -> u64 {
        split_seed(self.seed, t as u64)
    }

    pub fn adaptive_config(&self) -> Result<AdaptiveConfig> {
        let mut c = AdaptiveConfig::default();
        if let Some(x) = self.overrides.cutoff {
            c.cutoff = x;
        }
        if let Some(x) = self.overrides.c_density {
            c.forest = ForestBudget::new(x)?;
        }
        if let Some(x) = self.overrides.restart_cap {
            c.restart_cap = x;
        }
        Ok(c)
    }

    pub fn two_round_config(&self) -> TwoRoundConfig {
        let mut c = TwoRoundConfig::for_profile(self.profile, self.n);
        if let Some(x) = self.overrides.c_gt {
            c.c_gt = x;
        }
        c
    }

    fn trace_path(&self, t: usize) -> Option<PathBuf> {
        let path = self.trace.as_ref()?;
        if self.trials == 1 {
            return Some(path.clone());
        }
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let name = match path.extension() {
            Some(ext) => format!("{stem}.{t}.{}", ext.to_string_lossy()),
            None => format!("{stem}.{t}"),
        };
        Some(path.with_file_name(name))
    }
}

/// Runs every trial, in parallel up to `cfg.jobs`, and writes the CSV if a
/// path is set. Reports come back in trial order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ReconstructionReport>> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let reports = pool.install(|| {
        (0..cfg.trials)
            .into_par_iter()
            .map(|t| run_trial(cfg, t))
            .collect::<Result<Vec<_>>>()
    })?;
    if let Some(path) = &cfg.csv {
        write_csv(&reports, path)?;
    }
    Ok(reports)
}

pub fn write_csv(reports: &[ReconstructionReport], path: &Path) -> Result<()> {
    emit_csv(reports, BufWriter::new(File::create(path)?))
}

/// Runs trial `t` of `cfg`.
pub fn run_trial(cfg: &ExperimentConfig, t: usize) -> Result<ReconstructionReport> {
    let seed = cfg.trial_seed(t);
    let spec = InstanceSpec::new(cfg.family, cfg.n, cfg.m, seed);
    let hidden = generate(&spec)?.into_hidden();
    let algo_seed = split_seed(seed, 1);
    let trace_path = cfg.trace_path(t);
    let mut o = CcOracle::with_options(hidden.clone(), oracle_mode(cfg.algo), None, trace_path.is_some());

    let start = Instant::now();
    let (edges, restarts) = run_algorithm(
        cfg.algo,
        &mut o,
        cfg.m,
        &cfg.adaptive_config()?,
        &cfg.two_round_config(),
        algo_seed,
    )?;
    let wall_ms = if cfg.timing { start.elapsed().as_millis() as u64 } else { 0 };

    if let Some(path) = trace_path {
        o.ledger().write_trace(BufWriter::new(File::create(path)?), cfg.trace_sets)?;
    }
    let ledger = o.ledger();
    Ok(ReconstructionReport {
        algo: cfg.algo,
        spec,
        trial: t,
        recovered_edges: edges.as_ref().map_or(0, Vec::len),
        queries: ledger.total_queries(),
        rounds: ledger.rounds(),
        success: edges.as_deref() == Some(hidden.edges()),
        restarts,
        wall_ms,
    })
}

/// The oracle mode `algo` runs against.
pub fn oracle_mode(algo: Algo) -> OracleMode {
    match algo {
        Algo::Adaptive | Algo::BinarySearch => OracleMode::Adaptive,
        Algo::TwoRound => OracleMode::Batched { rounds: 2 },
        Algo::Pairwise => OracleMode::Batched { rounds: 1 },
    }
}

/// Runs `algo` on a fresh oracle of mode [`oracle_mode`]. Returns the
/// edges, or `None` if the algorithm gave up, and the restart count.
pub fn run_algorithm(
    algo: Algo,
    o: &mut CcOracle,
    m: usize,
    adaptive: &AdaptiveConfig,
    two_round: &TwoRoundConfig,
    seed: u64,
) -> Result<(Option<Vec<Edge>>, u32)> {
    Ok(match algo {
        Algo::Adaptive => {
            let out = adaptive_reconstruct(o, m, adaptive, seed)?;
            (out.edges, out.restarts)
        }
        Algo::BinarySearch => {
            let all = VertexSet::full(o.vertex_count());
            (Some(binary_search_reconstruct(o, &all, &KnownEdges::new())?), 0)
        }
        Algo::TwoRound => (two_round_reconstruct(o, m, two_round, seed)?.edges, 0),
        Algo::Pairwise => (Some(pairwise_reconstruct(o)?), 0),
    })
}

/// Queries every pair in a single batch.
pub fn pairwise_reconstruct(o: &mut CcOracle) -> Result<Vec<Edge>> {
    let n = o.vertex_count();
    o.open_batch()?;
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((Edge::new(u, v), o.submit(&VertexSet::pair(u, v))?));
        }
    }
    let answers = o.close_batch()?;
    Ok(pairs
        .into_iter()
        .filter(|(_, t)| answers[t.index()] == 1)
        .map(|(e, _)| e)
        .collect())
}

/// Outcome of one lower-bound check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LowerBoundCheck {
    NonAdaptive {
        queries: usize,
        distinguished: usize,
    },
    Adaptive {
        queries: usize,
        mismatches: usize,
        probes: u64,
        two_in_core: usize,
    },
}

impl LowerBoundCheck {
    pub fn holds(&self) -> bool {
        match *self {
            LowerBoundCheck::NonAdaptive { queries, distinguished } => distinguished <= queries,
            LowerBoundCheck::Adaptive {
                mismatches,
                probes,
                two_in_core,
                ..
            } => mismatches == 0 && probes <= two_in_core as u64,
        }
    }
}

impl fmt::Display for LowerBoundCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerBoundCheck::NonAdaptive { queries, distinguished } => {
                write!(f, "queries={queries} distinguished={distinguished}")
            }
            LowerBoundCheck::Adaptive {
                queries,
                mismatches,
                probes,
                two_in_core,
            } => write!(
                f,
                "queries={queries} mismatches={mismatches} probes={probes} two_in_core={two_in_core}"
            ),
        }
    }
}

/// Random query family on `n` vertices against the two-path gadgets.
pub fn check_nonadaptive(n: usize, queries: usize, seed: u64) -> Result<LowerBoundCheck> {
    let mut rng = crate::rng::stream_rng(seed, 0);
    let q = random_query_family(n, queries, &mut rng);
    Ok(LowerBoundCheck::NonAdaptive {
        queries,
        distinguished: distinguishing_pairs(&q, n)?,
    })
}

/// Random queries against the array adapter on a clique of `n0` vertices
/// with a dummy vertex of degree `n0 / 2`, compared with direct evaluation.
pub fn check_adaptive(n0: usize, queries: usize, seed: u64) -> Result<LowerBoundCheck> {
    use rand::Rng;

    if n0 < 3 {
        return Err(Error::InvalidInput(format!("the clique needs n0 >= 3, got {n0}")));
    }
    let mut rng = crate::rng::stream_rng(seed, 0);
    let m_dum = n0 / 2;
    let m = n0 * (n0 - 1) / 2 - 1 + m_dum;
    let layout = crate::graph::CliqueLayout::sample(n0 + 1, m, &mut rng)?;
    let mut array = vec![true; layout.array_len()];
    let zero = rng.random_range(0..array.len());
    array[zero] = false;
    let mut adapter = ArraySearchAdapter::new(layout, array)?;
    let g: Graph = adapter.materialize();
    let n = g.n();
    let (mut mismatches, mut two_in_core) = (0, 0);
    for _ in 0..queries {
        let s: VertexSet = if rng.random_bool(0.5) {
            let k = rng.random_range(1..=4);
            rand::seq::index::sample(&mut rng, n, k).into_iter().collect()
        } else {
            (0..n).filter(|_| rng.random_bool(0.5)).collect()
        };
        let before = adapter.probes();
        let got = adapter.answer(&s)?;
        let in_core = s.iter().filter(|&v| v < n0).count();
        if in_core == 2 {
            two_in_core += 1;
        } else if adapter.probes() != before {
            // a probe outside the permitted case counts as a failure
            mismatches += 1;
        }
        if got != g.cc_count(&s)? {
            mismatches += 1;
        }
    }
    Ok(LowerBoundCheck::Adaptive {
        queries,
        mismatches,
        probes: adapter.probes(),
        two_in_core,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_report_per_trial() {
        let cfg = ExperimentConfig::new(Algo::BinarySearch, Family::Gnm, 20, 30, 5, 1);
        let reports = run_experiment(&cfg).unwrap();
        assert_eq!(reports.len(), 5);
        assert!(reports.iter().enumerate().all(|(i, r)| r.trial == i && r.success));
    }

    #[test]
    fn every_algorithm_recovers_a_small_graph() {
        for algo in Algo::ALL {
            let cfg = ExperimentConfig::new(algo, Family::Gnm, 16, 20, 2, 9);
            for r in run_experiment(&cfg).unwrap() {
                assert!(r.success, "{algo}");
                assert_eq!(r.recovered_edges, 20);
            }
        }
    }

    #[test]
    fn pairwise_uses_one_round_of_all_pairs() {
        let cfg = ExperimentConfig::new(Algo::Pairwise, Family::Star, 10, 4, 1, 0);
        let r = &run_experiment(&cfg).unwrap()[0];
        assert_eq!((r.queries, r.rounds), (45, 1));
    }

    #[test]
    fn infeasible_configs_fail_up_front() {
        let mut cfg = ExperimentConfig::new(Algo::Adaptive, Family::Forest, 10, 10, 1, 0);
        assert!(run_experiment(&cfg).is_err());
        cfg.m = 5;
        cfg.trials = 0;
        assert!(run_experiment(&cfg).is_err());
    }

    #[test]
    fn names_round_trip() {
        for a in Algo::ALL {
            assert_eq!(a.to_string().parse::<Algo>().unwrap(), a);
        }
        assert!("dfs".parse::<Algo>().is_err());
    }

    #[test]
    fn trace_paths_carry_the_trial() {
        let mut cfg = ExperimentConfig::new(Algo::Adaptive, Family::Gnm, 8, 4, 3, 0);
        cfg.trace = Some(PathBuf::from("out/q.txt"));
        assert_eq!(cfg.trace_path(2), Some(PathBuf::from("out/q.2.txt")));
        cfg.trials = 1;
        assert_eq!(cfg.trace_path(0), Some(PathBuf::from("out/q.txt")));
    }

    #[test]
    fn lower_bound_checks_hold() {
        let c = check_nonadaptive(16, 50, 1).unwrap();
        assert!(c.holds(), "{c}");
        let c = check_adaptive(8, 300, 2).unwrap();
        assert!(c.holds(), "{c}");
    }
}
