use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::graph::InstanceSpec;
use crate::Result;

use super::Algo;

pub const CSV_HEADER: [&str; 11] = [
    "algo", "family", "n", "m", "trial", "seed", "queries", "rounds", "success", "restarts", "wall_ms",
];

/// Outcome of one trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructionReport {
    pub algo: Algo,
    pub spec: InstanceSpec,
    pub trial: usize,
    /// Edges returned by the algorithm, 0 when it gave up.
    pub recovered_edges: usize,
    pub queries: u64,
    pub rounds: u64,
    /// The output equals the hidden edge set.
    pub success: bool,
    pub restarts: u32,
    pub wall_ms: u64,
}

/// One CSV line, with booleans as 0/1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub algo: String,
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub trial: usize,
    pub seed: u64,
    pub queries: u64,
    pub rounds: u64,
    pub success: u8,
    pub restarts: u32,
    pub wall_ms: u64,
}

impl From<&ReconstructionReport> for CsvRow {
    fn from(r: &ReconstructionReport) -> Self {
        Self {
            algo: r.algo.to_string(),
            family: r.spec.family.to_string(),
            n: r.spec.n,
            m: r.spec.m,
            trial: r.trial,
            seed: r.spec.seed,
            queries: r.queries,
            rounds: r.rounds,
            success: u8::from(r.success),
            restarts: r.restarts,
            wall_ms: r.wall_ms,
        }
    }
}

/// Writes the header and one row per report, in the given order.
pub fn emit_csv<W: Write>(reports: &[ReconstructionReport], w: W) -> Result<()> {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    out.write_record(CSV_HEADER)?;
    for r in reports {
        out.serialize(CsvRow::from(r))?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(r: R) -> Result<Vec<CsvRow>> {
    let mut rows = Vec::new();
    for row in csv::Reader::from_reader(r).deserialize() {
        rows.push(row?);
    }
    Ok(rows)
}
