use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ccquery::graph::Family;
use ccquery::lab::{self, Algo, ExperimentConfig, Overrides};
use ccquery::two_round::Profile;

#[derive(Parser)]
#[command(name = "ccquery", version, about = "Reconstruct hidden graphs from component-count queries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run reconstruction trials and report query counts as CSV.
    Run(RunArgs),
    /// Check the lower-bound instance families.
    Lbcheck(LbArgs),
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long)]
    algo: String,
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "practical")]
    profile: String,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write the query trace here.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// List set members in the trace.
    #[arg(long)]
    trace_sets: bool,
    /// Fill the wall_ms column.
    #[arg(long)]
    timing: bool,
    /// Edge counts below this skip the level machinery.
    #[arg(long)]
    cutoff: Option<usize>,
    #[arg(long)]
    c_density: Option<f64>,
    #[arg(long)]
    restart_cap: Option<u32>,
    #[arg(long)]
    c_gt: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Nonadaptive,
    Adaptive,
}

#[derive(clap::Args)]
struct LbArgs {
    #[arg(long, value_enum)]
    which: Which,
    /// Vertex count, or the clique size for the adaptive check.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1000)]
    queries: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn run(args: RunArgs) -> ccquery::Result<()> {
    let family: Family = args.family.parse().map_err(ccquery::Error::InvalidInput)?;
    let mut cfg = ExperimentConfig::new(args.algo.parse::<Algo>()?, family, args.n, args.m, args.trials, args.seed);
    cfg.profile = args.profile.parse::<Profile>()?;
    cfg.jobs = args.jobs;
    cfg.csv = args.csv;
    cfg.trace = args.trace;
    cfg.trace_sets = args.trace_sets;
    cfg.timing = args.timing;
    cfg.overrides = Overrides {
        cutoff: args.cutoff,
        c_density: args.c_density,
        restart_cap: args.restart_cap,
        c_gt: args.c_gt,
    };
    let reports = lab::run_experiment(&cfg)?;
    if cfg.csv.is_none() {
        lab::emit_csv(&reports, io::stdout().lock())?;
    }
    Ok(())
}

fn lbcheck(args: LbArgs) -> ccquery::Result<bool> {
    let check = match args.which {
        Which::Nonadaptive => lab::check_nonadaptive(args.n, args.queries, args.seed)?,
        Which::Adaptive => lab::check_adaptive(args.n, args.queries, args.seed)?,
    };
    let holds = check.holds();
    writeln!(io::stdout(), "{check} holds={}", u8::from(holds))?;
    Ok(holds)
}

fn main() -> ExitCode {
    let result = match Cli::parse().command {
        Command::Run(a) => run(a).map(|()| true),
        Command::Lbcheck(a) => lbcheck(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
