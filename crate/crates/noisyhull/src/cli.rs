//! Command-line front end. Exit codes: 0 on completion, 2 on configuration
//! or input errors, 3 when a failure sweep exhausted its retries, 1 for I/O.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::experiment::{
    run_calibration_dump, run_hull2d, run_hull3d_bf, run_sweep_demo, run_walk_bench, write_calibration, write_records,
    ExperimentConfig, FaultKind, Fixture3, Format,
};
use crate::hull2d::noisy_upper_hull;
use crate::hull3d::bf_halfspace_intersection;
use crate::io::{parse_halfspaces, parse_points};
use crate::noise::{NoiseModel, DEFAULT_REPETITION_CAP};
use crate::toolkit::FailTarget;
use crate::walk::DEFAULT_BUDGET_CONSTANT;

#[derive(Debug, Parser)]
#[command(
    name = "noisyhull",
    version,
    about = "Convex hull experiments under noisy primitives"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Csv,
    Jsonl,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Problem sizes, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "256")]
    pub n: Vec<usize>,
    /// Error probabilities in [0, 1/2), comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.2")]
    pub p: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    /// Base seed; trial i runs with seed + i.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Per-operation confidence exponent.
    #[arg(long, default_value_t = 5.0)]
    pub c: f64,
    /// Per-subproblem confidence exponent.
    #[arg(long, default_value_t = 3.0)]
    pub cprime: f64,
    /// Walk budget constant A.
    #[arg(long, default_value_t = DEFAULT_BUDGET_CONSTANT)]
    pub budget_constant: u64,
    #[arg(long, default_value_t = crate::sweep::DEFAULT_RETRIES)]
    pub retries: u32,
    #[arg(long, default_value_t = DEFAULT_REPETITION_CAP)]
    pub repetition_cap: u64,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    pub format: OutFormat,
}

impl Common {
    fn config(&self) -> ExperimentConfig {
        ExperimentConfig {
            ns: self.n.clone(),
            ps: self.p.clone(),
            trials: self.trials,
            seed: self.seed,
            c: self.c,
            c_prime: self.cprime,
            budget_constant: self.budget_constant,
            retries: self.retries,
            repetition_cap: self.repetition_cap,
        }
    }

    fn format(&self) -> Format {
        match self.format {
            OutFormat::Csv => Format::Csv,
            OutFormat::Jsonl => Format::Jsonl,
        }
    }

    fn writer(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout())),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FixtureArg {
    Random,
    Tetrahedron,
    Cube,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    CorruptHullPoint,
    FlipStatus,
    MovePointOutside,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Noisy 2D upper hull trials on random points, or one run on --input.
    Hull2d {
        #[command(flatten)]
        common: Common,
        /// Point file ("x y" per line); writes the hull as JSON.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Brute-force 3D halfspace intersection trials, or one run on --input.
    #[command(name = "hull3d-bf")]
    Hull3dBf {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = FixtureArg::Random)]
        fixture: FixtureArg,
        /// Halfspace file ("a b c d" per line); writes the polytope as JSON.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Pushdown-walk search in n sorted keys.
    WalkBench {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1e-3)]
        epsilon: f64,
    },
    /// Repetition counts with their exact binomial tails.
    Calibrate {
        #[command(flatten)]
        common: Common,
        /// Confidence exponents to tabulate, comma separated; defaults to --c.
        #[arg(long, value_delimiter = ',')]
        cs: Vec<f64>,
    },
    /// Sweep verification of exact hulls with optional injected faults.
    SweepDemo {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, value_delimiter = ',')]
        fault: Vec<FaultArg>,
    },
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Hull2d { common, input } => {
            let cfg = common.config();
            if let Some(path) = input {
                cfg.validate()?;
                let pts = parse_points(&read(&path)?)?;
                let model = NoiseModel::new(cfg.ps[0], cfg.seed)?.with_repetition_cap(cfg.repetition_cap);
                let (res, _) = noisy_upper_hull(&mut Exec::new(&model), &pts, &cfg.hull2d())?;
                let mut w = common.writer()?;
                writeln!(w, "{}", res.to_json())?;
                w.flush()?;
                return Ok(());
            }
            let recs = run_hull2d(&cfg)?;
            write_records(common.writer()?, &recs, common.format())
        }
        Command::Hull3dBf { common, fixture, input } => {
            let cfg = common.config();
            if let Some(path) = input {
                cfg.validate()?;
                let hs = parse_halfspaces(&read(&path)?)?;
                let model = NoiseModel::new(cfg.ps[0], cfg.seed)?.with_repetition_cap(cfg.repetition_cap);
                let t = FailTarget::at_least(hs.len() as u64, cfg.c);
                let poly = bf_halfspace_intersection(&mut Exec::new(&model), &hs, &t)?;
                let mut w = common.writer()?;
                writeln!(w, "{}", poly.to_json())?;
                w.flush()?;
                return Ok(());
            }
            let fx = match fixture {
                FixtureArg::Random => Fixture3::Random,
                FixtureArg::Tetrahedron => Fixture3::Tetrahedron,
                FixtureArg::Cube => Fixture3::Cube,
            };
            let recs = run_hull3d_bf(&cfg, fx)?;
            write_records(common.writer()?, &recs, common.format())
        }
        Command::WalkBench { common, epsilon } => {
            let recs = run_walk_bench(&common.config(), epsilon)?;
            write_records(common.writer()?, &recs, common.format())
        }
        Command::Calibrate { common, cs } => {
            let cs = if cs.is_empty() { vec![common.c] } else { cs };
            let rows = run_calibration_dump(&common.config(), &cs)?;
            write_calibration(common.writer()?, &rows, common.format())
        }
        Command::SweepDemo { common, fault } => {
            let kinds: Vec<FaultKind> = fault
                .iter()
                .map(|f| match f {
                    FaultArg::CorruptHullPoint => FaultKind::CorruptHullPoint,
                    FaultArg::FlipStatus => FaultKind::FlipStatus,
                    FaultArg::MovePointOutside => FaultKind::MovePointOutside,
                })
                .collect();
            let recs = run_sweep_demo(&common.config(), &kinds)?;
            write_records(common.writer()?, &recs, common.format())
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::Io(_) => 1,
        _ => 2,
    }
}

/// Parse `args`, run, and map the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("noisyhull: {e}");
            exit_code(&e)
        }
    }
}
