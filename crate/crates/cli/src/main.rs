//! `flatlab`: build and analyze translation surfaces from the command line.
//!
//! Every subcommand prints JSON with sorted keys (CSV for `saddles`). Exit
//! status is 0 on success, 1 when a verified statement fails, 2 on usage or
//! input errors.

mod commands;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "flatlab", version, about = "Exact computations on translation surfaces")]
struct Cli {
    /// Worker threads for direction sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a surface and write it as JSON.
    Build(BuildArgs),
    /// Finiteness report for a surface file, a stack family or a named example.
    Analyze(AnalyzeArgs),
    /// Saddle connections up to a length, as CSV.
    Saddles {
        surface: PathBuf,
        #[arg(long)]
        length: String,
    },
    /// Maximal cylinders in a direction.
    Cylinders {
        surface: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
    },
    /// Core holonomies of cylinders with a given area.
    Vset {
        surface: PathBuf,
        #[arg(long)]
        area: String,
        #[arg(long)]
        length: String,
        /// Attach a gap certificate to every vector.
        #[arg(long)]
        gap: bool,
    },
    /// Veech-group membership of a matrix.
    Veech {
        surface: PathBuf,
        /// Row-major entries, e.g. "1,1;0,1".
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Cylinder multi-twist fixing a periodic direction.
    Twist {
        surface: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
    },
    /// Rotation-orbit gaps for the rhombus with acute angle `--angle`.
    RhombusGap {
        #[arg(long, allow_hyphen_values = true)]
        angle: f64,
        #[arg(long = "K", alias = "k")]
        k: u64,
    },
    /// Cylinder-angle sweep and gap certificates on a preset.
    VerifyLemmas {
        #[arg(long)]
        preset: String,
        #[arg(long, default_value_t = 5)]
        max_slope: i64,
        /// Length bound for the gap certificates (default: `max-slope`).
        #[arg(long)]
        length: Option<String>,
    },
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long, conflicts_with_all = ["stack", "rhombus"])]
    preset: Option<String>,
    /// Stack of boxes: `--stack h=<spec> w=<spec>`.
    #[arg(long, num_args = 2, value_names = ["H", "W"], requires = "levels")]
    stack: Option<Vec<String>>,
    #[arg(long)]
    levels: Option<usize>,
    /// Unfold the rhombus with this acute angle (radians).
    #[arg(long, conflicts_with = "stack")]
    rhombus: Option<f64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write the polygon layout as SVG.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    surface: Option<PathBuf>,
    #[arg(long, num_args = 2, value_names = ["H", "W"], conflicts_with = "surface")]
    stack: Option<Vec<String>>,
    /// One of the named examples of the verdict table.
    #[arg(long, conflicts_with_all = ["surface", "stack"])]
    example: Option<String>,
}

/// Why a run failed.
#[derive(Debug)]
pub enum Failure {
    Usage(anyhow::Error),
    Verdict(String),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict(msg)) => {
            eprintln!("failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
