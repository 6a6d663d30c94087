//! `eigenbox` command-line interface.
//!
//! Exit codes: 0 when nothing applicable is violated, 2 on a violation or a
//! failed replay, 1 on usage, input or numerical errors.

mod commands;
mod domain;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use commands::{LemmaArg, Outcome, Shape, Suite, SweepConfig};
use table::Format;

/// Environment variable capping worker threads; 0 or unset means automatic.
const THREADS_ENV: &str = "EIGENBOX_THREADS";

#[derive(Debug, Parser)]
#[command(name = "eigenbox", version, about = "Dirichlet eigenvalue inequalities on convex domains")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Table of dimensional constants.
    Constants {
        #[arg(long, default_value_t = 1)]
        dim: usize,
        /// Print every dimension from --dim to this one.
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Leading Dirichlet eigenvalues of a box.
    BoxSpectrum {
        /// Comma-separated half-widths.
        #[arg(long, conflicts_with = "sides", required_unless_present = "sides")]
        half_widths: Option<String>,
        /// Comma-separated side lengths.
        #[arg(long)]
        sides: Option<String>,
        #[arg(long)]
        count: usize,
    },
    /// Evaluate inequality suites on one domain.
    Verify {
        /// builtin:square|disk64|right-triangle, box:s1,..,sn or a polygon JSON file.
        #[arg(long)]
        domain: String,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        l: usize,
        /// Comma-separated finite-difference mesh widths for polygons.
        #[arg(long)]
        mesh: Option<String>,
    },
    /// Margin statistics over seeded random domains.
    Sweep {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = Shape::Box)]
        shape: Shape,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Star-shaped nonconvex polygons instead of convex ones.
        #[arg(long)]
        nonconvex: bool,
        /// Largest eigenvalue index checked; defaults to 30 for boxes, 6 for polygons.
        #[arg(long)]
        max_k: Option<usize>,
    },
    /// The family [0,k]x[0,1] against the unconditional lower bound.
    Counterexample {
        #[arg(long)]
        k: usize,
    },
    /// Replay a packing argument on a box.
    Replay {
        /// Comma-separated half-widths.
        #[arg(long = "box")]
        half_widths: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        l: usize,
        #[arg(long, value_enum)]
        lemma: LemmaArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn configure_threads() -> Result<()> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .with_context(|| format!("{THREADS_ENV}={v:?} is not a thread count"))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring the thread pool")?;
    Ok(())
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Constants { dim, max_dim } => commands::cmd_constants(dim, max_dim),
        Command::BoxSpectrum {
            half_widths,
            sides,
            count,
        } => commands::cmd_box_spectrum(half_widths.as_deref(), sides.as_deref(), count),
        Command::Verify {
            domain,
            suite,
            k,
            l,
            mesh,
        } => commands::cmd_verify(&domain, suite, k, l, mesh.as_deref()),
        Command::Sweep {
            trials,
            dim,
            shape,
            seed,
            nonconvex,
            max_k,
        } => commands::cmd_sweep(SweepConfig {
            trials,
            dim,
            shape,
            seed,
            nonconvex,
            max_k: max_k.unwrap_or(match shape {
                Shape::Box => 30,
                Shape::Polygon => 6,
            }),
        }),
        Command::Counterexample { k } => commands::cmd_counterexample(k),
        Command::Replay {
            half_widths,
            k,
            l,
            lemma,
            seed,
        } => commands::cmd_replay(&half_widths, k, l, lemma, seed),
    }
}

fn run(cli: Cli) -> Result<bool> {
    configure_threads()?;
    let outcome = dispatch(cli.command)?;
    let bytes = table::render(&outcome.tables, cli.format)?;
    match &cli.output {
        Some(path) => std::fs::write(path, &bytes).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    Ok(outcome.violated)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
