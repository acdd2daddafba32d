// Copyright 2026 the Polarstroke Authors
// SPDX-License-Identifier: Apache-2.0

//! `polarstroke`: tessellate, dash and inspect stroked paths.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polarstroke::{CapStyle, JoinKind};

#[derive(Parser, Debug)]
#[command(name = "polarstroke", version, about = "Stroke tessellation by uniform tangent-angle stepping")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tessellate a stroked path into a quad document.
    Tess(StrokeArgs),
    /// Tessellate a dashed stroke.
    Dash(StrokeArgs),
    /// Print facet-angle statistics.
    Stats(StrokeArgs),
    /// Compare polar and uniform tessellations at equal quad counts.
    Compare(StrokeArgs),
    /// Probe the tessellation against the distance oracle.
    OracleCheck(StrokeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Svg,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum JoinArg {
    None,
    Bevel,
    Miter,
    MiterTruncate,
    MiterRevert,
    Triangular,
    Round,
}

impl From<JoinArg> for JoinKind {
    fn from(j: JoinArg) -> JoinKind {
        match j {
            JoinArg::None => JoinKind::None,
            JoinArg::Bevel => JoinKind::Bevel,
            JoinArg::Miter => JoinKind::Miter,
            JoinArg::MiterTruncate => JoinKind::MiterTruncate,
            JoinArg::MiterRevert => JoinKind::MiterRevert,
            JoinArg::Triangular => JoinKind::Triangular,
            JoinArg::Round => JoinKind::Round,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CapArg {
    #[value(alias = "butt")]
    None,
    Square,
    Round,
    Triangular,
}

impl From<CapArg> for CapStyle {
    fn from(c: CapArg) -> CapStyle {
        match c {
            CapArg::None => CapStyle::None,
            CapArg::Square => CapStyle::Square,
            CapArg::Round => CapStyle::Round,
            CapArg::Triangular => CapStyle::Triangular,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct StrokeArgs {
    /// Path-data file (`-` for stdin).
    #[arg(short, long)]
    input: PathBuf,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Maximum tangent step in degrees, in (0, 90].
    #[arg(long, default_value_t = 4.0)]
    q: f64,
    /// Stroke width.
    #[arg(long)]
    width: Option<f64>,
    #[arg(long, value_enum)]
    join: Option<JoinArg>,
    #[arg(long, value_enum)]
    cap: Option<CapArg>,
    #[arg(long)]
    miter_limit: Option<f64>,
    /// Dash lengths, comma separated.
    #[arg(long, value_delimiter = ',')]
    dash: Option<Vec<f64>>,
    #[arg(long)]
    dash_offset: Option<f64>,
    /// JSON style sidecar; flags given on the command line override it.
    #[arg(long)]
    style: Option<PathBuf>,
    /// Seed for randomized probes.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Probe points per class for oracle-check.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("POLARSTROKE_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| anyhow::anyhow!("POLARSTROKE_THREADS must be a positive integer"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::Tess(a) => commands::tess(&a, false),
        Command::Dash(a) => commands::tess(&a, true),
        Command::Stats(a) => commands::stats(&a),
        Command::Compare(a) => commands::compare(&a),
        Command::OracleCheck(a) => commands::oracle_check(&a),
    };
    match result {
        Ok(commands::Outcome::Pass) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
