//! `geproci`: builds the H4 configuration, reproduces its incidence tables
//! and coverings, and emits exact certificates as JSON.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or is
//! indeterminate, 2 on usage or I/O errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use h4geproci::HalfGridSubset;

#[derive(Parser)]
#[command(
    name = "geproci",
    version,
    about = "Exact certificates for the H4 configuration"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the full configuration to config.json.
    Build {
        #[arg(long, default_value = "config.json")]
        out: PathBuf,
    },
    /// Emit the plane or line incidence table and compare it with the reference.
    Incidences {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Emit::Table)]
        emit: Emit,
        /// Compare against this table instead of the embedded one.
        #[arg(long)]
        reference: Option<PathBuf>,
    },
    /// Enumerate the partitions of the 60 points into 12 five-point lines.
    Coverings {
        #[arg(long)]
        count_only: bool,
        #[arg(long, value_enum, default_value_t = Emit::Table)]
        emit: Emit,
        #[arg(long)]
        reference: Option<PathBuf>,
        /// Also write the coverings as JSON to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a certificate pipeline.
    Verify {
        #[command(subcommand)]
        target: Target,
    },
    /// Run everything and write a single report.
    Report {
        #[arg(long, default_value = "report.json")]
        out: PathBuf,
        /// Comma-separated seeds.
        #[arg(long, default_value = "1,2,3,4,5", value_delimiter = ',')]
        seeds: Vec<u64>,
    },
}

#[derive(Subcommand)]
enum Target {
    /// Certify that the 60 points project to a (6,10) complete intersection.
    Geproci {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of consecutive seeds to run, starting at --seed.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value = "geproci-cert.json")]
        out: PathBuf,
    },
    /// Certify that Z1 or Z2 is a (5,6) half-grid.
    Halfgrid {
        #[arg(long)]
        subset: HalfGridSubset,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "halfgrid-cert.json")]
        out: PathBuf,
    },
    /// Show that the 60 points are not a half-grid.
    NotHalfgrid {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "refutation.json")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Planes,
    Lines,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Table,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Build { out } => commands::build(&out),
        Command::Incidences {
            kind,
            emit,
            reference,
        } => commands::incidences(
            matches!(kind, Kind::Planes),
            emit == Emit::Json,
            reference.as_deref(),
        ),
        Command::Coverings {
            count_only,
            emit,
            reference,
            out,
        } => commands::coverings(
            count_only,
            emit == Emit::Json,
            reference.as_deref(),
            out.as_deref(),
        ),
        Command::Verify { target } => match target {
            Target::Geproci { seed, trials, out } => commands::verify_geproci(seed, trials, &out),
            Target::Halfgrid { subset, seed, out } => commands::verify_halfgrid(subset, seed, &out),
            Target::NotHalfgrid { seed, out } => commands::verify_not_halfgrid(seed, &out),
        },
        Command::Report { out, seeds } => commands::report(&out, &seeds),
    };
    match result {
        Ok(status) => ExitCode::from(status.exit_code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
