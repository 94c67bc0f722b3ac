//! `gravbec` command-line front end.

mod commands;
mod config;
mod error;
mod output;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches, Parser, Subcommand};

use config::{parse_config, Command};
use error::CliError;
pub(crate) use error::ConfigError;

#[derive(Debug, Parser)]
#[command(name = "gravbec", version, about = "Condensates with a laser-induced 1/r attraction")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Near-zone isotropy of the triad arrangement and the angular map.
    LaserCheck(RunArgs),
    /// Gaussian-ansatz radius and energies.
    Variational(RunArgs),
    /// Variational radius over a log grid of (ũ, s̃) plus trapless energy curves.
    PhaseDiagram(RunArgs),
    /// Mean-field ground state on a radial grid.
    GroundState(RunArgs),
    /// Self-bound Thomas-Fermi profile against the solver at two atom numbers.
    TfgCompare(RunArgs),
    /// Condensate depletion by pair production.
    LossRate(RunArgs),
    /// Validity conditions for physical parameters.
    RegimeCheck(RunArgs),
}

#[derive(Debug, clap::Args)]
struct RunArgs {
    /// Flat `key = value [unit]` file; `#` starts a comment.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory for report.txt and the CSV files.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Seed of the quasi-random direction sets.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print every resolved key with its unit before running.
    #[arg(long)]
    explain: bool,
}

impl Sub {
    fn split(self) -> (Command, RunArgs) {
        match self {
            Sub::LaserCheck(a) => (Command::LaserCheck, a),
            Sub::Variational(a) => (Command::Variational, a),
            Sub::PhaseDiagram(a) => (Command::PhaseDiagram, a),
            Sub::GroundState(a) => (Command::GroundState, a),
            Sub::TfgCompare(a) => (Command::TfgCompare, a),
            Sub::LossRate(a) => (Command::LossRate, a),
            Sub::RegimeCheck(a) => (Command::RegimeCheck, a),
        }
    }
}

fn execute(command: Command, args: RunArgs) -> Result<(), CliError> {
    let text = match &args.config {
        Some(path) => fs::read_to_string(path)?,
        None => String::new(),
    };
    let cfg = parse_config(&text, command, args.out, args.seed)?;
    let mut stdout = std::io::stdout().lock();
    if args.explain {
        write!(stdout, "{}", cfg.explain())?;
    }
    let artifacts = commands::run(&cfg)?;
    output::write_artifacts(&cfg, &artifacts)?;
    write!(stdout, "{}", artifacts.report.render(&cfg))?;
    Ok(())
}

fn main() -> ExitCode {
    let mut app = Cli::command();
    for c in Command::ALL {
        app = app.mut_subcommand(c.name(), |s| s.after_help(c.key_help()));
    }
    let cli = match Cli::from_arg_matches(&app.get_matches()) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let (command, args) = cli.command.split();
    match execute(command, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {command}: {e}");
            ExitCode::from(match e {
                CliError::Config(_) => 2,
                _ => 1,
            })
        }
    }
}
