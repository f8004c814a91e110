use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sgap_cli::bounds::BoundsArgs;
use sgap_cli::dict::DictArgs;
use sgap_cli::experiment::ExperimentArgs;
use sgap_cli::{CliResult, EXIT_OK, EXIT_USAGE};

/// Rank bounds, uncertainty-principle thresholds and generic-signal
/// experiments for redundant dictionaries.
#[derive(Parser, Debug)]
#[command(name = "sgap", version)]
struct Cli {
    /// Worker threads for experiment trials (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build, save or inspect a dictionary.
    Dict(DictArgs),
    /// Tabulate gap thresholds over a parameter grid.
    Bounds(BoundsArgs),
    /// Run experiments from a config file or flags.
    Experiment(Box<ExperimentArgs>),
}

fn dispatch(cli: &Cli, command_line: Vec<String>) -> CliResult<u8> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| format!("--threads: {e}"))?;
    }
    match &cli.command {
        Command::Dict(args) => sgap_cli::dict::run(args).map(|_| EXIT_OK),
        Command::Bounds(args) => sgap_cli::bounds::run(args, command_line).map(|_| EXIT_OK),
        Command::Experiment(args) => sgap_cli::experiment::run(args, command_line),
    }
}

fn main() -> ExitCode {
    let command_line: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match dispatch(&cli, command_line) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("sgap: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
