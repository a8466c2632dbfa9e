use std::process::ExitCode;

use clap::{Parser, Subcommand};

use coexsim::commands::{execute, CliError, Command};
use coexsim::config::{parse_config, Flags};

/// 28 GHz FSS earth-station to 5G UE interference simulator.
#[derive(Parser)]
#[command(name = "coexsim", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// SINR against distance as CSV or SVG
    Sweep(Flags),
    /// Minimum separation distance for every class and lobe
    Separation(Flags),
    /// Print the ES EIRP density table
    EirpTable(Flags),
}

fn run(sub: Sub) -> Result<(), CliError> {
    let (command, flags) = match sub {
        Sub::Sweep(f) => (Command::Sweep, f),
        Sub::Separation(f) => (Command::Separation, f),
        Sub::EirpTable(f) => (Command::EirpTable, f),
    };
    let text = match &flags.config {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|source| CliError::Read { path: path.clone(), source })?,
        None => String::new(),
    };
    let config = parse_config(&text, &flags)?;
    execute(command, &config, &mut std::io::stdout().lock())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
