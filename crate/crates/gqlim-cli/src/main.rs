//! `gqlim`: free-electron–photon coupling limits at the command line.
//!
//! Exit codes: 0 on success, 2 for invalid input (argument parsing included),
//! 3 for numerical failures such as truncation leaks.

mod args;
mod commands;
mod config;

use clap::Parser;

fn main() {
    let cli = args::Cli::parse();
    let result = match cli.command {
        args::Command::Limit(a) => commands::cmd_limit(a),
        args::Command::Sweep(a) => commands::cmd_sweep(a),
        args::Command::Optimal(a) => commands::cmd_optimal(a),
        args::Command::Eels(a) => commands::cmd_eels(a),
        args::Command::Scatter(a) => commands::cmd_scatter(a),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
