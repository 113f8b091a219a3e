use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pcoact::{execute, Command, Overrides};

/// Verify, globalize and compare partial coactions of finite-dimensional C*-bialgebras.
#[derive(Parser)]
#[command(name = "pcoact", version)]
struct Cli {
    /// Relative tolerance for every numerical check.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for the block decompositions.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest accepted group order (default 4 for bernoulli, 6 otherwise).
    #[arg(long = "cap-group-order", global = true)]
    cap_group_order: Option<usize>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Check the axioms and optional properties of a partial coaction.
    Verify { config: String },
    /// Build the globalization and compare it with the orbit construction.
    Globalize { config: String },
    /// Build the partial Bernoulli shift of a group (preset name or group JSON).
    Bernoulli {
        group: String,
        /// A coaction config to receive the universal map.
        #[arg(long)]
        target: Option<String>,
    },
    /// Round-trip a coaction of C(G) through its disconnected partial action.
    Correspond { config: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let over = Overrides { tol: cli.tol, seed: cli.seed, cap_group_order: cli.cap_group_order };
    let command = match cli.command {
        Sub::Verify { config } => Command::Verify { config },
        Sub::Globalize { config } => Command::Globalize { config },
        Sub::Bernoulli { group, target } => Command::Bernoulli { group, target },
        Sub::Correspond { config } => Command::Correspond { config },
    };
    match execute(&command, over) {
        Ok(report) => {
            // A closed pipe downstream is not an error of the run.
            let _ = writeln!(std::io::stdout().lock(), "{}", report.to_json());
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("pcoact: {e}");
            ExitCode::from(2)
        }
    }
}
