//! `postlie`: check algebra files, print sub-adjacent tables, run the
//! free-envelope identity suite and the coefficient tables.
//!
//! Exit status: 0 when every check passes, 1 on a violated identity,
//! 2 on unreadable or invalid input.

mod commands;
mod file;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "postlie", version, about = "Restricted Lie and post-Lie structures over finite fields")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run check suites on an algebra file.
    Check {
        path: String,
        /// lie, restricted, postlie, trivially-restricted, restricted-postlie,
        /// subadjacent, derivations, rota-baxter, quasi-shuffle or all.
        #[arg(long, default_value = "all")]
        suite: Vec<String>,
    },
    /// Print the sub-adjacent bracket and p-map and check restrictedness.
    Subadjacent { path: String },
    /// Identities in the free post-Lie envelope, p ∈ {2, 3, 5}.
    FreeVerify { p: u32 },
    /// C values by composition, Friedrich sums and hook forms, p ≤ 11.
    Coeffs { p: u32 },
    /// Built-in example algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    /// Write the algebra file of an entry.
    Build {
        name: String,
        /// Comma-separated integer parameters, e.g. 1,0,2.
        #[arg(default_value = "", allow_hyphen_values = true)]
        params: String,
        #[arg(long)]
        out: Option<String>,
    },
}

/// Outcome of a command: a violation (1) or bad input (2).
pub enum Failure {
    Violation,
    Input(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = commands::Opts { json: cli.json, seed: cli.seed };
    let result = match cli.command {
        Command::Check { path, suite } => commands::check(&opts, &path, &suite),
        Command::Subadjacent { path } => commands::subadjacent(&opts, &path),
        Command::FreeVerify { p } => commands::free_verify(&opts, p),
        Command::Coeffs { p } => commands::coeffs(&opts, p),
        Command::Catalog { action: CatalogAction::List } => commands::catalog_list(&opts),
        Command::Catalog { action: CatalogAction::Build { name, params, out } } => {
            commands::catalog_build(&name, &params, out.as_deref())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
