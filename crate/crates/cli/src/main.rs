//! `chowdeg`: evaluate monomials, cross-check them, export trees, sweep
//! identities and time the pipeline.

mod bench;
mod eval;
mod export;
mod identities;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "chowdeg",
    version,
    about = "Intersection degrees of boundary-divisor monomials on M_{0,n}"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one monomial per line from files or stdin.
    Eval(eval::EvalArgs),
    /// Check the multinomial identities over a grid of instances.
    Identities(identities::IdentityArgs),
    /// Time the evaluation stages on generated inputs; prints CSV.
    Bench(bench::BenchArgs),
    /// Print the loaded tree (or its redundancy forest) of a monomial.
    ExportTree(export::ExportArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval(a) => eval::run(a),
        Command::Identities(a) => identities::run(a),
        Command::Bench(a) => bench::run(a),
        Command::ExportTree(a) => export::run(a),
    }
}
