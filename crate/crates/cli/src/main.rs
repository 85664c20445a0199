#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod analytic;
mod error;
mod manifest;
mod output;
mod plot;
mod simulate;
mod verify;

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "ldpc-exponent", version, about = "Error-exponent bounds for expurgated regular LDPC ensembles on the BEC")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "LDPC_EXPONENT_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Upper bound on the error exponent over a delta grid.
    Exponent(analytic::CurveArgs),
    /// Confidence level of the bound over a delta grid.
    Confidence(analytic::CurveArgs),
    /// Expurgation threshold alpha0 of a (c, d) ensemble.
    Alpha0(analytic::Alpha0Args),
    /// Block error probability of sampled codes.
    Simulate(simulate::SimulateArgs),
    /// Run the oracle suites.
    Verify(verify::VerifyArgs),
    /// Render columns of a CSV produced by this tool as SVG.
    Plot(plot::PlotArgs),
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("thread count must be positive".into()));
        }
        ldpc_exponent_core::par::set_threads(n);
    }
    match cli.command {
        Command::Exponent(a) => analytic::exponent(&a),
        Command::Confidence(a) => analytic::confidence(&a),
        Command::Alpha0(a) => analytic::alpha0(&a),
        Command::Simulate(a) => simulate::run(&a),
        Command::Verify(a) => verify::run(&a),
        Command::Plot(a) => plot::run(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
