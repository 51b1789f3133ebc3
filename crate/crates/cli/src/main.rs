mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use output::{Format, Outcome};

/// Exact exploration of acyclic cluster algebras and checks of their
/// structure theorems.
#[derive(Debug, Parser)]
#[command(name = "seedcheck", version)]
struct Cli {
    /// Quiver file: {"n": <int>, "matrix": [[...], ...]} with 0-indexed vertices.
    #[arg(long, global = true)]
    quiver: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = 8, value_parser = positive)]
    max_depth: usize,

    #[arg(long, global = true, default_value_t = 100_000, value_parser = positive)]
    max_seeds: usize,

    /// Largest number of terms allowed in one cluster variable.
    #[arg(long, global = true, default_value_t = 200_000, value_parser = positive)]
    max_terms: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Mutation-graph cache (newline-delimited JSON); read if present, written otherwise.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Worker threads for exploration.
    #[arg(long, global = true, value_parser = positive)]
    threads: Option<usize>,

    /// Include wall-clock timing in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply a sequence of mutations to the initial seed.
    Mutate {
        /// Comma-separated vertex indices, applied left to right.
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<usize>,
    },
    /// Explore the mutation graph and list its cluster variables.
    Explore,
    /// Run theorem checks over the explored mutation graph.
    Verify {
        #[arg(value_enum)]
        check: Check,
    },
    /// Positive roots and Coxeter matrix of a Dynkin quiver.
    Roots,
    /// Caldero-Chapoton variable of the indecomposable with a given dimension vector.
    Cc {
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        root: Vec<i64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Denominators,
    Injectivity,
    ExchangeUniqueness,
    Tilting,
    Cc,
    All,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be strictly positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
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
    let format = cli.format;
    match commands::run(&cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            ExitCode::from(report.exit_code())
        }
        Err(outcome) => {
            let Outcome { code, message } = outcome;
            eprintln!("seedcheck: {message}");
            ExitCode::from(code)
        }
    }
}
