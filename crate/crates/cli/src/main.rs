//! `spatemp`: decide, validate and inspect interval TBoxes over spatial domains.

mod output;

use std::io::Read;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use spatemp::reasoner::{decide_with, SearchOptions};
use spatemp::tbox::{parse_tbox, validate, TBox};
use spatemp::ReasonerError;

#[derive(Parser)]
#[command(name = "spatemp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a TBox is satisfiable.
    Check {
        /// TBox file, or `-` for standard input.
        input: String,
        /// Print a model when the TBox is satisfiable.
        #[arg(long)]
        witness: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Log every search step.
        #[arg(long)]
        trace: bool,
        /// Shuffle the search order with this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Report well-formedness problems in a TBox.
    Validate {
        /// TBox file, or `-` for standard input.
        input: String,
    },
    /// Print the Allen-to-endpoint translation table and its errata.
    DeriveTables,
}

const SAT: u8 = 0;
const UNSAT: u8 = 1;
const FAILURE: u8 = 2;

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("cannot read standard input")?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))
    }
}

fn load(path: &str) -> Result<TBox> {
    let text = read_input(path)?;
    parse_tbox(&text).map_err(|e| anyhow::anyhow!("{path}:{e}"))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check {
            input,
            witness,
            format,
            trace,
            seed,
        } => {
            let t = load(&input)?;
            let opts = SearchOptions { seed, trace };
            let verdict = match decide_with(&t, &opts) {
                Ok(v) => v,
                Err(ReasonerError::Invalid(diagnostics)) => {
                    for d in diagnostics {
                        eprintln!("{input}: {d}");
                    }
                    return Ok(FAILURE);
                }
            };
            print!("{}", output::report(&t, &verdict, witness, format)?);
            Ok(if verdict.sat { SAT } else { UNSAT })
        }
        Command::Validate { input } => {
            let t = load(&input)?;
            let diagnostics = validate(&t);
            if diagnostics.is_empty() {
                println!("ok: {} axioms, domain {}", t.axioms.len(), t.domain);
                return Ok(SAT);
            }
            for d in &diagnostics {
                eprintln!("{input}: {d}");
            }
            Ok(FAILURE)
        }
        Command::DeriveTables => {
            print!("{}", output::translation_table());
            Ok(SAT)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(FAILURE)
        }
    }
}
