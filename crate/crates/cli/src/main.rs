use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use cohere::commands::{self, Outcome, EXIT_INPUT};
use cohere::document::{parse_members, AssessmentDocument, Mode};
use cohere_core::crq::ConjunctionTerm;
use cohere_core::rational::{self, Rational};
use serde::Serialize;

/// Coherence checking for conjunctions of conditional events.
///
/// Exit status: 0 coherent, 1 incoherent, 2 input error.
#[derive(Debug, Parser)]
#[command(name = "cohere", version)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether the assessment in a document is coherent.
    Check {
        document: PathBuf,
        /// auto, lp or closed-form; overrides the document's option.
        #[arg(long, value_parser = parse_mode)]
        mode: Option<Mode>,
        /// Also run the linear-programming engine when a closed form answered.
        #[arg(long)]
        verify_lp: bool,
    },
    /// Interval of coherent previsions for an unassessed conjunction.
    Extend {
        document: PathBuf,
        /// 0-based member indices of the target conjunction, e.g. `0,1`.
        #[arg(long, value_parser = parse_members)]
        target: ConjunctionTerm,
        #[arg(long, value_parser = parse_mode)]
        mode: Option<Mode>,
        #[arg(long)]
        verify_lp: bool,
    },
    /// Frank parameter with z = T_lambda(x, y).
    Lambda {
        #[arg(long, value_parser = parse_rational)]
        x: Rational,
        #[arg(long, value_parser = parse_rational)]
        y: Rational,
        #[arg(long, value_parser = parse_rational)]
        z: Rational,
    },
    /// Value of a conjunction on every constituent.
    Table {
        document: PathBuf,
        /// 0-based member indices; defaults to all conditionals.
        #[arg(long, value_parser = parse_members)]
        term: Option<ConjunctionTerm>,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: cohere::document::DocumentError| e.to_string())
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    let r = rational::parse(s).map_err(|e| e.to_string())?;
    if !rational::in_unit_interval(&r) {
        return Err(format!("{s} is outside [0, 1]"));
    }
    Ok(r)
}

fn emit<R: Serialize>(json: bool, outcome: Outcome<R>, text: impl Fn(&R) -> String) -> i32 {
    if json {
        println!("{}", serde_json::to_string_pretty(&outcome.report).expect("reports serialise"));
    } else {
        print!("{}", text(&outcome.report));
    }
    outcome.code
}

fn load(path: &Path) -> Result<(cohere_core::AssessmentProblem, Mode)> {
    let doc = AssessmentDocument::read(path)?;
    let problem = doc.to_problem().with_context(|| format!("in {}", path.display()))?;
    Ok((problem, doc.options.mode))
}

fn run(cli: Cli) -> Result<i32> {
    let json = cli.json;
    Ok(match cli.command {
        Command::Check { document, mode, verify_lp } => {
            let (problem, doc_mode) = load(&document)?;
            let outcome = commands::check(&problem, mode.unwrap_or(doc_mode), verify_lp)?;
            emit(json, outcome, |r| r.text())
        }
        Command::Extend { document, target, mode, verify_lp } => {
            let (problem, doc_mode) = load(&document)?;
            let outcome = commands::extend(&problem, &target, mode.unwrap_or(doc_mode), verify_lp)?;
            emit(json, outcome, |r| r.text())
        }
        Command::Lambda { x, y, z } => emit(json, commands::lambda(&x, &y, &z), |r| r.text()),
        Command::Table { document, term } => {
            let (problem, _) = load(&document)?;
            let term = match term {
                Some(t) => t,
                None => ConjunctionTerm::new(0..problem.conditionals().len())?,
            };
            emit(json, commands::table(&problem, &term)?, |r| r.text())
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
