//! The subcommands. Each returns a serialisable report and an exit code.

use std::fmt::Write as _;

use cohere_core::coherence::{
    check_coherence, extension_interval, extension_interval_lp, CoherenceVerdict, Extension, ExtensionMethod,
    LevelOutcome,
};
use cohere_core::crq::{conjunction_value_table, Case, ConjunctionTerm};
use cohere_core::logic::{constituent_label, Tag};
use cohere_core::rational::{self, Rational};
use cohere_core::regions::{closed_form_extension, closed_form_verdict, Family};
use cohere_core::tnorm::{find_lambda, LambdaFit};
use cohere_core::AssessmentProblem;
use serde::Serialize;
use thiserror::Error;

use crate::document::Mode;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCOHERENT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("no closed form covers this family and set of terms")]
    NoClosedForm,
    #[error(transparent)]
    Core(#[from] cohere_core::Error),
}

/// A finished command: the report to print and the process exit code.
#[derive(Debug)]
pub struct Outcome<R> {
    pub report: R,
    pub code: i32,
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::TwoIndependent => "two-independent",
        Family::SameConsequent => "same-consequent",
        Family::SameConsequentDisjoint => "same-consequent-disjoint",
        Family::ThreeIndependent => "three-independent",
    }
}

fn term_labels(problem: &AssessmentProblem, rows: &[usize]) -> Vec<String> {
    rows.iter().map(|&r| problem.terms()[r].to_string()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Weight {
    pub constituent: String,
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub terms: Vec<String>,
    pub feasible: bool,
    /// Terms whose antecedents get zero mass on every solution.
    pub zero_mass: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionReport {
    pub terms: Vec<String>,
    /// Non-zero weights of a convex combination of the points `Q_h` equal to the assessment.
    pub weights: Vec<Weight>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub terms: Vec<String>,
    pub coefficients: Vec<String>,
    pub constant: String,
    /// `coefficients · M + constant`, negative; the same form is non-negative at every `Q_h`.
    pub value_at_assessment: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub coherent: bool,
    pub mode: Mode,
    pub closed_form_used: bool,
    pub family: Option<&'static str>,
    pub certificate: Option<Vec<SolutionReport>>,
    pub witness: Option<WitnessReport>,
    pub recursion_trace: Vec<LevelReport>,
    pub lp_agrees: Option<bool>,
}

impl CheckReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        let verdict = if self.coherent { "coherent" } else { "incoherent" };
        let how = match self.family {
            Some(f) if self.closed_form_used => format!("closed form, {f}"),
            _ => "linear programming".to_owned(),
        };
        let _ = writeln!(out, "{verdict} ({how})");
        for (k, level) in self.recursion_trace.iter().enumerate() {
            let state = if level.feasible { "solvable" } else { "not solvable" };
            let _ = write!(out, "  level {k}: {} {state}", level.terms.join(", "));
            if !level.zero_mass.is_empty() {
                let _ = write!(out, "; zero antecedent mass: {}", level.zero_mass.join(", "));
            }
            out.push('\n');
        }
        if let Some(w) = &self.witness {
            let terms: Vec<String> =
                w.terms.iter().zip(&w.coefficients).map(|(t, a)| format!("({a})*P[{t}]")).collect();
            let _ = writeln!(
                out,
                "  separating inequality: {} + {} >= 0, violated with value {}",
                terms.join(" + "),
                w.constant,
                w.value_at_assessment
            );
        }
        if let Some(agrees) = self.lp_agrees {
            let _ = writeln!(out, "  linear programming {}", if agrees { "agrees" } else { "DISAGREES" });
        }
        out
    }
}

fn lp_report(
    problem: &AssessmentProblem,
    verdict: &CoherenceVerdict,
) -> (Vec<LevelReport>, Option<Vec<SolutionReport>>, Option<WitnessReport>) {
    let table = problem.table();
    let mut trace = Vec::new();
    let mut solutions = Vec::new();
    let mut witness = None;
    for level in &verdict.levels {
        let terms = term_labels(problem, &level.system.rows);
        match &level.outcome {
            LevelOutcome::Solved { lambda, zero_mass } => {
                trace.push(LevelReport {
                    terms: terms.clone(),
                    feasible: true,
                    zero_mass: term_labels(problem, zero_mass),
                });
                let weights = level
                    .system
                    .columns
                    .iter()
                    .zip(lambda)
                    .filter(|(_, l)| **l != rational::int(0))
                    .map(|(&h, l)| Weight {
                        constituent: constituent_label(problem.conditionals(), &table.constituents[h].pattern),
                        weight: l.to_string(),
                    })
                    .collect();
                solutions.push(SolutionReport { terms, weights });
            }
            LevelOutcome::Infeasible(w) => {
                let m: Vec<Rational> = level.system.target.clone();
                witness = Some(WitnessReport {
                    terms: terms.clone(),
                    coefficients: w.coefficients.iter().map(Rational::to_string).collect(),
                    constant: w.constant.to_string(),
                    value_at_assessment: w.at(&m).to_string(),
                });
                trace.push(LevelReport { terms, feasible: false, zero_mass: Vec::new() });
            }
        }
    }
    let certificate = if verdict.coherent { Some(solutions) } else { None };
    (trace, certificate, witness)
}

pub fn check(problem: &AssessmentProblem, mode: Mode, verify_lp: bool) -> Result<Outcome<CheckReport>, CommandError> {
    let closed = match mode {
        Mode::Lp => None,
        Mode::Auto => closed_form_verdict(problem),
        Mode::ClosedForm => Some(closed_form_verdict(problem).ok_or(CommandError::NoClosedForm)?),
    };
    let report = match closed {
        Some((family, coherent)) => {
            let mut report = CheckReport {
                coherent,
                mode,
                closed_form_used: true,
                family: Some(family_name(family)),
                certificate: None,
                witness: None,
                recursion_trace: Vec::new(),
                lp_agrees: None,
            };
            if verify_lp {
                let verdict = check_coherence(problem)?;
                let (trace, certificate, witness) = lp_report(problem, &verdict);
                report.recursion_trace = trace;
                report.certificate = certificate;
                report.witness = witness;
                report.lp_agrees = Some(verdict.coherent == coherent);
            }
            report
        }
        None => {
            let verdict = check_coherence(problem)?;
            let (recursion_trace, certificate, witness) = lp_report(problem, &verdict);
            CheckReport {
                coherent: verdict.coherent,
                mode,
                closed_form_used: false,
                family: cohere_core::regions::recognize(problem).map(family_name),
                certificate,
                witness,
                recursion_trace,
                lp_agrees: None,
            }
        }
    };
    let code = if report.coherent { EXIT_OK } else { EXIT_INCOHERENT };
    Ok(Outcome { report, code })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtendReport {
    pub target: String,
    /// False when the base assessment is incoherent; the bounds are then absent.
    pub base_coherent: bool,
    pub lower: Option<String>,
    pub upper: Option<String>,
    pub lower_approx: Option<f64>,
    pub upper_approx: Option<f64>,
    pub exact: bool,
    pub method: Option<String>,
    pub lp_agrees: Option<bool>,
}

impl ExtendReport {
    pub fn text(&self) -> String {
        match (&self.lower, &self.upper) {
            (Some(lo), Some(hi)) => {
                let mut out = format!(
                    "{}: [{lo}, {hi}] ~ [{}, {}] {} via {}\n",
                    self.target,
                    self.lower_approx.unwrap_or(f64::NAN),
                    self.upper_approx.unwrap_or(f64::NAN),
                    if self.exact { "exact" } else { "to within 1e-9" },
                    self.method.as_deref().unwrap_or("?"),
                );
                if let Some(agrees) = self.lp_agrees {
                    let _ = writeln!(out, "  linear programming {}", if agrees { "agrees" } else { "DISAGREES" });
                }
                out
            }
            _ => format!("{}: the base assessment is incoherent\n", self.target),
        }
    }
}

fn method_name(m: ExtensionMethod) -> String {
    match m {
        ExtensionMethod::ClosedForm(f) => format!("closed form ({})", family_name(f)),
        ExtensionMethod::LinearProgram => "linear programming".to_owned(),
        ExtensionMethod::Bisection => "bisection".to_owned(),
    }
}

fn extend_report(target: &ConjunctionTerm, e: &Extension, lp_agrees: Option<bool>) -> ExtendReport {
    ExtendReport {
        target: target.to_string(),
        base_coherent: true,
        lower: Some(e.lower.to_string()),
        upper: Some(e.upper.to_string()),
        lower_approx: Some(rational::to_f64(&e.lower)),
        upper_approx: Some(rational::to_f64(&e.upper)),
        exact: e.exact,
        method: Some(method_name(e.method)),
        lp_agrees,
    }
}

pub fn extend(
    problem: &AssessmentProblem,
    target: &ConjunctionTerm,
    mode: Mode,
    verify_lp: bool,
) -> Result<Outcome<ExtendReport>, CommandError> {
    let result = match mode {
        Mode::Auto => extension_interval(problem, target),
        Mode::Lp => extension_interval_lp(problem, target),
        Mode::ClosedForm => {
            let (family, bounds) = closed_form_extension(problem, target).ok_or(CommandError::NoClosedForm)?;
            if bounds.is_empty() {
                Err(cohere_core::Error::IncoherentBase)
            } else {
                Ok(Extension {
                    lower: bounds.lower,
                    upper: bounds.upper,
                    exact: true,
                    method: ExtensionMethod::ClosedForm(family),
                })
            }
        }
    };
    match result {
        Ok(e) => {
            let lp_agrees = match (verify_lp, e.method) {
                (true, ExtensionMethod::ClosedForm(_)) => {
                    let lp = extension_interval_lp(problem, target)?;
                    Some(lp.lower == e.lower && lp.upper == e.upper)
                }
                _ => None,
            };
            Ok(Outcome { report: extend_report(target, &e, lp_agrees), code: EXIT_OK })
        }
        Err(cohere_core::Error::IncoherentBase) => Ok(Outcome {
            report: ExtendReport {
                target: target.to_string(),
                base_coherent: false,
                lower: None,
                upper: None,
                lower_approx: None,
                upper_approx: None,
                exact: false,
                method: None,
                lp_agrees: None,
            },
            code: EXIT_INCOHERENT,
        }),
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaReport {
    pub kind: &'static str,
    /// Absent for `LUKASIEWICZ` (infinite) and when no single value applies.
    pub lambda: Option<f64>,
    /// `lambda / (1 + lambda)`, in [0, 1].
    pub t: Option<f64>,
    pub residual: Option<f64>,
}

impl LambdaReport {
    pub fn text(&self) -> String {
        let mut out = self.kind.to_owned();
        match self.kind {
            "LUKASIEWICZ" => out.push_str(": lambda = inf"),
            "UNDERDETERMINED" => out.push_str(": every lambda in [0, inf] fits"),
            _ => {
                if let Some(l) = self.lambda {
                    let _ = write!(out, ": lambda = {l}");
                }
            }
        }
        if let Some(r) = self.residual {
            let _ = write!(out, " (residual {r:.1e})");
        }
        out.push('\n');
        out
    }
}

pub fn lambda(x: &Rational, y: &Rational, z: &Rational) -> Outcome<LambdaReport> {
    let report = match find_lambda(x, y, z) {
        LambdaFit::Min => LambdaReport { kind: "MIN", lambda: Some(0.0), t: Some(0.0), residual: None },
        LambdaFit::Product => LambdaReport { kind: "PRODUCT", lambda: Some(1.0), t: Some(0.5), residual: None },
        LambdaFit::Lukasiewicz => LambdaReport { kind: "LUKASIEWICZ", lambda: None, t: Some(1.0), residual: None },
        LambdaFit::Generic { lambda, residual } => LambdaReport {
            kind: "GENERIC",
            lambda: Some(lambda),
            t: Some(lambda / (1.0 + lambda)),
            residual: Some(residual),
        },
        LambdaFit::NotRepresentable => {
            LambdaReport { kind: "NOT_REPRESENTABLE", lambda: None, t: None, residual: None }
        }
        LambdaFit::Underdetermined => LambdaReport { kind: "UNDERDETERMINED", lambda: None, t: None, residual: None },
    };
    let code = if report.kind == "NOT_REPRESENTABLE" { EXIT_INCOHERENT } else { EXIT_OK };
    Outcome { report, code }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub constituent: String,
    /// `one`, `zero`, or `x{..}` naming the prevision paid back.
    pub case: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub term: String,
    pub rows: Vec<TableRow>,
    /// Number of distinct cases among the rows.
    pub cases: usize,
}

impl TableReport {
    pub fn text(&self) -> String {
        let width = self.rows.iter().map(|r| r.constituent.len()).max().unwrap_or(0);
        let mut out = format!("{} ({} constituents, {} cases)\n", self.term, self.rows.len(), self.cases);
        for r in &self.rows {
            let _ = writeln!(out, "  {:width$}  {:>8}  {}", r.constituent, r.case, r.value);
        }
        out
    }
}

fn case_name(case: &Case) -> String {
    match case {
        Case::One => "one".to_owned(),
        Case::Zero => "zero".to_owned(),
        Case::Prevision(t) => format!("x{}", &t.to_string()[1..]),
    }
}

pub fn table(problem: &AssessmentProblem, term: &ConjunctionTerm) -> Result<Outcome<TableReport>, CommandError> {
    let constituents = problem.table();
    let vt = conjunction_value_table(term, constituents, problem.previsions())?;
    let family = problem.conditionals();
    let mut rows: Vec<TableRow> = constituents
        .constituents
        .iter()
        .zip(&vt.rows)
        .map(|(c, r)| TableRow {
            constituent: constituent_label(family, &c.pattern),
            case: case_name(&r.case),
            value: r.value.to_string(),
        })
        .collect();
    if let Some(r) = &vt.c0 {
        rows.push(TableRow {
            constituent: constituent_label(family, &vec![Tag::Void; family.len()]),
            case: case_name(&r.case),
            value: r.value.to_string(),
        });
    }
    let cases = rows.iter().map(|r| r.case.as_str()).collect::<std::collections::BTreeSet<_>>().len();
    Ok(Outcome { report: TableReport { term: term.to_string(), rows, cases }, code: EXIT_OK })
}
