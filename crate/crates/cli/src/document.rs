//! The JSON assessment document.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use cohere_core::crq::{ConjunctionTerm, PrevisionMap};
use cohere_core::logic::{Atom, ConditionalEvent};
use cohere_core::rational::{self, Rational};
use cohere_core::AssessmentProblem;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{parse_formula, FormulaError};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("conditional {index} {field}: {source}")]
    Formula { index: usize, field: &'static str, source: FormulaError },
    #[error("term {index}: invalid prevision {text:?}: {source}")]
    Prevision { index: usize, text: String, source: cohere_core::Error },
    #[error("{0}")]
    Invalid(#[from] cohere_core::Error),
    #[error("unknown mode {0:?} (expected auto, lp or closed-form)")]
    Mode(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Auto,
    Lp,
    ClosedForm,
}

impl FromStr for Mode {
    type Err = DocumentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Mode::Auto),
            "lp" => Ok(Mode::Lp),
            "closed-form" => Ok(Mode::ClosedForm),
            other => Err(DocumentError::Mode(other.to_owned())),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Auto => "auto",
            Mode::Lp => "lp",
            Mode::ClosedForm => "closed-form",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionalSpec {
    pub consequent: String,
    pub antecedent: String,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    /// 0-based indices into `conditionals`.
    pub members: Vec<usize>,
    pub prevision: String,
    /// `false` for values only referenced by other terms' definitions.
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub assessed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssessmentDocument {
    pub atoms: Vec<String>,
    pub conditionals: Vec<ConditionalSpec>,
    pub terms: Vec<TermSpec>,
    #[serde(default)]
    pub options: Options,
}

impl AssessmentDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self, DocumentError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| DocumentError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialise")
    }

    pub fn to_problem(&self) -> Result<AssessmentProblem, DocumentError> {
        let atoms = cohere_core::logic::atoms(self.atoms.iter().cloned())?;
        let conditionals = self
            .conditionals
            .iter()
            .enumerate()
            .map(|(index, c)| {
                let parse = |field, text: &str| {
                    parse_formula(text).map_err(|source| DocumentError::Formula { index, field, source })
                };
                Ok(ConditionalEvent::new(parse("consequent", &c.consequent)?, parse("antecedent", &c.antecedent)?))
            })
            .collect::<Result<Vec<_>, DocumentError>>()?;
        let mut terms = Vec::new();
        let mut previsions = PrevisionMap::new();
        for (index, t) in self.terms.iter().enumerate() {
            let term = ConjunctionTerm::new(t.members.iter().copied())?;
            let value = rational::parse(&t.prevision).map_err(|source| DocumentError::Prevision {
                index,
                text: t.prevision.clone(),
                source,
            })?;
            if previsions.insert(term.clone(), value)?.is_some() {
                return Err(cohere_core::Error::DuplicateTerm(term).into());
            }
            if t.assessed {
                terms.push(term);
            }
        }
        Ok(AssessmentProblem::new(atoms, conditionals, terms, previsions)?)
    }

    /// Document describing `problem`: assessed terms first, in row order.
    pub fn from_problem(problem: &AssessmentProblem, mode: Mode) -> Self {
        let spec = |t: &ConjunctionTerm, value: &Rational, assessed| TermSpec {
            members: t.members().collect(),
            prevision: value.to_string(),
            assessed,
        };
        let mut terms: Vec<TermSpec> =
            problem.terms().iter().map(|t| spec(t, problem.previsions().get(t).expect("assessed"), true)).collect();
        terms.extend(
            problem.previsions().iter().filter(|(t, _)| !problem.terms().contains(t)).map(|(t, v)| spec(t, v, false)),
        );
        AssessmentDocument {
            atoms: problem.atoms().iter().map(Atom::to_string).collect(),
            conditionals: problem
                .conditionals()
                .iter()
                .map(|c| ConditionalSpec { consequent: c.consequent.to_string(), antecedent: c.antecedent.to_string() })
                .collect(),
            terms,
            options: Options { mode },
        }
    }
}

/// Parses a comma-separated list of 0-based member indices, e.g. `0,1`.
pub fn parse_members(text: &str) -> Result<ConjunctionTerm, String> {
    let members = text
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| format!("invalid member index {s:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    ConjunctionTerm::new(members).map_err(|e| e.to_string())
}
