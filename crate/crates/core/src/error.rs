use alloc::string::String;

use crate::crq::ConjunctionTerm;
use crate::rational::Rational;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid atom name `{0}`")]
    InvalidAtomName(String),
    #[error("atom `{0}` declared more than once")]
    DuplicateAtom(String),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("{atoms} atoms exceed the enumeration cap of {cap}")]
    Capacity { atoms: usize, cap: usize },
    #[error("the family of conditional events is empty")]
    EmptyFamily,
    #[error("antecedent of conditional {0} is unsatisfiable")]
    EmptyAntecedent(usize),
    #[error("conjunction term has no members")]
    EmptyTerm,
    #[error("term member {index} is out of range ({len} conditionals)")]
    TermIndex { index: usize, len: usize },
    #[error("term {0} is assessed more than once")]
    DuplicateTerm(ConjunctionTerm),
    #[error("no prevision supplied for {0}")]
    MissingPrevision(ConjunctionTerm),
    #[error("prevision {value} for {term} lies outside [0, 1]")]
    PrevisionOutOfRange { term: ConjunctionTerm, value: Rational },
    #[error("value {0} lies outside [0, 1]")]
    OutOfUnitInterval(Rational),
    #[error("value {0} lies outside [0, 1]")]
    FloatOutOfUnitInterval(f64),
    #[error("invalid rational literal `{0}`")]
    InvalidRational(String),
    #[error("invalid Frank parameter {0}")]
    InvalidLambda(f64),
    #[error("empty argument list")]
    EmptyList,
    #[error("the system is infeasible")]
    Infeasible,
    #[error("row {index} is out of range ({len} rows)")]
    RowIndex { index: usize, len: usize },
    #[error("the base assessment is not coherent")]
    IncoherentBase,
    #[error("{0} is already assessed")]
    TargetAssessed(ConjunctionTerm),
    #[error("no coherent value found for {0}")]
    NoCoherentExtension(ConjunctionTerm),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(&'static str),
}
