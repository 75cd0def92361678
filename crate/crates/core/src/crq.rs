//! The conjunction of conditional events as a conditional random quantity.
//!
//! On a constituent the conjunction over a member set `S` is 1 when every
//! member is true, 0 when some member is false, and otherwise the assessed
//! prevision of the conjunction of the members that are void there.

use alloc::collections::btree_map;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::logic::{ConstituentTable, Tag};
use crate::problem::AssessmentProblem;
use crate::rational::{in_unit_interval, Rational};

/// A non-empty set of indices into the family of conditional events.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConjunctionTerm(BTreeSet<usize>);

impl ConjunctionTerm {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptyTerm);
        }
        Ok(Self(set))
    }

    pub fn single(index: usize) -> Self {
        Self(BTreeSet::from([index]))
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.contains(&index)
    }

    pub fn is_subset(&self, other: &ConjunctionTerm) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn max_member(&self) -> usize {
        *self.0.iter().next_back().expect("terms are non-empty")
    }

    pub(crate) fn check_range(&self, conditionals: usize) -> Result<()> {
        match self.0.iter().find(|&&i| i >= conditionals) {
            Some(&index) => Err(Error::TermIndex { index, len: conditionals }),
            None => Ok(()),
        }
    }

    /// Case of this conjunction on a constituent with the given tag pattern.
    pub fn case_on(&self, pattern: &[Tag]) -> Case {
        let mut void = BTreeSet::new();
        for i in self.members() {
            match pattern[i] {
                Tag::False => return Case::Zero,
                Tag::Void => {
                    void.insert(i);
                }
                Tag::True => {}
            }
        }
        if void.is_empty() {
            Case::One
        } else {
            Case::Prevision(ConjunctionTerm(void))
        }
    }

    /// True when the constituent lies inside the disjunction of the members' antecedents.
    pub fn within_antecedent(&self, pattern: &[Tag]) -> bool {
        self.members().any(|i| pattern[i] != Tag::Void)
    }
}

/// Displays with 1-based member labels, as in `C{1,2}`.
impl fmt::Display for ConjunctionTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("C{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

/// Assessed previsions keyed by conjunction term; every value lies in [0, 1].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrevisionMap(BTreeMap<ConjunctionTerm, Rational>);

impl PrevisionMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, term: ConjunctionTerm, value: Rational) -> Result<Option<Rational>> {
        if !in_unit_interval(&value) {
            return Err(Error::PrevisionOutOfRange { term, value });
        }
        Ok(self.0.insert(term, value))
    }

    pub fn get(&self, term: &ConjunctionTerm) -> Option<&Rational> {
        self.0.get(term)
    }

    pub fn require(&self, term: &ConjunctionTerm) -> Result<&Rational> {
        self.0.get(term).ok_or_else(|| Error::MissingPrevision(term.clone()))
    }

    pub fn iter(&self) -> btree_map::Iter<'_, ConjunctionTerm, Rational> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(ConjunctionTerm, Rational)> for PrevisionMap {
    /// Panics on values outside [0, 1]; use [`PrevisionMap::insert`] for checked input.
    fn from_iter<I: IntoIterator<Item = (ConjunctionTerm, Rational)>>(iter: I) -> Self {
        let mut map = PrevisionMap::new();
        for (t, v) in iter {
            map.insert(t, v).expect("prevision in [0, 1]");
        }
        map
    }
}

/// Which branch of the conjunction's definition applies on a constituent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Case {
    One,
    Zero,
    /// The prevision of the conjunction over the void members.
    Prevision(ConjunctionTerm),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueRow {
    pub case: Case,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueTable {
    pub term: ConjunctionTerm,
    /// One row per constituent of the table, in table order.
    pub rows: Vec<ValueRow>,
    /// Row for C0, which always carries the term's own prevision.
    pub c0: Option<ValueRow>,
}

fn row(term: &ConjunctionTerm, pattern: &[Tag], previsions: &PrevisionMap) -> Result<ValueRow> {
    let case = term.case_on(pattern);
    let value = match &case {
        Case::One => Rational::one(),
        Case::Zero => Rational::zero(),
        Case::Prevision(sub) => previsions.require(sub)?.clone(),
    };
    Ok(ValueRow { case, value })
}

pub fn conjunction_value_table(
    term: &ConjunctionTerm,
    table: &ConstituentTable,
    previsions: &PrevisionMap,
) -> Result<ValueTable> {
    term.check_range(table.conditionals)?;
    let rows = table.constituents.iter().map(|c| row(term, &c.pattern, previsions)).collect::<Result<Vec<_>>>()?;
    let c0 = table.c0.as_ref().map(|c| row(term, &c.pattern, previsions)).transpose()?;
    Ok(ValueTable { term: term.clone(), rows, c0 })
}

/// The points `Q_h` of every constituent, stacked over the assessed terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QVectors {
    /// `(constituent index, Q_h)` for C1..Cm.
    pub points: Vec<(usize, Vec<Rational>)>,
    /// `Q_0 = M` when C0 is non-empty.
    pub q0: Option<Vec<Rational>>,
}

pub fn q_vectors(problem: &AssessmentProblem) -> Result<QVectors> {
    let table = problem.table();
    let tables = problem
        .terms()
        .iter()
        .map(|t| conjunction_value_table(t, table, problem.previsions()))
        .collect::<Result<Vec<_>>>()?;
    let points = (0..table.constituents.len())
        .map(|h| (h, tables.iter().map(|vt| vt.rows[h].value.clone()).collect()))
        .collect();
    let q0 = table.c0.as_ref().map(|_| problem.assessment());
    Ok(QVectors { points, q0 })
}
