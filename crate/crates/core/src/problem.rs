use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::crq::{ConjunctionTerm, PrevisionMap};
use crate::error::{Error, Result};
use crate::logic::{enumerate_constituents, Atom, ConditionalEvent, ConstituentTable};
use crate::rational::Rational;

/// A family of conditional events, the conjunction terms assessed on it and
/// the previsions (assessed values plus any sub-conjunction values the
/// terms' definitions refer to).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssessmentProblem {
    atoms: Vec<Atom>,
    conditionals: Vec<ConditionalEvent>,
    terms: Vec<ConjunctionTerm>,
    previsions: PrevisionMap,
    table: ConstituentTable,
}

impl AssessmentProblem {
    pub fn new(
        atoms: Vec<Atom>,
        conditionals: Vec<ConditionalEvent>,
        terms: Vec<ConjunctionTerm>,
        previsions: PrevisionMap,
    ) -> Result<Self> {
        let table = enumerate_constituents(&atoms, &conditionals)?;
        let n = conditionals.len();
        let mut seen = BTreeSet::new();
        for t in &terms {
            t.check_range(n)?;
            if !seen.insert(t) {
                return Err(Error::DuplicateTerm(t.clone()));
            }
            previsions.require(t)?;
        }
        for (t, _) in previsions.iter() {
            t.check_range(n)?;
        }
        for t in terms.iter().chain(previsions.iter().map(|(t, _)| t)) {
            for i in t.members() {
                previsions.require(&ConjunctionTerm::single(i))?;
            }
        }
        Ok(Self { atoms, conditionals, terms, previsions, table })
    }

    /// Problem in which every listed term is assessed at the paired value.
    pub fn assessed(
        atoms: Vec<Atom>,
        conditionals: Vec<ConditionalEvent>,
        values: impl IntoIterator<Item = (ConjunctionTerm, Rational)>,
    ) -> Result<Self> {
        let mut terms = Vec::new();
        let mut previsions = PrevisionMap::new();
        for (t, v) in values {
            if previsions.insert(t.clone(), v)?.is_some() {
                return Err(Error::DuplicateTerm(t));
            }
            terms.push(t);
        }
        Self::new(atoms, conditionals, terms, previsions)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn conditionals(&self) -> &[ConditionalEvent] {
        &self.conditionals
    }

    /// Assessed terms, in row order.
    pub fn terms(&self) -> &[ConjunctionTerm] {
        &self.terms
    }

    pub fn previsions(&self) -> &PrevisionMap {
        &self.previsions
    }

    pub fn table(&self) -> &ConstituentTable {
        &self.table
    }

    /// The assessment vector `M`, one entry per assessed term.
    pub fn assessment(&self) -> Vec<Rational> {
        self.terms.iter().map(|t| self.previsions.get(t).expect("validated").clone()).collect()
    }

    pub fn prevision_of(&self, row: usize) -> &Rational {
        self.previsions.get(&self.terms[row]).expect("validated")
    }

    pub fn term_index(&self, term: &ConjunctionTerm) -> Option<usize> {
        self.terms.iter().position(|t| t == term)
    }

    /// Same problem with `term` additionally assessed at `value`.
    pub fn with_assessment(&self, term: ConjunctionTerm, value: Rational) -> Result<Self> {
        term.check_range(self.conditionals.len())?;
        if self.terms.contains(&term) {
            return Err(Error::TargetAssessed(term));
        }
        let mut previsions = self.previsions.clone();
        previsions.insert(term.clone(), value)?;
        for i in term.members() {
            previsions.require(&ConjunctionTerm::single(i))?;
        }
        let mut terms = self.terms.clone();
        terms.push(term);
        Ok(Self {
            atoms: self.atoms.clone(),
            conditionals: self.conditionals.clone(),
            terms,
            previsions,
            table: self.table.clone(),
        })
    }

    /// Same family restricted to the assessed terms at `rows`.
    pub fn restricted(&self, rows: &[usize]) -> Self {
        Self {
            atoms: self.atoms.clone(),
            conditionals: self.conditionals.clone(),
            terms: rows.iter().map(|&r| self.terms[r].clone()).collect(),
            previsions: self.previsions.clone(),
            table: self.table.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{atoms, EventExpr};
    use crate::rational::rat;
    use alloc::vec;

    fn fam() -> (Vec<Atom>, Vec<ConditionalEvent>) {
        let v = |n| EventExpr::atom(n).unwrap();
        (
            atoms(["A", "H", "B", "K"]).unwrap(),
            vec![ConditionalEvent::new(v("A"), v("H")), ConditionalEvent::new(v("B"), v("K"))],
        )
    }

    #[test]
    fn singletons_required() {
        let (a, c) = fam();
        let err = AssessmentProblem::assessed(
            a,
            c,
            [(ConjunctionTerm::single(0), rat(1, 2)), (ConjunctionTerm::new([0, 1]).unwrap(), rat(1, 4))],
        )
        .unwrap_err();
        assert_eq!(err, Error::MissingPrevision(ConjunctionTerm::single(1)));
    }

    #[test]
    fn duplicate_and_out_of_range_terms() {
        let (a, c) = fam();
        let t = ConjunctionTerm::single(0);
        let err = AssessmentProblem::assessed(a.clone(), c.clone(), [(t.clone(), rat(1, 2)), (t.clone(), rat(1, 2))])
            .unwrap_err();
        assert_eq!(err, Error::DuplicateTerm(t));
        let err = AssessmentProblem::assessed(a, c, [(ConjunctionTerm::single(5), rat(1, 2))]).unwrap_err();
        assert_eq!(err, Error::TermIndex { index: 5, len: 2 });
    }

    #[test]
    fn undeclared_atom() {
        let (a, mut c) = fam();
        c.push(ConditionalEvent::new(EventExpr::atom("Z").unwrap(), EventExpr::True));
        let err = AssessmentProblem::assessed(a, c, [(ConjunctionTerm::single(0), rat(1, 2))]).unwrap_err();
        assert_eq!(err, Error::UnknownAtom("Z".into()));
    }
}
