//! Closed-form coherence regions and extension bounds for the families
//! whose sets of coherent assessments are known explicitly.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::crq::ConjunctionTerm;
use crate::error::{Error, Result};
use crate::logic::Tag;
use crate::problem::AssessmentProblem;
use crate::rational::{self, in_unit_interval, Rational};
use crate::tnorm::{self, LambdaFit};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub lower: Rational,
    pub upper: Rational,
}

impl Bounds {
    /// No value satisfies both bounds.
    pub fn is_empty(&self) -> bool {
        self.lower > self.upper
    }

    pub fn contains(&self, z: &Rational) -> bool {
        self.lower <= *z && *z <= self.upper
    }
}

/// `[max(x + y - 1, 0), min(x, y)]`.
pub fn frechet_bounds(x: &Rational, y: &Rational) -> Bounds {
    Bounds { lower: tnorm::lukasiewicz(x, y), upper: rational::min(x, y) }
}

/// Coherence of `(x, y, z)` on `{A|H, B|K, (A|H)&(B|K)}` with logically independent events.
pub fn in_pi_two(x: &Rational, y: &Rational, z: &Rational) -> bool {
    in_unit_interval(x) && in_unit_interval(y) && frechet_bounds(x, y).contains(z)
}

fn max_of(values: impl IntoIterator<Item = Rational>) -> Rational {
    values.into_iter().reduce(|a, b| if b > a { b } else { a }).expect("non-empty")
}

fn min_of(values: impl IntoIterator<Item = Rational>) -> Rational {
    values.into_iter().reduce(|a, b| if b < a { b } else { a }).expect("non-empty")
}

/// The six-term part of the three-conditional region: everything except
/// the constraints involving `x123`.
fn pairwise_three(v: &[Rational]) -> bool {
    let (x1, x2, x3, x12, x13, x23) = (&v[0], &v[1], &v[2], &v[3], &v[4], &v[5]);
    let one = Rational::one();
    let zero = Rational::zero();
    let within = |lo: Rational, z: &Rational, hi: Rational| lo <= *z && *z <= hi;
    in_unit_interval(x1)
        && in_unit_interval(x2)
        && in_unit_interval(x3)
        && within(max_of([x1 + x2 - &one, x13 + x23 - x3, zero.clone()]), x12, rational::min(x1, x2))
        && within(max_of([x1 + x3 - &one, x12 + x23 - x2, zero.clone()]), x13, rational::min(x1, x3))
        && within(max_of([x2 + x3 - &one, x12 + x13 - x1, zero.clone()]), x23, rational::min(x2, x3))
        && one - x1 - x2 - x3 + x12 + x13 + x23 >= zero
}

/// Coherence of `(x1, x2, x3, x12, x13, x23, x123)` on the seven conjunctions
/// of three logically independent conditional events.
pub fn in_pi_three(v: &[Rational; 7]) -> bool {
    pairwise_three(&v[..6]) && extension_bounds_three(v[..6].try_into().expect("six")).contains(&v[6])
}

/// Coherence of the six-value prefix `(x1, x2, x3, x12, x13, x23)`.
pub fn in_pi_three_prefix(v: &[Rational; 6]) -> bool {
    pairwise_three(v) && !extension_bounds_three(v).is_empty()
}

/// Bounds on `x123` given a coherent prefix `(x1, x2, x3, x12, x13, x23)`.
pub fn extension_bounds_three(v: &[Rational; 6]) -> Bounds {
    let [x1, x2, x3, x12, x13, x23] = v;
    Bounds {
        lower: max_of([Rational::zero(), x12 + x13 - x1, x12 + x23 - x2, x13 + x23 - x3]),
        upper: min_of([x12.clone(), x13.clone(), x23.clone(), Rational::one() - x1 - x2 - x3 + x12 + x13 + x23]),
    }
}

/// Coherence of `(x, y, z)` on `{A|H, A|K, (A|H)&(A|K)}` with `A, H, K` logically independent.
pub fn same_consequent_region(x: &Rational, y: &Rational, z: &Rational) -> bool {
    in_unit_interval(x) && in_unit_interval(y) && x * y <= *z && *z <= rational::min(x, y)
}

/// Coherence of `(x, y, z)` on `{A|H, A|K, (A|H)&(A|K)}` when `H` and `K` are incompatible.
pub fn same_consequent_disjoint(x: &Rational, y: &Rational, z: &Rational) -> bool {
    in_unit_interval(x) && in_unit_interval(y) && *z == x * y
}

/// Frank parameters representing a same-consequent assessment, in the
/// coordinate `t = lambda / (1 + lambda)` (`t = 1/2` is `lambda = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaRange {
    pub fit: LambdaFit,
    pub t_lo: f64,
    pub t_hi: f64,
}

pub fn lambda_range_same_consequent(x: &Rational, y: &Rational, z: &Rational) -> Option<LambdaRange> {
    if !same_consequent_region(x, y, z) {
        return None;
    }
    let fit = tnorm::find_lambda(x, y, z);
    let (t_lo, t_hi) = match fit {
        LambdaFit::Min => (0.0, 0.0),
        LambdaFit::Product => (0.5, 0.5),
        LambdaFit::Underdetermined => (0.0, 0.5),
        LambdaFit::Generic { lambda, .. } => {
            debug_assert!(lambda <= 1.0 + 1e-9, "lambda {lambda} above 1");
            let t = (lambda / (1.0 + lambda)).min(0.5);
            (t, t)
        }
        LambdaFit::Lukasiewicz | LambdaFit::NotRepresentable => {
            unreachable!("inside the region z lies in [xy, min(x, y)]")
        }
    };
    Some(LambdaRange { fit, t_lo, t_hi })
}

/// Coherence of the Lukasiewicz prefix `(x1, x2, x3, T_L(x1,x2), T_L(x1,x3), T_L(x2,x3))`,
/// which requires every pairwise `T_L` to be positive.
pub fn luk_coherent_six(x1: &Rational, x2: &Rational, x3: &Rational) -> Result<bool> {
    for (a, b) in [(x1, x2), (x1, x3), (x2, x3)] {
        if !tnorm::lukasiewicz(a, b).is_positive() {
            return Err(Error::Hypothesis("every pairwise Lukasiewicz value must be positive"));
        }
    }
    Ok(x1 + x2 + x3 >= rational::int(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LukVerdict {
    Coherent,
    /// The sufficient condition does not apply; use [`in_pi_three`] instead.
    Undecided,
}

/// Sufficient test for the full Lukasiewicz seven-tuple: coherent when `T_L(x1, x2, x3) > 0`.
pub fn luk_coherent_seven(x1: &Rational, x2: &Rational, x3: &Rational) -> LukVerdict {
    if x1 + x2 + x3 > rational::int(2) {
        LukVerdict::Coherent
    } else {
        LukVerdict::Undecided
    }
}

/// A family whose coherent assessments have a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `{A|H, B|K}` with `A, H, B, K` logically independent.
    TwoIndependent,
    /// `{A|H, A|K}` with `A, H, K` logically independent.
    SameConsequent,
    /// `{A|H, A|K}` with `HK` impossible.
    SameConsequentDisjoint,
    /// Three logically independent conditional events.
    ThreeIndependent,
}

fn all_patterns(n: usize) -> BTreeSet<Vec<Tag>> {
    let mut out = BTreeSet::from([Vec::new()]);
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                [Tag::True, Tag::False, Tag::Void].into_iter().map(move |t| {
                    let mut q = p.clone();
                    q.push(t);
                    q
                })
            })
            .collect();
    }
    out.remove(&vec![Tag::Void; n]);
    out
}

fn same_consequent_patterns(disjoint: bool) -> BTreeSet<Vec<Tag>> {
    use Tag::{False as F, True as T, Void as V};
    let mut set = BTreeSet::from([vec![T, V], vec![F, V], vec![V, T], vec![V, F]]);
    if !disjoint {
        set.insert(vec![T, T]);
        set.insert(vec![F, F]);
    }
    set
}

/// Identifies the family from its constituents. Only the tag patterns
/// matter: the value tables, and hence coherence, depend on nothing else.
pub fn recognize(problem: &AssessmentProblem) -> Option<Family> {
    let patterns: BTreeSet<Vec<Tag>> = problem.table().patterns().map(<[Tag]>::to_vec).collect();
    match problem.conditionals().len() {
        2 if patterns == all_patterns(2) => Some(Family::TwoIndependent),
        2 if patterns == same_consequent_patterns(false) => Some(Family::SameConsequent),
        2 if patterns == same_consequent_patterns(true) => Some(Family::SameConsequentDisjoint),
        3 if patterns == all_patterns(3) => Some(Family::ThreeIndependent),
        _ => None,
    }
}

fn term(members: &[usize]) -> ConjunctionTerm {
    ConjunctionTerm::new(members.iter().copied()).expect("non-empty")
}

fn pair_terms() -> [ConjunctionTerm; 3] {
    [term(&[0]), term(&[1]), term(&[0, 1])]
}

fn three_terms() -> [ConjunctionTerm; 7] {
    [term(&[0]), term(&[1]), term(&[2]), term(&[0, 1]), term(&[0, 2]), term(&[1, 2]), term(&[0, 1, 2])]
}

fn assessed_exactly(problem: &AssessmentProblem, terms: &[ConjunctionTerm]) -> Option<Vec<Rational>> {
    let given: BTreeSet<&ConjunctionTerm> = problem.terms().iter().collect();
    if given.len() != terms.len() || !terms.iter().all(|t| given.contains(t)) {
        return None;
    }
    Some(terms.iter().map(|t| problem.previsions().get(t).expect("assessed").clone()).collect())
}

/// Decides coherence by closed form when the family and the assessed terms
/// match one of the known regions.
pub fn closed_form_verdict(problem: &AssessmentProblem) -> Option<(Family, bool)> {
    let family = recognize(problem)?;
    let verdict = match family {
        Family::TwoIndependent | Family::SameConsequent | Family::SameConsequentDisjoint => {
            let v = assessed_exactly(problem, &pair_terms())?;
            match family {
                Family::TwoIndependent => in_pi_two(&v[0], &v[1], &v[2]),
                Family::SameConsequent => same_consequent_region(&v[0], &v[1], &v[2]),
                _ => same_consequent_disjoint(&v[0], &v[1], &v[2]),
            }
        }
        Family::ThreeIndependent => {
            let all = three_terms();
            if let Some(v) = assessed_exactly(problem, &all) {
                in_pi_three(v.as_slice().try_into().expect("seven"))
            } else {
                let v = assessed_exactly(problem, &all[..6])?;
                in_pi_three_prefix(v.as_slice().try_into().expect("six"))
            }
        }
    };
    Some((family, verdict))
}

/// Closed-form bounds for extending a coherent `problem` to `target`.
pub fn closed_form_extension(problem: &AssessmentProblem, target: &ConjunctionTerm) -> Option<(Family, Bounds)> {
    let family = recognize(problem)?;
    let bounds = match family {
        Family::TwoIndependent | Family::SameConsequent | Family::SameConsequentDisjoint => {
            let [a, b, ab] = pair_terms();
            if *target != ab {
                return None;
            }
            let v = assessed_exactly(problem, &[a, b])?;
            let (x, y) = (&v[0], &v[1]);
            match family {
                Family::TwoIndependent => frechet_bounds(x, y),
                Family::SameConsequent => Bounds { lower: x * y, upper: rational::min(x, y) },
                _ => Bounds { lower: x * y, upper: x * y },
            }
        }
        Family::ThreeIndependent => {
            let all = three_terms();
            if *target != all[6] {
                return None;
            }
            let v = assessed_exactly(problem, &all[..6])?;
            extension_bounds_three(v.as_slice().try_into().expect("six"))
        }
    };
    Some((family, bounds))
}
