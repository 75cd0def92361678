#![allow(dead_code)]

use cohere_core::crq::ConjunctionTerm;
use cohere_core::logic::{atoms, ConditionalEvent, EventExpr};
use cohere_core::rational::{rat, Rational};
use cohere_core::AssessmentProblem;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform-ish rational in [0, 1] with denominator at most 100.
pub fn unit(rng: &mut impl Rng) -> Rational {
    let d = rng.gen_range(1..=100);
    rat(rng.gen_range(0..=d), d)
}

/// Rational in `[lo, hi]` on a grid of step `1/d`, `d <= 100`, snapped to the interval.
pub fn between(rng: &mut impl Rng, lo: &Rational, hi: &Rational) -> Rational {
    let t = unit(rng);
    lo + (hi - lo) * t
}

pub fn v(name: &str) -> EventExpr {
    EventExpr::atom(name).unwrap()
}

pub fn term(members: &[usize]) -> ConjunctionTerm {
    ConjunctionTerm::new(members.iter().copied()).unwrap()
}

pub fn two_family() -> (Vec<cohere_core::logic::Atom>, Vec<ConditionalEvent>) {
    (
        atoms(["A", "H", "B", "K"]).unwrap(),
        vec![ConditionalEvent::new(v("A"), v("H")), ConditionalEvent::new(v("B"), v("K"))],
    )
}

/// `{A|H, A|K}`; with `disjoint` the second antecedent is `!H & X`.
pub fn same_consequent_family(disjoint: bool) -> (Vec<cohere_core::logic::Atom>, Vec<ConditionalEvent>) {
    if disjoint {
        (
            atoms(["A", "H", "X"]).unwrap(),
            vec![ConditionalEvent::new(v("A"), v("H")), ConditionalEvent::new(v("A"), !v("H") & v("X"))],
        )
    } else {
        (
            atoms(["A", "H", "K"]).unwrap(),
            vec![ConditionalEvent::new(v("A"), v("H")), ConditionalEvent::new(v("A"), v("K"))],
        )
    }
}

pub fn three_family() -> (Vec<cohere_core::logic::Atom>, Vec<ConditionalEvent>) {
    (
        atoms(["E1", "H1", "E2", "H2", "E3", "H3"]).unwrap(),
        vec![
            ConditionalEvent::new(v("E1"), v("H1")),
            ConditionalEvent::new(v("E2"), v("H2")),
            ConditionalEvent::new(v("E3"), v("H3")),
        ],
    )
}

pub const PAIR_TERMS: [&[usize]; 3] = [&[0], &[1], &[0, 1]];
pub const THREE_TERMS: [&[usize]; 7] = [&[0], &[1], &[2], &[0, 1], &[0, 2], &[1, 2], &[0, 1, 2]];

pub fn problem(
    family: (Vec<cohere_core::logic::Atom>, Vec<ConditionalEvent>),
    terms: &[&[usize]],
    values: &[Rational],
) -> AssessmentProblem {
    let (a, c) = family;
    AssessmentProblem::assessed(a, c, terms.iter().zip(values).map(|(t, x)| (term(t), x.clone()))).unwrap()
}

pub fn pair(
    family: (Vec<cohere_core::logic::Atom>, Vec<ConditionalEvent>),
    x: &Rational,
    y: &Rational,
    z: &Rational,
) -> AssessmentProblem {
    problem(family, &PAIR_TERMS, &[x.clone(), y.clone(), z.clone()])
}

pub fn three(values: &[Rational]) -> AssessmentProblem {
    problem(three_family(), &THREE_TERMS[..values.len()], values)
}
