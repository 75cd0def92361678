mod support;

use cohere_core::coherence::{
    check_coherence, extension_interval, extension_interval_lp, extension_tolerance, is_coherent, ExtensionMethod,
    LevelOutcome,
};
use cohere_core::logic::{atoms, ConditionalEvent};
use cohere_core::rational::{rat, Rational};
use cohere_core::regions::{
    closed_form_verdict, extension_bounds_three, frechet_bounds, in_pi_three, in_pi_two, recognize, Family,
};
use cohere_core::tnorm::{frank_exact, FrankParam};
use cohere_core::AssessmentProblem;
use num_traits::Signed;
use proptest::prelude::*;
use support::*;

fn unit_strategy() -> impl Strategy<Value = Rational> {
    (1i64..=60).prop_flat_map(|d| (0..=d).prop_map(move |n| rat(n, d)))
}

#[test]
fn recognized_families() {
    let x = rat(1, 2);
    assert_eq!(recognize(&pair(two_family(), &x, &x, &x)), Some(Family::TwoIndependent));
    assert_eq!(recognize(&pair(same_consequent_family(false), &x, &x, &x)), Some(Family::SameConsequent));
    assert_eq!(
        recognize(&pair(same_consequent_family(true), &x, &x, &rat(1, 4))),
        Some(Family::SameConsequentDisjoint)
    );
    assert_eq!(recognize(&three(&[x.clone(), x.clone(), x.clone()])), Some(Family::ThreeIndependent));
    let shared = shared_antecedent(&[x.clone(), x.clone(), x]);
    assert_eq!(recognize(&shared), None);
}

#[test]
fn lp_extension_matches_closed_forms() {
    let mut g = rng(21);
    for _ in 0..20 {
        let (x, y) = (unit(&mut g), unit(&mut g));
        for (family, expected) in [
            (two_family(), frechet_bounds(&x, &y)),
            (
                same_consequent_family(false),
                cohere_core::regions::Bounds { lower: &x * &y, upper: cohere_core::rational::min(&x, &y) },
            ),
            (same_consequent_family(true), cohere_core::regions::Bounds { lower: &x * &y, upper: &x * &y }),
        ] {
            let p = problem(family, &PAIR_TERMS[..2], &[x.clone(), y.clone()]);
            let lp = extension_interval_lp(&p, &term(&[0, 1])).unwrap();
            assert_eq!((lp.lower.clone(), lp.upper.clone()), (expected.lower.clone(), expected.upper.clone()));
            assert!(lp.exact);
            assert_eq!(lp.method, ExtensionMethod::LinearProgram);
            let auto = extension_interval(&p, &term(&[0, 1])).unwrap();
            assert_eq!((auto.lower, auto.upper), (lp.lower, lp.upper));
            assert!(matches!(auto.method, ExtensionMethod::ClosedForm(_)));
        }
    }
}

#[test]
fn lp_extension_matches_three_term_bounds() {
    let mut g = rng(22);
    for _ in 0..10 {
        let x: Vec<Rational> = (0..3).map(|_| unit(&mut g)).collect();
        let prefix: Vec<Rational> = {
            let t = |a: &Rational, b: &Rational| frank_exact(FrankParam::Product, a, b).unwrap();
            vec![x[0].clone(), x[1].clone(), x[2].clone(), t(&x[0], &x[1]), t(&x[0], &x[2]), t(&x[1], &x[2])]
        };
        let p = three(&prefix);
        let lp = extension_interval_lp(&p, &term(&[0, 1, 2])).unwrap();
        let expected = extension_bounds_three(prefix.as_slice().try_into().unwrap());
        assert_eq!((lp.lower, lp.upper), (expected.lower, expected.upper));
        assert!(lp.exact);
    }
}

/// `{E1|H, E2|H, E3|H}` with one shared antecedent.
fn shared_antecedent(values: &[Rational]) -> AssessmentProblem {
    let family = (
        atoms(["E1", "E2", "E3", "H"]).unwrap(),
        vec![
            ConditionalEvent::new(v("E1"), v("H")),
            ConditionalEvent::new(v("E2"), v("H")),
            ConditionalEvent::new(v("E3"), v("H")),
        ],
    );
    problem(family, &THREE_TERMS[..values.len()], values)
}

#[test]
fn shared_antecedent_has_the_same_region() {
    let mut g = rng(23);
    let mut inside = 0;
    for k in 0..300 {
        let m: Vec<Rational> = if k % 2 == 0 {
            (0..7).map(|_| unit(&mut g)).collect()
        } else {
            let x: Vec<Rational> = (0..3).map(|_| unit(&mut g)).collect();
            let param = [FrankParam::Product, FrankParam::Min, FrankParam::Lukasiewicz][k % 3];
            let t = |a: &Rational, b: &Rational| frank_exact(param, a, b).unwrap();
            let mut m =
                vec![x[0].clone(), x[1].clone(), x[2].clone(), t(&x[0], &x[1]), t(&x[0], &x[2]), t(&x[1], &x[2])];
            let b = extension_bounds_three(m.as_slice().try_into().unwrap());
            m.push(if b.is_empty() { unit(&mut g) } else { between(&mut g, &b.lower, &b.upper) });
            m
        };
        let expected = in_pi_three(m.as_slice().try_into().unwrap());
        inside += expected as usize;
        assert_eq!(is_coherent(&shared_antecedent(&m)).unwrap(), expected, "{m:?}");
    }
    assert!(inside > 50);
}

#[test]
fn bisection_fallback_for_pair_inside_three() {
    // Only the singletons of three conditionals are assessed, so the pair's
    // own prevision shows up inside the union of antecedents.
    let (x, y, w) = (rat(7, 10), rat(1, 2), rat(1, 3));
    let p = three(&[x.clone(), y.clone(), w]);
    let e = extension_interval(&p, &term(&[0, 1])).unwrap();
    assert_eq!(e.method, ExtensionMethod::Bisection);
    assert!(!e.exact);
    let b = frechet_bounds(&x, &y);
    let eps = extension_tolerance();
    assert!((&e.lower - &b.lower).abs() <= eps, "{}", e.lower);
    assert!((&e.upper - &b.upper).abs() <= eps, "{}", e.upper);
}

#[test]
fn closed_form_verdicts_cover_the_prefix() {
    let prefix = ["0.5", "0.6", "0.7", "0.1", "0.2", "0.3"].map(|s| cohere_core::rational::parse(s).unwrap());
    let p = three(&prefix);
    assert_eq!(closed_form_verdict(&p), Some((Family::ThreeIndependent, false)));
    assert!(!is_coherent(&p).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn two_conditionals_match_frechet(x in unit_strategy(), y in unit_strategy(), z in unit_strategy()) {
        prop_assert_eq!(is_coherent(&pair(two_family(), &x, &y, &z)).unwrap(), in_pi_two(&x, &y, &z));
    }

    #[test]
    fn verdicts_carry_valid_evidence(values in proptest::collection::vec(unit_strategy(), 7)) {
        let verdict = check_coherence(&three(&values)).unwrap();
        for level in &verdict.levels {
            match &level.outcome {
                LevelOutcome::Solved { lambda, .. } => prop_assert!(level.system.is_solution(lambda)),
                LevelOutcome::Infeasible(w) => prop_assert!(w.separates(&level.system)),
            }
        }
        prop_assert!(!verdict.stalled);
        prop_assert_eq!(verdict.coherent, in_pi_three(values.as_slice().try_into().unwrap()));
    }

    #[test]
    fn frank_members_extend_coherently(x in unit_strategy(), y in unit_strategy(), k in 0usize..3) {
        let param = [FrankParam::Min, FrankParam::Product, FrankParam::Lukasiewicz][k];
        let z = frank_exact(param, &x, &y).unwrap();
        prop_assert!(is_coherent(&pair(two_family(), &x, &y, &z)).unwrap());
    }
}
