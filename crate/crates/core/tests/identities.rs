mod common;

use common::{rel, same, smooth_sample, random_sample, tables_identical};
use seqaccel::transforms::{FRule, Initializer};
use seqaccel::{
    aitken_delta2, epsilon, generic_f, iterated_aitken, iterated_theta, levin_u, levin_v, rho,
    rho_osada, seps, theta, theta2, u2_explicit, v1_explicit, PointsMode, SequenceSample,
    Theta2Form,
};

fn geometric_model() -> SequenceSample {
    SequenceSample::new((0..10).map(|n| 1.0 + 0.3f64.powi(n)).collect()).unwrap()
}

#[test]
fn second_order_transforms_are_exact_on_one_exponential() {
    let s = geometric_model();
    let eps = epsilon(&s).unwrap();
    let ait = iterated_aitken(&s).unwrap();
    let u = levin_u(&s, 1.0).unwrap();
    let v = levin_v(&s, 1.0).unwrap();
    for n in 0..5 {
        assert!((eps.value(2, n).unwrap() - 1.0).abs() <= 1e-12);
        assert!((ait.value(1, n).unwrap() - 1.0).abs() <= 1e-12);
        for form in Theta2Form::ALL {
            assert!((theta2(&s, n, form).unwrap().value - 1.0).abs() <= 1e-12, "{form:?}");
        }
        assert!((u.value(2, n + 1).unwrap() - 1.0).abs() <= 1e-12);
        assert!((v.value(1, n + 1).unwrap() - 1.0).abs() <= 1e-12);
        assert!((u2_explicit(&s, n + 1).unwrap().value - 1.0).abs() <= 1e-12);
        assert!((v1_explicit(&s, n + 1).unwrap().value - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn rho_is_exact_on_rational_sequence() {
    let s = SequenceSample::new((0..6).map(|n| (n as f64 + 1.0) / (n as f64 + 2.0)).collect()).unwrap();
    let t = rho(&s, PointsMode::Standard).unwrap();
    assert!((t.value(2, 0).unwrap() - 1.0).abs() <= 1e-13);
}

#[test]
fn aitken_is_second_epsilon_column() {
    for seed in 0..25 {
        let s = random_sample(seed, 12);
        let a = iterated_aitken(&s).unwrap();
        let e = epsilon(&s).unwrap();
        for n in 0..10 {
            let (x, y) = (a.get(1, n), e.get(2, n));
            match (x.get(), y.get()) {
                (Some(x), Some(y)) => assert!(rel(x, y) <= 1e-13 || (x - y).abs() <= 1e-13, "seed {seed} n {n}"),
                _ => assert_eq!(x.status, y.status),
            }
        }
    }
}

#[test]
fn iterated_theta_first_column_is_theta2() {
    for seed in 0..25 {
        let s = random_sample(seed, 12);
        let j = iterated_theta(&s).unwrap();
        for n in 0..9 {
            assert!(same(j.get(1, n), theta2(&s, n, Theta2Form::AnchoredNext).unwrap()));
        }
    }
    // the lozenge rules reach the same column by a different route
    for seed in 0..25 {
        let s = smooth_sample(seed, 12);
        let t = theta(&s).unwrap();
        let j = iterated_theta(&s).unwrap();
        for n in 0..9 {
            assert!(rel(t.value(2, n).unwrap(), j.value(1, n).unwrap()) <= 1e-12);
        }
    }
}

#[test]
fn theta2_u2_v1_chain() {
    for seed in 0..25 {
        let s = smooth_sample(seed, 12);
        let u = levin_u(&s, 1.0).unwrap();
        let v = levin_v(&s, 1.0).unwrap();
        for n in 0..8 {
            let th = theta2(&s, n, Theta2Form::AnchoredNext).unwrap().value;
            let u2 = u.value(2, n + 1).unwrap();
            let v1 = v.value(1, n + 1).unwrap();
            assert!(rel(th, u2) <= 1e-12, "seed {seed} n {n}: {th} {u2}");
            assert!(rel(th, v1) <= 1e-12, "seed {seed} n {n}: {th} {v1}");
            assert!(rel(u2_explicit(&s, n + 1).unwrap().value, u2) <= 1e-12);
            assert!(rel(v1_explicit(&s, n + 1).unwrap().value, u2) <= 1e-12);
        }
    }
}

#[test]
fn u2_does_not_depend_on_beta() {
    let s = smooth_sample(3, 10);
    let a = levin_u(&s, 1.0).unwrap();
    let b = levin_u(&s, 7.0).unwrap();
    for n in 1..6 {
        assert!(rel(a.value(2, n).unwrap(), b.value(2, n).unwrap()) <= 1e-12);
    }
}

#[test]
fn rho_variants_coincide() {
    for seed in 0..25 {
        let s = random_sample(seed, 12);
        let standard = rho(&s, PointsMode::Standard).unwrap();
        assert!(tables_identical(&rho_osada(&s, 1.0).unwrap(), &standard));
        let linear = generic_f(&s, &FRule::Linear { f0: 1.0, f1: 2.0 }, Initializer::Epsilon).unwrap();
        assert!(tables_identical(&linear, &standard));
        let theta = 0.5;
        let osada = generic_f(&s, &FRule::Linear { f0: theta, f1: theta + 1.0 }, Initializer::Epsilon).unwrap();
        assert!(tables_identical(&osada, &rho_osada(&s, theta).unwrap()));
    }
}

#[test]
fn unit_rule_is_epsilon() {
    for seed in 0..25 {
        let s = random_sample(seed, 12);
        let g = generic_f(&s, &FRule::Constant(1.0), Initializer::Epsilon).unwrap();
        assert!(tables_identical(&g, &epsilon(&s).unwrap()));
    }
}

#[test]
fn seps_through_generic_engine() {
    for seed in 0..25 {
        let s = random_sample(seed, 12);
        let g = generic_f(&s, &FRule::SepsF1, Initializer::Seps).unwrap();
        assert!(tables_identical(&g, &seps(&s).unwrap()));
    }
}

#[test]
fn custom_rule_matches_builtin() {
    let s = random_sample(11, 12);
    let custom = FRule::custom(0, |k, _, _| Ok(k as f64 + 1.0));
    let g = generic_f(&s, &custom, Initializer::Epsilon).unwrap();
    assert!(tables_identical(&g, &rho(&s, PointsMode::Standard).unwrap()));
}

#[test]
fn aitken_helper_matches_table() {
    let s = random_sample(5, 8);
    let t = iterated_aitken(&s).unwrap();
    for n in 0..6 {
        assert!(same(aitken_delta2(&s, n).unwrap(), t.get(1, n)));
    }
}
