mod common;

use proptest::prelude::*;

use common::*;
use recpos::certify::{auto_certify_positive, decide_constant, ConstantDecision};
use recpos::contfrac::*;
use recpos::exactmath::rational::to_f64;
use recpos::{Rational, Recurrence};

fn tol() -> Rational {
    q(1, 1_000_000_000)
}

#[test]
fn szego_tail_value() {
    let rec = corpus_rec("szego");
    let est = rho_lower_bounds(&rec, &tol(), 500).unwrap();
    assert!(est.rigorous && est.converged);
    let rho = to_f64(est.rho_hat.as_ref().unwrap());
    assert!((rho - 5.50787).abs() < 1e-4);
    // Positive solutions need u_1 >= ρ_0·u_0, so ρ̂ stays below u_1/u_0 = 12.
    assert!(est.lower_bounds.iter().all(|r| r <= &z(12)));
    assert!(matches!(refute_positivity(&rec, 200), Refutation::Inconclusive { .. }));

    let low = rec.with_initial(z(1), z(5));
    match refute_positivity(&low, 200) {
        Refutation::Refuted { rho_hat, .. } => assert!(rho_hat > z(5)),
        other => panic!("{:?}", other),
    }
    let first_bad = low.iter_terms().take(400).position(|u| u <= z(0));
    assert!(first_bad.is_some());
}

#[test]
fn refutation_outcomes() {
    let rec = corpus_rec("apery").with_initial(z(0), z(1));
    assert_eq!(refute_positivity(&rec, 10), Refutation::InitialNonPositive);
    // u_n = 1 − n/10 for b = 2, c = 1.
    let r = constant_rec(z(2), z(1), z(1), q(9, 10));
    assert!(matches!(refute_positivity(&r, 100), Refutation::Refuted { .. }));
    let r = constant_rec(z(1), z(1), z(1), z(1));
    match refute_positivity(&r, 100) {
        Refutation::Inconclusive { reason } => assert!(reason.contains("not rigorous")),
        other => panic!("{:?}", other),
    }
    let v = serde_json::to_value(refute_positivity(&corpus_rec("szego").with_initial(z(1), z(5)), 50)).unwrap();
    assert_eq!(v["outcome"], "refuted");
}

#[test]
fn bounds_match_backward_recurrence() {
    for key in ["szego", "cooper", "kauers_zeilberger", "lewy_askey"] {
        let rec = corpus_rec(key);
        let est = rho_lower_bounds(&rec, &q(1, 1_000_000_000_000), 25).unwrap();
        for (k, lb) in est.lower_bounds.iter().enumerate().skip(1) {
            let v = minimal_solution_estimate(&rec, k as u64 + 1, 1).unwrap();
            assert_eq!(&v[1], lb, "{} at depth {}", key, k + 1);
        }
    }
}

#[test]
fn argument_errors() {
    let rec = corpus_rec("szego");
    assert!(matches!(rho_lower_bounds(&rec, &z(0), 10), Err(ContFracError::BadArgs(_))));
    assert!(matches!(minimal_solution_estimate(&rec, 3, 3), Err(ContFracError::BadArgs(_))));
    assert!(matches!(minimal_solution_estimate(&rec, 3, 0), Err(ContFracError::BadArgs(_))));
    assert!(matches!(minimal_solution_estimate(&corpus_rec("straub(0)"), 8, 2), Err(ContFracError::ZeroC(8))));
    assert_eq!(ratio_limit_probe(&corpus_rec("a006077"), 5, 10).unwrap_err(), ContFracError::NonPositiveDiscriminant);
}

#[test]
fn cancellation() {
    let token = CancelToken::new();
    token.cancel();
    let r = rho_lower_bounds_at(&corpus_rec("cooper"), 0, &tol(), 500, Some(&token));
    assert_eq!(r.unwrap_err(), ContFracError::Cancelled(0));
    let live = CancelToken::new();
    assert!(rho_lower_bounds_at(&corpus_rec("cooper"), 0, &tol(), 500, Some(&live)).is_ok());
}

#[test]
fn later_tails() {
    let rec = corpus_rec("cooper");
    let est = rho_lower_bounds_at(&rec, 3, &tol(), 300, None).unwrap();
    assert_eq!(est.i, 3);
    assert!(est.rigorous);
    for (k, lb) in est.lower_bounds.iter().enumerate().skip(1) {
        // Same bound from the recurrence shifted by three steps.
        let a = rec.a().shift(&z(3));
        let b = rec.b().shift(&z(3));
        let c = rec.c().shift(&z(3));
        let shifted = Recurrence::new(a, b, c, z(1), z(1)).unwrap();
        let v = minimal_solution_estimate(&shifted, k as u64 + 1, 1).unwrap();
        assert_eq!(&v[1], lb);
        if k > 4 {
            break;
        }
    }
}

#[test]
fn probe_tracks_smaller_root() {
    let probe = ratio_limit_probe(&corpus_rec("cooper"), 30, 12).unwrap();
    assert_eq!(probe.ratios.len(), 30);
    let last: f64 = probe.ratios.last().unwrap().1.as_ref().unwrap().parse().unwrap();
    let l1: f64 = probe.lambda1.parse().unwrap();
    assert!((l1 - 12.0).abs() < 1e-9);
    assert!((last - l1).abs() / l1 < 0.2);
}

#[test]
fn estimate_json() {
    let est = rho_lower_bounds(&corpus_rec("szego"), &tol(), 500).unwrap();
    let back: CFEstimate = serde_json::from_str(&serde_json::to_string(&est).unwrap()).unwrap();
    assert_eq!(back, est);
    let s = est.summary(8, 3);
    assert_eq!(s.lower_bounds_decimal.len(), 3);
    assert!(s.rho_hat_decimal.unwrap().starts_with("5.50787"));
}

fn positive_constant() -> impl Strategy<Value = Recurrence> {
    (1i64..30, 1i64..4, 1i64..20, 1i64..4, 1i64..10, -10i64..60)
        .prop_map(|(b, bd, c, cd, u0, u1)| constant_rec(q(b, bd), q(c, cd), z(u0), q(u1, 3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn refutations_are_sound(rec in positive_constant()) {
        if let Refutation::Refuted { .. } = refute_positivity(&rec, 200) {
            let positive = matches!(decide_constant(&rec).unwrap(), ConstantDecision::Positive { .. });
            prop_assert!(!positive);
        }
    }

    #[test]
    fn bounds_stay_below_positive_start(rec in positive_constant()) {
        if auto_certify_positive(&rec, 5).is_ok() {
            let est = rho_lower_bounds(&rec, &tol(), 200).unwrap();
            prop_assert!(est.rigorous);
            let start = rec.u1() / rec.u0();
            for lb in &est.lower_bounds {
                prop_assert!(lb <= &start);
            }
            prop_assert!(est.lower_bounds.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn convergent_determinant(rec in positive_constant(), beta0 in -5i64..5, n in 1u64..25) {
        if let Ok(cs) = convergents(&rec, n, &z(beta0)) {
            let mut gam = z(1);
            for k in 1..=n as usize {
                gam *= rec.gamma(k as u64);
                let lhs = &cs[k].numer * &cs[k - 1].denom - &cs[k - 1].numer * &cs[k].denom;
                prop_assert_eq!(lhs, -gam.clone());
            }
        }
    }
}
