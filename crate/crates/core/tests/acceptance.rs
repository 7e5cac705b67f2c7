//! End-to-end acceptance checks. Runs as a plain binary and prints one
//! PASS/FAIL line per criterion; exits nonzero if any criterion fails.

mod common;

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use common::*;
use recpos::certify::{
    auto_certify_positive, certify_logconvex, certify_positive_with, check_ratio_dominance, classify_discriminant,
    decide_constant, logconv_data, ratio_monotonicity_evidence, verify_induction_steps, ConstantDecision,
    PositivityCertificate, Verdict,
};
use recpos::contfrac::{convergents, minimal_solution_estimate, refute_positivity, rho_lower_bounds, Refutation};
use recpos::corpus::{corpus_lookup, standard_instances};
use recpos::exactmath::{ExactField, QuadExt};
use recpos::report::{analyze, AnalyzeOptions, PositivityResult};
use recpos::tridiag::{desnanot_jacobi_check, is_tn_contiguous, is_tn_leading, is_tn_principal, m1_truncation};
use recpos::{DenseMatrixQ, ExactReal, PolyQ, Rational, Recurrence};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rec(key: &str) -> Recurrence {
    corpus_lookup(key).unwrap().rec
}

fn certified(report_pos: &PositivityResult) -> Result<&PositivityCertificate, String> {
    match report_pos {
        PositivityResult::Certified { certificate, .. } => Ok(certificate),
        other => Err(format!("expected a certificate, got {:?}", other)),
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Check {
    let t = start.elapsed();
    ensure!(t < limit, "{} took {:?}, limit {:?}", what, t, limit);
    Ok(())
}

fn szego() -> Check {
    let start = Instant::now();
    let s = rec("szego");
    let report = analyze(&s, &AnalyzeOptions::default());
    let cert = certified(&report.positivity)?;
    ensure!(cert.lambda0 == ExactReal::from(q(27, 2)) && cert.m == 1, "got lambda0 = {}, m = {}", cert.lambda0, cert.m);
    let qn = s.q_n_at(&q(27, 2));
    ensure!(qn == PolyQ::new(vec![q(-81, 2), q(-729, 2)]), "Q_n(27/2) = {}", qn);
    ensure!(s.terms(2) == vec![z(1), z(12), z(198)], "terms {:?}", s.terms(2));
    within(start, Duration::from_secs(1), "szego")
}

fn lewy_askey() -> Check {
    let start = Instant::now();
    let h = rec("lewy_askey");
    let report = analyze(&h, &AnalyzeOptions::default());
    let cert = certified(&report.positivity)?;
    ensure!(cert.lambda0 == ExactReal::from(z(16)) && cert.m == 0, "got lambda0 = {}, m = {}", cert.lambda0, cert.m);
    let qn = h.q_n_at(&z(16));
    ensure!(qn == poly(&[128, -256]), "Q_n(16) = {}", qn);
    ensure!(h.u1() == &z(24) && h.u1() > &(z(16) * h.u0()), "h_1 = {}", h.u1());
    within(start, Duration::from_secs(1), "lewy_askey")
}

fn kauers_zeilberger() -> Check {
    let d = rec("kauers_zeilberger");
    ensure!(check_ratio_dominance(&d), "b(n) >= a(n) + c(n) not established");
    let cert = certify_positive_with(&d, &ExactReal::from(z(1)), 0).map_err(|f| f.to_string())?;
    ensure!(cert.lambda0 == ExactReal::from(z(1)), "lambda0 {}", cert.lambda0);
    let ch = d.characteristic();
    let l1 = QuadExt::new(z(12), z(-8), big(2)).unwrap();
    let l2 = QuadExt::new(z(12), z(8), big(2)).unwrap();
    ensure!(ch.lambda1() == Some(&ExactReal::Quadratic(l1)), "lambda1 = {:?}", ch.lambda1());
    ensure!(ch.lambda2() == Some(&ExactReal::Quadratic(l2)), "lambda2 = {:?}", ch.lambda2());
    Ok(())
}

fn apery() -> Check {
    let entry = corpus_lookup("apery").unwrap();
    let a = &entry.rec;
    auto_certify_positive(a, 50).map_err(|e| format!("{} failed attempts", e.attempts.len()))?;
    let expected: Vec<Rational> = [1, 5, 73, 1445, 33001, 819005].iter().map(|&x| z(x)).collect();
    ensure!(a.terms(5) == expected, "terms {:?}", a.terms(5));
    ensure!(entry.oracle_terms(5).unwrap() == expected, "closed form disagrees");
    let terms = a.terms(12);
    for k in 1..=12 {
        let minors = m1_truncation(a, k).unwrap().leading_principal_minors();
        ensure!(minors == terms[1..=k], "leading minors of order {} differ from u_1..u_{}", k, k);
    }
    Ok(())
}

fn straub() -> Check {
    for a in ["-1", "0", "1/2", "1"] {
        let r = rec(&format!("straub({})", a));
        auto_certify_positive(&r, 50).map_err(|_| format!("no certificate for a = {}", a))?;
    }
    for a in ["3/2", "2"] {
        let r = rec(&format!("straub({})", a));
        let class = classify_discriminant(&r);
        ensure!(class.verdict == Verdict::OscillatoryAll, "a = {}: {:?}", a, class.verdict);
        ensure!(!r.sign_changes(200).is_empty(), "a = {}: no sign change up to 200", a);
    }
    Ok(())
}

fn a006077() -> Check {
    let entry = corpus_lookup("a006077").unwrap();
    let class = classify_discriminant(&entry.rec);
    ensure!(class.verdict == Verdict::OscillatoryAll && class.disc == z(-27), "{:?}", class);
    entry.cross_check(30).unwrap().map_err(|m| m.to_string())?;
    ensure!(!entry.rec.sign_changes(50).is_empty(), "no sign change up to 50");
    Ok(())
}

fn cooper() -> Check {
    let start = Instant::now();
    let c = rec("cooper");
    let data = logconv_data(&c);
    ensure!(data.b_poly == poly(&[54, 220, 330, 200, 42]), "B(n) = {}", data.b_poly);
    ensure!(data.c_poly == poly(&[180, 1200, 2952, 2328, 576]), "C(n) = {}", data.c_poly);
    ensure!(data.b_lead == z(42) && data.c_lead == z(576), "leads {} {}", data.b_lead, data.c_lead);
    let dominance = &data.b_poly.scale(&data.c_lead) - &data.c_poly.scale(&data.b_lead);
    ensure!(dominance == poly(&[23544, 76320, 66096, 17424]), "C*B(n) - B*C(n) = {}", dominance);
    let cert = certify_logconvex(&c, 10).map_err(|e| e.to_string())?;
    ensure!(cert.lambda0 == q(96, 7), "lambda0 {}", cert.lambda0);
    ensure!(ratio_monotonicity_evidence(&c, 100) == Ok(None), "ratio drop within 100 terms");
    within(start, Duration::from_secs(2), "cooper")
}

/// Positivity of `u_0 … u_N` for `u_(n+1) = (i/2)u_n − (j/4)u_(n−1)`, `u_0 = 1`,
/// `u_1 = s/3`, run on the integers `v_n = 3·4^n·u_n`.
fn scaled_positive(i: i64, j: i64, s: i64, n: usize) -> bool {
    let (mut prev, mut cur) = (BigInt::from(3), BigInt::from(4 * s));
    if !prev.is_positive() || !cur.is_positive() {
        return false;
    }
    for _ in 1..n {
        let next = &cur * (2 * i) - &prev * (4 * j);
        if !next.is_positive() {
            return false;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    true
}

fn constant_grid() -> Check {
    let mut positives = 0;
    let mut false_refutations = 0;
    for i in 1..=20 {
        for j in 1..=20 {
            let (b, c) = (q(i, 2), q(j, 4));
            for s in [1, 3, 6] {
                let u1 = q(s, 3);
                let r = constant_rec(b.clone(), c.clone(), z(1), u1.clone());
                let exhaustive = scaled_positive(i, j, s, 500);
                let decided = matches!(decide_constant(&r).unwrap(), ConstantDecision::Positive { .. });
                ensure!(decided == exhaustive, "b = {}, c = {}, u1 = {}: decided {}, terms {}", b, c, u1, decided, exhaustive);
                if decided {
                    positives += 1;
                    if matches!(refute_positivity(&r, 200), Refutation::Refuted { .. }) {
                        false_refutations += 1;
                    }
                }
            }
        }
    }
    ensure!(false_refutations == 0, "{} false refutations", false_refutations);
    ensure!(positives > 0, "grid has no positive instance");
    Ok(())
}

fn continued_fractions() -> Check {
    let r = constant_rec(z(3), z(1), z(1), z(1));
    let tol = q(1, 1_000_000_000_000);
    let est = rho_lower_bounds(&r, &tol, 200).map_err(|e| e.to_string())?;
    ensure!(est.rigorous, "estimate not rigorous");
    let rho_hat = est.rho_hat.clone().ok_or("no bound")?;
    // (3 − √5)/2
    let limit = QuadExt::new(q(3, 2), q(-1, 2), big(5)).unwrap();
    let gap = limit - QuadExt::from(rho_hat);
    ensure!(gap.sign() != Ordering::Less, "bound exceeds the limit");
    ensure!((gap - QuadExt::from(q(1, 1_000_000_000))).sign() == Ordering::Less, "not within 1e-9 after {} iterations", est.iterations);

    let eps = q(1, 100_000_000);
    for (name, r) in [("beta = 3, gamma = 1", r.clone()), ("szego", rec("szego"))] {
        let shallow = minimal_solution_estimate(&r, 40, 10).map_err(|e| e.to_string())?;
        let deep = minimal_solution_estimate(&r, 80, 10).map_err(|e| e.to_string())?;
        for n in 0..10 {
            let d = &shallow[n + 1] / &shallow[n] - &deep[n + 1] / &deep[n];
            ensure!(d.abs() < eps, "{}: ratio {} moved by {} under depth doubling", name, n, d);
        }
    }

    for entry in standard_instances() {
        let r = &entry.rec;
        if r.u0().is_zero() {
            continue;
        }
        let beta0 = r.u1() / r.u0();
        let cs = convergents(r, 30, &beta0);
        let Ok(cs) = cs else { continue };
        let mut gammas = Rational::one();
        for n in 1..=30 {
            gammas *= r.gamma(n as u64);
            let lhs = &cs[n].numer * &cs[n - 1].denom - &cs[n - 1].numer * &cs[n].denom;
            ensure!(lhs == -gammas.clone(), "{}: determinant identity fails at n = {}", entry.rec.label().unwrap(), n);
        }
    }
    Ok(())
}

fn harmonic(n: usize) -> Rational {
    (1..=n as i64).map(|k| q(1, k)).fold(Rational::zero(), |a, b| a + b)
}

fn laguerre() -> Check {
    let l1 = rec("laguerre(1)");
    ensure!(!l1.sign_changes(60).is_empty(), "no sign change up to 60 at x = 1");
    let l0 = rec("laguerre(0)");
    ensure!(l0.terms(60).iter().all(|u| u == &z(1)), "x = 0 with L_0 = L_1 = 1 is not constant");
    let u = l0.with_initial(z(1), z(2)).terms(60);
    for (n, un) in u.iter().enumerate() {
        ensure!(un == &(z(1) + harmonic(n)), "L_{}(0) = {} differs from 1 + H_{}", n, un, n);
    }
    for n in 1..60 {
        let second = &u[n + 1] - z(2) * &u[n] + &u[n - 1];
        ensure!(!second.is_positive(), "second difference positive at n = {}", n);
    }
    Ok(())
}

fn property_suites() -> Check {
    let mut r = rng(0x5eed);
    for trial in 0..500 {
        let k = r.gen_range(1..=6);
        let rows: Vec<Vec<Rational>> =
            (0..=k).map(|_| (0..=k).map(|_| random_rational(&mut r, -9, 9, 5)).collect()).collect();
        let m = DenseMatrixQ::from_rows(rows).unwrap();
        ensure!(desnanot_jacobi_check(&m).unwrap(), "Desnanot-Jacobi fails on trial {}", trial);
    }

    let mut tn_count = 0;
    for trial in 0..500 {
        let k = r.gen_range(1..=8);
        let (ints, t) = random_irreducible_tridiagonal(&mut r, k);
        let oracle = tn_all_minors(&ints);
        let leading = is_tn_leading(&t);
        let principal = is_tn_principal(&t).unwrap();
        let contiguous = is_tn_contiguous(&t).unwrap();
        ensure!(
            leading == oracle && principal == oracle && contiguous == oracle,
            "trial {} ({:?}): all minors {}, leading {}, principal {}, contiguous {}",
            trial, ints, oracle, leading, principal, contiguous
        );
        tn_count += oracle as usize;
    }
    ensure!(tn_count > 50 && tn_count < 450, "unbalanced sample: {} of 500 TN", tn_count);

    let mut issued = 0;
    for entry in standard_instances() {
        let r = &entry.rec;
        let mut certs: Vec<PositivityCertificate> = auto_certify_positive(r, 50).into_iter().collect();
        for lam in [z(1), q(27, 2), z(16), q(96, 7), z(12)] {
            for m in [0, 1, 5, 7, 10] {
                if let Ok(c) = certify_positive_with(r, &ExactReal::from(lam.clone()), m) {
                    certs.push(c);
                }
            }
        }
        for c in &certs {
            issued += 1;
            let n_max = 3 * (c.m + 10);
            verify_induction_steps(r, c, n_max.max(100))
                .map_err(|n| format!("{}: induction step breaks at n = {}", r.label().unwrap(), n))?;
        }
    }
    ensure!(issued > 10, "only {} certificates exercised", issued);
    Ok(())
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn main() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("szego reproduction", szego),
        ("lewy-askey", lewy_askey),
        ("kauers-zeilberger", kauers_zeilberger),
        ("apery", apery),
        ("straub family", straub),
        ("a006077", a006077),
        ("cooper log-convexity", cooper),
        ("constant-coefficient soundness", constant_grid),
        ("continued fractions", continued_fractions),
        ("laguerre", laguerre),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match check() {
            Ok(()) => println!("criterion {:>2} PASS  {} ({:.0?})", i + 1, name, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {}: {}", i + 1, name, why);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
