use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::obligation::*;
use super::{logconv_data, CertifyError, CertifyFailure, Obligation, PositivityCertificate};
use crate::exactmath::{first_positive_from, first_sign_violation, ExactField, ExactReal, QuadExt, Rational};
use crate::recurrence::Recurrence;

/// Checks the criterion for a fixed `λ0` and start index `m`, then the finite
/// prefix `u_0 … u_(m−1)`. Success means `u_n > 0` for every `n >= 0`.
pub fn certify_positive_with(
    rec: &Recurrence,
    lambda0: &ExactReal,
    m: u64,
) -> Result<PositivityCertificate, CertifyFailure> {
    let terms = rec.terms(m as usize + 1);
    certify_with_terms(rec, lambda0, m, &terms)
}

fn certify_with_terms(
    rec: &Recurrence,
    lambda0: &ExactReal,
    m: u64,
    terms: &[Rational],
) -> Result<PositivityCertificate, CertifyFailure> {
    let obligations = match lambda0 {
        ExactReal::Rational(r) => check_obligations(rec, r, m, terms)?,
        ExactReal::Quadratic(q) => check_obligations(rec, q, m, terms)?,
    };
    Ok(PositivityCertificate {
        lambda0: lambda0.clone(),
        m,
        q_from: m.max(1),
        prefix_checked: terms[..m as usize + 2].to_vec(),
        obligations,
    })
}

fn check_obligations<T: ExactField>(
    rec: &Recurrence,
    lam: &T,
    m: u64,
    terms: &[Rational],
) -> Result<Vec<Obligation>, CertifyFailure> {
    let mu = m as usize;
    if !lam.is_positive_exact() {
        return Err(CertifyFailure::new(LAMBDA0_POSITIVE, None, "lambda0 must be positive"));
    }
    // The recurrence only acts for n >= 1.
    let q_from = m.max(1);
    let q = rec.q_n_at(lam);
    if let Some(n) = first_positive_from(&q, q_from) {
        return Err(CertifyFailure::new(
            Q_NONPOSITIVE_TAIL,
            Some(n),
            format!("Q_n(lambda0) > 0 at n = {}", n),
        ));
    }
    let um = &terms[mu];
    if !um.is_positive() {
        return Err(CertifyFailure::new(START_POSITIVE, Some(m), format!("u_{} = {} is not positive", m, um)));
    }
    let gap = T::from(terms[mu + 1].clone()) - lam.clone() * T::from(um.clone());
    if gap.sign() == Ordering::Less {
        return Err(CertifyFailure::new(
            START_RATIO,
            Some(m + 1),
            format!("u_{} < lambda0 * u_{}", m + 1, m),
        ));
    }
    if let Some(i) = terms[..mu].iter().position(|u| !u.is_positive()) {
        return Err(CertifyFailure::new(PREFIX_POSITIVE, Some(i as u64), format!("u_{} = {} is not positive", i, terms[i])));
    }
    Ok([LAMBDA0_POSITIVE, Q_NONPOSITIVE_TAIL, START_POSITIVE, START_RATIO, PREFIX_POSITIVE]
        .into_iter()
        .map(Obligation::ok)
        .collect())
}

/// One failed `(λ0, m)` pair of an automatic search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Attempt {
    pub lambda0: ExactReal,
    pub m: u64,
    pub failure: CertifyFailure,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Exhausted {
    pub attempts: Vec<Attempt>,
}

/// Candidate `λ0` values in search order: `λ1`, then `1`, then `C/B`.
/// Only positive values are kept, duplicates dropped.
pub fn lambda_candidates(rec: &Recurrence) -> Vec<ExactReal> {
    let mut out: Vec<ExactReal> = Vec::new();
    let ch = rec.characteristic();
    if let Some(l1) = ch.lambda1() {
        out.push(l1.clone());
    }
    out.push(ExactReal::from(Rational::one()));
    let lc = logconv_data(rec);
    if lc.b_lead.is_positive() && lc.c_lead.is_positive() {
        out.push(ExactReal::from(&lc.c_lead / &lc.b_lead));
    }
    let mut uniq: Vec<ExactReal> = Vec::new();
    for c in out {
        if c.sign() == Ordering::Greater && !uniq.contains(&c) {
            uniq.push(c);
        }
    }
    uniq
}

/// Tries every candidate `λ0` with `m = 0 … m_max`, in that lexicographic
/// order, and returns the first certificate.
pub fn auto_certify_positive(rec: &Recurrence, m_max: u64) -> Result<PositivityCertificate, Exhausted> {
    let terms = rec.terms(m_max as usize + 1);
    let mut attempts = Vec::new();
    for lam in lambda_candidates(rec) {
        for m in 0..=m_max {
            match certify_with_terms(rec, &lam, m, &terms) {
                Ok(cert) => return Ok(cert),
                Err(failure) => attempts.push(Attempt { lambda0: lam.clone(), m, failure }),
            }
        }
    }
    Err(Exhausted { attempts })
}

/// `b(n) >= a(n) + c(n)` for every `n >= 1`, and `u_1 >= u_0 > 0`.
pub fn check_ratio_dominance(rec: &Recurrence) -> bool {
    let slack = &(rec.b() - rec.a()) - rec.c();
    first_sign_violation(&slack, 1, |s| s == Ordering::Less).is_none()
        && rec.u0().is_positive()
        && rec.u1() >= rec.u0()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "decision", rename_all = "snake_case")]
pub enum ConstantDecision {
    Positive { certificate: PositivityCertificate },
    NotPositive {
        violated: String,
        /// First index with `u_n <= 0`, if found within the search cap.
        first_nonpositive: Option<u64>,
    },
}

/// Terms searched for a nonpositive witness once non-positivity is proved.
const WITNESS_SEARCH_CAP: usize = 5000;

/// Complete decision for constant coefficients: positive iff `b² >= 4ac`
/// and `u_1 >= λ1·u_0 > 0`.
pub fn decide_constant(rec: &Recurrence) -> Result<ConstantDecision, CertifyError> {
    if rec.degree() != 0 {
        return Err(CertifyError::WrongDegree { expected: 0, actual: rec.degree() });
    }
    let not_positive = |why: &str| {
        let first = rec
            .iter_terms()
            .take(WITNESS_SEARCH_CAP)
            .position(|u| !u.is_positive())
            .map(|i| i as u64);
        Ok(ConstantDecision::NotPositive { violated: why.to_string(), first_nonpositive: first })
    };
    let ch = rec.characteristic();
    let Some(l1) = ch.lambda1() else {
        return not_positive("b^2 >= 4ac");
    };
    if !rec.u0().is_positive() {
        return not_positive("u_0 > 0");
    }
    let lam1 = l1.to_quad();
    let gap = QuadExt::from(rec.u1().clone()) - lam1.clone() * QuadExt::from(rec.u0().clone());
    if gap.sign() == Ordering::Less {
        return not_positive("u_1 >= lambda1 * u_0");
    }
    // λ1 = 0 only when c vanishes; then any λ0 in (0, min(u1/u0, λ2)] works.
    let lambda0 = if lam1.is_zero() {
        if !rec.u1().is_positive() {
            return not_positive("u_1 > 0");
        }
        let l2 = ch.lambda2().expect("roots exist").as_rational().cloned().expect("c = 0 gives rational roots");
        ExactReal::from((rec.u1() / rec.u0()).min(l2))
    } else {
        l1.clone()
    };
    let certificate = certify_positive_with(rec, &lambda0, 0)
        .expect("constant-coefficient criterion holds once the conditions do");
    Ok(ConstantDecision::Positive { certificate })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "decision", rename_all = "snake_case")]
pub enum LinearDecision {
    Certified { certificate: PositivityCertificate },
    Inconclusive { reason: String },
}

/// Linear coefficients: `b² >= 4ac`, `a_0λ1² − b_0λ1 + c_0 <= 0` and
/// `u_1 >= λ1·u_0` give a certificate with `λ0 = λ1`, `m = 0`.
pub fn decide_linear(rec: &Recurrence) -> Result<LinearDecision, CertifyError> {
    if rec.degree() != 1 {
        return Err(CertifyError::WrongDegree { expected: 1, actual: rec.degree() });
    }
    let inconclusive = |r: &str| Ok(LinearDecision::Inconclusive { reason: r.to_string() });
    let ch = rec.characteristic();
    let Some(l1) = ch.lambda1() else {
        return inconclusive("negative discriminant");
    };
    if l1.sign() != Ordering::Greater {
        return inconclusive("lambda1 is not positive");
    }
    match certify_positive_with(rec, l1, 0) {
        Ok(certificate) => Ok(LinearDecision::Certified { certificate }),
        Err(f) => inconclusive(&f.to_string()),
    }
}

/// Re-runs the induction step of the criterion along the actual terms:
/// for every `n` in `[m+1, n_max)`, `u_n >= λ0·u_(n−1) > 0` and
/// `Q_n(λ0) <= 0` must hold and force `u_(n+1) >= λ0·u_n`.
/// Returns the first `n` where the chain breaks.
pub fn verify_induction_steps(rec: &Recurrence, cert: &PositivityCertificate, n_max: u64) -> Result<(), u64> {
    match &cert.lambda0 {
        ExactReal::Rational(r) => induction_chain(rec, r, cert.m, n_max),
        ExactReal::Quadratic(q) => induction_chain(rec, q, cert.m, n_max),
    }
}

fn induction_chain<T: ExactField>(rec: &Recurrence, lam: &T, m: u64, n_max: u64) -> Result<(), u64> {
    let q = rec.q_n_at(lam);
    let terms: Vec<T> = rec.terms(n_max as usize).into_iter().map(T::from).collect();
    let dominates = |n: usize| {
        let prev = terms[n - 1].clone();
        prev.is_positive_exact() && (terms[n].clone() - lam.clone() * prev).is_nonnegative_exact()
    };
    for n in (m + 1).max(1)..n_max {
        let i = n as usize;
        let hypothesis = dominates(i) && !q.eval_int(n as i64).is_positive_exact();
        if !hypothesis || !dominates(i + 1) {
            return Err(n);
        }
    }
    Ok(())
}
