use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::obligation::*;
use super::{CertifyFailure, Obligation};
use crate::exactmath::rational::{serde_rational, serde_rational_vec};
use crate::exactmath::{first_positive_from, first_sign_violation, Rational};
use crate::recurrence::Recurrence;
use crate::PolyQ;

/// `B(n) = b(n+1)a(n) − b(n)a(n+1)`, `C(n) = c(n+1)a(n) − c(n)a(n+1)` and
/// their coefficients at `n^(2δ−2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogConvData {
    pub b_poly: PolyQ,
    pub c_poly: PolyQ,
    #[serde(with = "serde_rational")]
    pub b_lead: Rational,
    #[serde(with = "serde_rational")]
    pub c_lead: Rational,
}

pub fn logconv_data(rec: &Recurrence) -> LogConvData {
    let one = Rational::one();
    let a = rec.a();
    let a1 = a.shift(&one);
    let det = |p: &PolyQ| &(&p.shift(&one) * a) - &(p * &a1);
    let b_poly = det(rec.b());
    let c_poly = det(rec.c());
    let (b_lead, c_lead) = match rec.degree() {
        0 => (Rational::zero(), Rational::zero()),
        d => (b_poly.coeff(2 * d - 2), c_poly.coeff(2 * d - 2)),
    };
    LogConvData { b_poly, c_poly, b_lead, c_lead }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogConvexityCertificate {
    #[serde(flatten)]
    pub data: LogConvData,
    /// `C/B`.
    #[serde(with = "serde_rational")]
    pub lambda0: Rational,
    pub m: u64,
    /// `u_0 … u_(m+2)`.
    #[serde(with = "serde_rational_vec")]
    pub prefix_checked: Vec<Rational>,
    pub obligations: Vec<Obligation>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LogConvexError {
    #[error("criterion needs B > 0 and C > 0 (B = {b}, C = {c})")]
    Precondition { b: Rational, c: Rational },
    #[error("{0}")]
    Failed(CertifyFailure),
}

/// Applies the log-convexity criterion to the tail `(u_n)_(n>=m)` and checks
/// the prefix `u_0 … u_(m+2)` directly. Success means the whole sequence is
/// positive and log-convex.
pub fn certify_logconvex(rec: &Recurrence, m: u64) -> Result<LogConvexityCertificate, LogConvexError> {
    let data = logconv_data(rec);
    if !data.b_lead.is_positive() || !data.c_lead.is_positive() {
        return Err(LogConvexError::Precondition { b: data.b_lead.clone(), c: data.c_lead.clone() });
    }
    let fail = |name: &str, n: Option<u64>, detail: String| {
        Err(LogConvexError::Failed(CertifyFailure::new(name, n, detail)))
    };
    let lambda0 = &data.c_lead / &data.b_lead;
    let tail = m + 1;

    if let Some(n) = first_positive_from(&rec.q_n_at(&lambda0), tail) {
        return fail(Q_NONPOSITIVE_TAIL, Some(n), format!("Q_n({}) > 0 at n = {}", lambda0, n));
    }
    let dominance = &data.b_poly.scale(&data.c_lead) - &data.c_poly.scale(&data.b_lead);
    if let Some(n) = first_sign_violation(&dominance, tail, |s| s.is_lt()) {
        return fail(DOMINANCE_TAIL, Some(n), format!("C*B(n) < B*C(n) at n = {}", n));
    }
    if let Some(n) = first_sign_violation(&data.c_poly.scale(&data.b_lead), tail, |s| s.is_lt()) {
        return fail(C_NONNEGATIVE_TAIL, Some(n), format!("B*C(n) < 0 at n = {}", n));
    }

    let mu = m as usize;
    let u = rec.terms(mu + 2);
    if !u[mu].is_positive() {
        return fail(START_POSITIVE, Some(m), format!("u_{} = {} is not positive", m, u[mu]));
    }
    if u[mu + 1] < &lambda0 * &u[mu] {
        return fail(START_RATIO, Some(m + 1), format!("u_{}/u_{} < {}", m + 1, m, lambda0));
    }
    if &u[mu + 2] * &u[mu] < &u[mu + 1] * &u[mu + 1] {
        return fail(START_RATIOS_MONOTONE, Some(m + 2), format!("u_{}/u_{} < u_{}/u_{}", m + 2, m + 1, m + 1, m));
    }
    if let Some(i) = u.iter().position(|x| !x.is_positive()) {
        return fail(PREFIX_POSITIVE, Some(i as u64), format!("u_{} = {} is not positive", i, u[i]));
    }
    if let Some(n) = (1..=mu + 1).find(|&n| &u[n - 1] * &u[n + 1] < &u[n] * &u[n]) {
        return fail(PREFIX_LOGCONVEX, Some(n as u64), format!("u_{}*u_{} < u_{}^2", n - 1, n + 1, n));
    }

    let obligations = [
        LEADS_POSITIVE,
        Q_NONPOSITIVE_TAIL,
        DOMINANCE_TAIL,
        C_NONNEGATIVE_TAIL,
        START_POSITIVE,
        START_RATIO,
        START_RATIOS_MONOTONE,
        PREFIX_POSITIVE,
        PREFIX_LOGCONVEX,
    ]
    .into_iter()
    .map(Obligation::ok)
    .collect();
    Ok(LogConvexityCertificate { data, lambda0, m, prefix_checked: u, obligations })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("u_{0} is not positive")]
pub struct NonPositiveTerm(pub usize);

/// First `n < N` with `u_(n+2)/u_(n+1) < u_(n+1)/u_n`, over `u_0 … u_(N+1)`.
pub fn ratio_monotonicity_evidence(rec: &Recurrence, n: usize) -> Result<Option<usize>, NonPositiveTerm> {
    ratio_monotonicity_of(&rec.terms(n + 1))
}

/// Same check on an explicit list of terms.
pub fn ratio_monotonicity_of(u: &[Rational]) -> Result<Option<usize>, NonPositiveTerm> {
    if let Some(i) = u.iter().position(|x| !x.is_positive()) {
        return Err(NonPositiveTerm(i));
    }
    Ok((0..u.len().saturating_sub(2)).find(|&i| &u[i + 2] * &u[i] < &u[i + 1] * &u[i + 1]))
}
