//! Continued-fraction machinery.
//!
//! With `β_n = b(n)/a(n)` and `γ_n = c(n)/a(n)`, the tail value
//! `ρ_i = γ_(i+1)/(β_(i+1) − γ_(i+2)/(β_(i+2) − …))` equals `γ_(i+1)/ℓ_(i+1)`
//! where `ℓ_(i+1)` is the limit of the minor quotients `u_(i+1,n)/u_(i+2,n)`
//! of the tridiagonal matrix `J_(i+1)`. While those minors stay positive the
//! quotients decrease, so the estimates `γ_(i+1)·u_(i+2,n)/u_(i+1,n)` increase
//! toward `ρ_i` from below. Only lower bounds are ever claimed: they can
//! refute positivity (a positive solution needs `u_1 >= ρ_0·u_0`) but never
//! certify it.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactmath::rational::{serde_rational, serde_rational_opt, serde_rational_vec, to_decimal};
use crate::exactmath::Rational;
use crate::recurrence::Recurrence;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ContFracError {
    #[error("partial denominator B({0}) vanishes")]
    ZeroDenominator(u64),
    #[error("c({0}) = 0, backward recurrence undefined")]
    ZeroC(u64),
    #[error("backward solution vanishes at n = 0")]
    ZeroAtOrigin,
    #[error("invalid arguments: {0}")]
    BadArgs(String),
    #[error("cancelled after {0} iterations")]
    Cancelled(u64),
    #[error("ratio probe needs a positive discriminant")]
    NonPositiveDiscriminant,
}

/// Cooperative cancellation flag, checked once per iteration.
#[derive(Debug, Clone, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, AtomicOrdering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(AtomicOrdering::Relaxed)
    }
}

/// Partial numerator `A(n)` and denominator `B(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Convergent {
    pub numer: Rational,
    pub denom: Rational,
}

impl Convergent {
    pub fn value(&self) -> Rational {
        &self.numer / &self.denom
    }
}

/// Convergents `n = 0 … N` of `β_0 − γ_1/(β_1 − γ_2/(β_2 − …))`, from
/// `A(−1) = 1, A(0) = β_0, B(−1) = 0, B(0) = 1` and the recurrence
/// `X(n) = β_n·X(n−1) − γ_n·X(n−2)`.
pub fn convergents(rec: &Recurrence, n: u64, beta0: &Rational) -> Result<Vec<Convergent>, ContFracError> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let (mut a_prev, mut a) = (Rational::one(), beta0.clone());
    let (mut b_prev, mut b) = (Rational::zero(), Rational::one());
    out.push(Convergent { numer: a.clone(), denom: b.clone() });
    for k in 1..=n {
        let (beta, gamma) = (rec.beta(k), rec.gamma(k));
        let a_next = &beta * &a - &gamma * &a_prev;
        let b_next = &beta * &b - &gamma * &b_prev;
        if b_next.is_zero() {
            return Err(ContFracError::ZeroDenominator(k));
        }
        a_prev = std::mem::replace(&mut a, a_next);
        b_prev = std::mem::replace(&mut b, b_next);
        out.push(Convergent { numer: a.clone(), denom: b.clone() });
    }
    Ok(out)
}

/// Lower estimates of `ρ_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CFEstimate {
    pub i: u64,
    /// Nondecreasing while `rigorous` holds.
    #[serde(with = "serde_rational_vec")]
    pub lower_bounds: Vec<Rational>,
    pub iterations: u64,
    pub converged: bool,
    #[serde(with = "serde_rational_opt")]
    pub rho_hat: Option<Rational>,
    /// All minors seen were positive and the bounds nondecreasing.
    pub rigorous: bool,
    /// Index `n` where a minor `u_(i+1,n)` or `u_(i+2,n)` was not positive.
    pub divergence_at: Option<u64>,
}

/// JSON view of a [`CFEstimate`] with decimal renderings.
#[derive(Debug, Clone, Serialize)]
pub struct CFSummary {
    pub i: u64,
    pub iterations: u64,
    pub converged: bool,
    pub rigorous: bool,
    pub divergence_at: Option<u64>,
    #[serde(with = "serde_rational_opt")]
    pub rho_hat: Option<Rational>,
    pub rho_hat_decimal: Option<String>,
    pub lower_bounds_decimal: Vec<String>,
}

impl CFEstimate {
    /// Decimal rendering of the last `keep` bounds plus the exact final bound.
    pub fn summary(&self, digits: usize, keep: usize) -> CFSummary {
        let skip = self.lower_bounds.len().saturating_sub(keep);
        CFSummary {
            i: self.i,
            iterations: self.iterations,
            converged: self.converged,
            rigorous: self.rigorous,
            divergence_at: self.divergence_at,
            rho_hat: self.rho_hat.clone(),
            rho_hat_decimal: self.rho_hat.as_ref().map(|r| to_decimal(r, digits)),
            lower_bounds_decimal: self.lower_bounds[skip..].iter().map(|r| to_decimal(r, digits)).collect(),
        }
    }
}

/// `num/den` with `den > 0`, kept unreduced.
struct Frac {
    num: BigInt,
    den: BigInt,
}

impl Frac {
    fn to_rational(&self) -> Rational {
        Rational::new(self.num.clone(), self.den.clone())
    }

    fn cmp(&self, other: &Frac) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

/// `a(n), b(n), c(n)` times the least common denominator of the three.
fn integer_coefficients(rec: &Recurrence, n: u64) -> (BigInt, BigInt, BigInt) {
    let vals = [rec.a(), rec.b(), rec.c()].map(|p| p.eval_int(n as i64));
    let den = vals.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let [a, b, c] = vals.map(|v| (v * Rational::from_integer(den.clone())).to_integer());
    (a, b, c)
}

/// Successive bounds `γ_(i+1)·u_(i+2,n)/u_(i+1,n)` for `n = i+1, i+2, …`.
///
/// With `a(n), b(n), c(n)` scaled to integers `A_n, B_n, C_n`, the minors are
/// `Y_n/(A_(i+1)⋯A_n)` where `Y_n = B_n·Y_(n−1) − C_n·A_(n−1)·Y_(n−2)`, so the
/// whole iteration runs on integers.
struct RhoBounds<'a> {
    rec: &'a Recurrence,
    n: u64,
    first: Option<(BigInt, BigInt)>,
    prev_a: BigInt,
    // (Y_(n−1), Y_(n−2)) for the minors starting at rows i+1 and i+2
    outer: (BigInt, BigInt),
    inner: (BigInt, BigInt),
}

enum Step {
    Bound(Frac),
    Diverged(u64),
}

impl<'a> RhoBounds<'a> {
    fn new(rec: &'a Recurrence, i: u64) -> Self {
        Self {
            rec,
            n: i + 1,
            first: None,
            prev_a: BigInt::one(),
            outer: (BigInt::one(), BigInt::zero()),
            inner: (BigInt::zero(), BigInt::zero()),
        }
    }

    fn step(&mut self) -> Step {
        let n = self.n;
        let (a, b, c) = integer_coefficients(self.rec, n);
        let c_prev_a = &c * &self.prev_a;
        let advance = |pair: &mut (BigInt, BigInt)| {
            let next = &b * &pair.0 - &c_prev_a * &pair.1;
            pair.1 = std::mem::replace(&mut pair.0, next);
        };
        advance(&mut self.outer);
        match &self.first {
            None => {
                // The minor on rows i+2 … i+1 is the empty determinant.
                self.inner = (a.clone(), BigInt::zero());
                self.first = Some((a.clone(), c));
            }
            Some(_) => advance(&mut self.inner),
        }
        self.prev_a = a;
        self.n += 1;
        if !self.outer.0.is_positive() || !self.inner.0.is_positive() {
            return Step::Diverged(n);
        }
        let (a1, c1) = self.first.as_ref().unwrap();
        Step::Bound(Frac { num: c1 * &self.inner.0, den: a1 * &self.outer.0 })
    }
}

/// Lower bounds of `ρ_0`; stops when successive bounds differ by less than
/// `tol` or after `n_max` iterations.
pub fn rho_lower_bounds(rec: &Recurrence, tol: &Rational, n_max: u64) -> Result<CFEstimate, ContFracError> {
    rho_lower_bounds_at(rec, 0, tol, n_max, None)
}

pub fn rho_lower_bounds_at(
    rec: &Recurrence,
    i: u64,
    tol: &Rational,
    n_max: u64,
    cancel: Option<&CancelToken>,
) -> Result<CFEstimate, ContFracError> {
    if !tol.is_positive() {
        return Err(ContFracError::BadArgs("tolerance must be positive".into()));
    }
    let mut it = RhoBounds::new(rec, i);
    let mut est = CFEstimate {
        i,
        lower_bounds: Vec::new(),
        iterations: 0,
        converged: false,
        rho_hat: None,
        rigorous: true,
        divergence_at: None,
    };
    while est.iterations < n_max {
        if cancel.is_some_and(CancelToken::is_cancelled) {
            return Err(ContFracError::Cancelled(est.iterations));
        }
        est.iterations += 1;
        match it.step() {
            Step::Diverged(n) => {
                est.divergence_at = Some(n);
                est.rigorous = false;
                break;
            }
            Step::Bound(frac) => {
                let rho = frac.to_rational();
                if let Some(last) = est.lower_bounds.last() {
                    if &rho < last {
                        est.rigorous = false;
                    }
                    if (&rho - last).abs() < *tol {
                        est.converged = true;
                    }
                }
                est.lower_bounds.push(rho);
                if est.converged {
                    break;
                }
            }
        }
    }
    est.rho_hat = est.lower_bounds.last().cloned();
    Ok(est)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Refutation {
    /// `u_0 <= 0`.
    InitialNonPositive,
    /// `u_1 < ρ̂·u_0` with `ρ̂ <= ρ_0`.
    Refuted {
        #[serde(with = "serde_rational")]
        rho_hat: Rational,
        iteration: u64,
    },
    Inconclusive { reason: String },
}

/// Searches for a lower bound `ρ̂ <= ρ_0` with `u_1 < ρ̂·u_0`, which rules
/// out positivity of `(u_n)_(n>=0)`.
pub fn refute_positivity(rec: &Recurrence, n_max: u64) -> Refutation {
    if !rec.u0().is_positive() {
        return Refutation::InitialNonPositive;
    }
    let mut it = RhoBounds::new(rec, 0);
    let mut last: Option<Frac> = None;
    let (u0, u1) = (rec.u0(), rec.u1());
    for iteration in 1..=n_max {
        match it.step() {
            Step::Diverged(n) => {
                return Refutation::Inconclusive {
                    reason: format!("nonpositive minor at n = {}; bounds not rigorous", n),
                }
            }
            Step::Bound(rho) => {
                let vs_last = last.as_ref().map(|l| rho.cmp(l));
                if vs_last == Some(Ordering::Less) {
                    return Refutation::Inconclusive { reason: "bounds not monotone".into() };
                }
                // u_1 < (num/den)·u_0, cleared of denominators
                let lhs = u1.numer() * &rho.den * u0.denom();
                let rhs = &rho.num * u0.numer() * u1.denom();
                if lhs < rhs {
                    return Refutation::Refuted { rho_hat: rho.to_rational(), iteration };
                }
                if vs_last == Some(Ordering::Equal) {
                    break;
                }
                last = Some(rho);
            }
        }
    }
    Refutation::Inconclusive { reason: format!("u_1 >= rho_hat * u_0 for all {} bounds", n_max) }
}

/// Backward recurrence from `u_(n_start+1) = 0, u_(n_start) = 1` down to
/// `u_0`, normalized to `u_0 = 1`; returns `u_0 … u_len`.
pub fn minimal_solution_estimate(rec: &Recurrence, n_start: u64, len: usize) -> Result<Vec<Rational>, ContFracError> {
    if len < 1 || n_start <= len as u64 {
        return Err(ContFracError::BadArgs(format!("need n_start > len >= 1, got {} and {}", n_start, len)));
    }
    let mut v = vec![Rational::zero(); n_start as usize + 2];
    v[n_start as usize] = Rational::one();
    for n in (1..=n_start).rev() {
        let c = rec.c().eval_int(n as i64);
        if c.is_zero() {
            return Err(ContFracError::ZeroC(n));
        }
        let i = n as usize;
        v[i - 1] = (rec.b().eval_int(n as i64) * &v[i] - rec.a().eval_int(n as i64) * &v[i + 1]) / c;
    }
    if v[0].is_zero() {
        return Err(ContFracError::ZeroAtOrigin);
    }
    let norm = v[0].clone();
    Ok(v[..=len].iter().map(|x| x / &norm).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioProbe {
    pub lambda1: String,
    /// `(n, u*_(n+1)/u*_n)`; `None` where `u*_n` vanishes.
    pub ratios: Vec<(u64, Option<String>)>,
}

/// Ratios of consecutive terms of the estimated minimal solution, for
/// comparison with `λ1`. Exploratory; nothing is asserted.
pub fn ratio_limit_probe(rec: &Recurrence, n: usize, digits: usize) -> Result<RatioProbe, ContFracError> {
    let ch = rec.characteristic();
    if !ch.disc.is_positive() {
        return Err(ContFracError::NonPositiveDiscriminant);
    }
    let lambda1 = ch.lambda1().expect("positive discriminant").to_decimal(digits);
    if n == 0 {
        return Ok(RatioProbe { lambda1, ratios: Vec::new() });
    }
    let v = minimal_solution_estimate(rec, 2 * n as u64 + 20, n)?;
    let ratios = (0..n)
        .map(|k| {
            let r = (!v[k].is_zero()).then(|| to_decimal(&(&v[k + 1] / &v[k]), digits));
            (k as u64, r)
        })
        .collect();
    Ok(RatioProbe { lambda1, ratios })
}
