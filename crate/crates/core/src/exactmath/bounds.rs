//! Sign decisions for polynomials at every integer beyond a threshold.
//!
//! Every real root lies strictly below the Cauchy bound `U`, so for integer
//! `n >= U` the sign of `p(n)` is the sign of the leading coefficient. The
//! finitely many integers in `[m, ceil(U)]` are evaluated exactly.

use std::cmp::Ordering;

use num_traits::{ToPrimitive, Zero};

use super::rational::ceil_to_int;
use super::{ExactField, ExactMathError, Poly, Rational};

/// Rational `U` such that every real root of `p` is `< U`.
/// Cauchy's bound `1 + max|c_i| / |c_d|`; zero for nonzero constants.
pub fn real_root_upper_bound<T: ExactField>(p: &Poly<T>) -> Result<Rational, ExactMathError> {
    let d = p.degree().ok_or(ExactMathError::ZeroPolynomial)?;
    if d == 0 {
        return Ok(Rational::zero());
    }
    let lead = p.coeffs()[d].abs_lower();
    let max_rest = p.coeffs()[..d]
        .iter()
        .map(ExactField::abs_upper)
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(Rational::from_integer(1.into()) + max_rest / lead)
}

/// Integers `n >= m` are scanned up to this index; past it the sign is fixed.
fn scan_limit<T: ExactField>(p: &Poly<T>, m: u64) -> u64 {
    let u = real_root_upper_bound(p).expect("nonzero polynomial");
    let top = ceil_to_int(&u)
        .to_u64()
        .unwrap_or(u64::MAX);
    top.max(m)
}

/// First integer `n >= m` where the sign of `p(n)` satisfies `bad`.
pub fn first_sign_violation<T: ExactField>(
    p: &Poly<T>,
    m: u64,
    bad: impl Fn(Ordering) -> bool,
) -> Option<u64> {
    if p.is_zero() {
        return bad(Ordering::Equal).then_some(m);
    }
    let hi = scan_limit(p, m);
    (m..=hi).find(|&n| bad(p.eval_int(n as i64).sign()))
}

/// Every integer `n >= m` where the sign satisfies `bad`, provided there are
/// finitely many (the leading sign is not itself bad); `None` otherwise.
pub fn all_sign_violations<T: ExactField>(
    p: &Poly<T>,
    m: u64,
    bad: impl Fn(Ordering) -> bool,
) -> Option<Vec<u64>> {
    if p.is_zero() {
        return if bad(Ordering::Equal) { None } else { Some(Vec::new()) };
    }
    let lead = p.leading().expect("nonzero").sign();
    if bad(lead) {
        return None;
    }
    let hi = scan_limit(p, m);
    Some((m..=hi).filter(|&n| bad(p.eval_int(n as i64).sign())).collect())
}

/// First integer `n >= m` with `p(n) > 0`.
pub fn first_positive_from<T: ExactField>(p: &Poly<T>, m: u64) -> Option<u64> {
    first_sign_violation(p, m, |s| s == Ordering::Greater)
}

/// True iff `p(n) <= 0` for every integer `n >= m`.
pub fn holds_le_zero_for_all<T: ExactField>(p: &Poly<T>, m: u64) -> bool {
    first_positive_from(p, m).is_none()
}
