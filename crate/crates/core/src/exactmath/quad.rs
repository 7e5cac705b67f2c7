//! Real quadratic extensions `p + q·√D` with rational `p`, `q`.
//!
//! Canonical form: `q = 0` if and only if `D = 0`; otherwise `D > 1` has had
//! its small square factors pulled into `q` and is never a perfect square.
//! Rational elements (`D = 0`) combine freely with any radicand, so `zero()`
//! and `one()` need no context. Mixing two different nonzero radicands is a
//! contract violation and panics, like division by zero does.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, to_decimal};
use super::{ExactField, ExactMathError, Rational};

#[derive(Clone, Debug)]
pub struct QuadExt {
    p: Rational,
    q: Rational,
    d: BigInt,
}

/// Exact sign of `p + q·√d` by case analysis; `d >= 0`.
pub fn quad_sign(p: &Rational, q: &Rational, d: &BigInt) -> Ordering {
    let sp = p.cmp(&Rational::zero());
    let sq = if d.is_zero() { Ordering::Equal } else { q.cmp(&Rational::zero()) };
    match (sp, sq) {
        (s, Ordering::Equal) => s,
        (Ordering::Equal, s) => s,
        (a, b) if a == b => a,
        _ => {
            let pp = p * p;
            let qqd = q * q * Rational::from_integer(d.clone());
            match pp.cmp(&qqd) {
                Ordering::Greater => sp,
                Ordering::Less => sq,
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

/// Rational interval `[lo, hi]` around `√d` with `hi - lo < 2^-bits`, by bisection.
pub fn sqrt_enclosure(d: &BigInt, bits: u32) -> (Rational, Rational) {
    let target = Rational::from_integer(d.clone());
    let mut lo = Rational::zero();
    let mut hi = Rational::from_integer(d.clone().max(BigInt::one()));
    let width = Rational::new(BigInt::one(), BigInt::one() << bits as usize);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    while &hi - &lo >= width {
        let mid = (&lo + &hi) * &half;
        match (&mid * &mid).cmp(&target) {
            Ordering::Greater => hi = mid,
            Ordering::Less => lo = mid,
            Ordering::Equal => return (mid.clone(), mid),
        }
    }
    (lo, hi)
}

/// Splits `d = s²·r` pulling out square factors up to 1000, then checks
/// whether the remainder is itself a perfect square.
fn split_square(d: &BigInt) -> (BigInt, BigInt) {
    let mut s = BigInt::one();
    let mut r = d.clone();
    for k in 2u32..=1000 {
        let kk = BigInt::from(k * k);
        if kk > r {
            break;
        }
        while (&r % &kk).is_zero() {
            r /= &kk;
            s *= k;
        }
    }
    let root = r.sqrt();
    if &root * &root == r {
        s *= root;
        r = BigInt::one();
    }
    (s, r)
}

impl QuadExt {
    pub fn new(p: Rational, q: Rational, d: BigInt) -> Result<Self, ExactMathError> {
        if d.is_negative() {
            return Err(ExactMathError::NegativeRadicand(d.to_string()));
        }
        Ok(Self::normalized(p, q, d))
    }

    fn normalized(p: Rational, q: Rational, d: BigInt) -> Self {
        if q.is_zero() || d.is_zero() {
            return Self { p, q: Rational::zero(), d: BigInt::zero() };
        }
        let (s, r) = split_square(&d);
        let q = q * Rational::from_integer(s);
        if r.is_one() {
            Self { p: p + q, q: Rational::zero(), d: BigInt::zero() }
        } else {
            Self { p, q, d: r }
        }
    }

    pub fn from_rational(p: Rational) -> Self {
        Self { p, q: Rational::zero(), d: BigInt::zero() }
    }

    /// `√d` itself.
    pub fn sqrt(d: BigInt) -> Result<Self, ExactMathError> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.p)
    }

    pub fn conjugate(&self) -> Self {
        Self { p: self.p.clone(), q: -self.q.clone(), d: self.d.clone() }
    }

    /// `p² - q²D`, the product with the conjugate.
    pub fn norm(&self) -> Rational {
        &self.p * &self.p - &self.q * &self.q * Rational::from_integer(self.d.clone())
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        let bits = (digits as f64 * std::f64::consts::LOG2_10) as u32 + 16;
        let (lo, hi) = self.enclosure(bits);
        to_decimal(&((lo + hi) / Rational::from_integer(BigInt::from(2))), digits)
    }

    fn merged_radicand(&self, other: &Self) -> BigInt {
        if self.d.is_zero() {
            other.d.clone()
        } else if other.d.is_zero() || self.d == other.d {
            self.d.clone()
        } else {
            panic!("mixed radicands {} and {} in one expression", self.d, other.d)
        }
    }
}

impl From<Rational> for QuadExt {
    fn from(p: Rational) -> Self {
        Self::from_rational(p)
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        match (self.q.is_zero(), other.q.is_zero()) {
            (true, true) => true,
            (false, false) => {
                self.q.is_negative() == other.q.is_negative()
                    && &self.q * &self.q * Rational::from_integer(self.d.clone())
                        == &other.q * &other.q * Rational::from_integer(other.d.clone())
            }
            _ => false,
        }
    }
}

impl Eq for QuadExt {}

impl Add for QuadExt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let d = self.merged_radicand(&rhs);
        Self::normalized(self.p + rhs.p, self.q + rhs.q, d)
    }
}

impl Sub for QuadExt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let d = self.merged_radicand(&rhs);
        Self::normalized(self.p - rhs.p, self.q - rhs.q, d)
    }
}

impl Mul for QuadExt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let d = self.merged_radicand(&rhs);
        let dr = Rational::from_integer(d.clone());
        let p = &self.p * &rhs.p + &self.q * &rhs.q * dr;
        let q = &self.p * &rhs.q + &self.q * &rhs.p;
        Self::normalized(p, q, d)
    }
}

impl Div for QuadExt {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let norm = rhs.norm();
        if norm.is_zero() {
            panic!("division by zero in quadratic extension");
        }
        let num = self * rhs.conjugate();
        Self::normalized(num.p / &norm, num.q / &norm, num.d)
    }
}

impl Neg for QuadExt {
    type Output = Self;
    fn neg(self) -> Self {
        Self { p: -self.p, q: -self.q, d: self.d }
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl ExactField for QuadExt {
    fn sign(&self) -> Ordering {
        quad_sign(&self.p, &self.q, &self.d)
    }

    fn enclosure(&self, bits: u32) -> (Rational, Rational) {
        if self.is_rational() {
            return (self.p.clone(), self.p.clone());
        }
        let extra = self.q.abs().ceil().to_integer().bits() as u32 + 1;
        let (lo, hi) = sqrt_enclosure(&self.d, bits + extra);
        let a = &self.p + &self.q * lo;
        let b = &self.p + &self.q * hi;
        if a <= b { (a, b) } else { (b, a) }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.p);
        }
        let sign = if self.q.is_negative() { '-' } else { '+' };
        let mag = self.q.abs();
        let coeff = if mag.is_one() { String::new() } else { format!("{}*", mag) };
        if self.p.is_zero() {
            let lead = if self.q.is_negative() { "-" } else { "" };
            write!(f, "{}{}sqrt({})", lead, coeff, self.d)
        } else {
            write!(f, "{} {} {}sqrt({})", self.p, sign, coeff, self.d)
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RadicandRepr {
    Int(u64),
    Text(String),
}

#[derive(Serialize, Deserialize)]
struct QuadRepr {
    p: String,
    q: String,
    #[serde(rename = "D")]
    d: RadicandRepr,
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use num_traits::ToPrimitive;
        let d = match self.d.to_u64() {
            Some(v) => RadicandRepr::Int(v),
            None => RadicandRepr::Text(self.d.to_string()),
        };
        QuadRepr { p: format_rational(&self.p), q: format_rational(&self.q), d }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let r = QuadRepr::deserialize(de)?;
        let p = parse_rational(&r.p).map_err(D::Error::custom)?;
        let q = parse_rational(&r.q).map_err(D::Error::custom)?;
        let d = match r.d {
            RadicandRepr::Int(v) => BigInt::from(v),
            RadicandRepr::Text(t) => t.parse().map_err(D::Error::custom)?,
        };
        QuadExt::new(p, q, d).map_err(D::Error::custom)
    }
}
