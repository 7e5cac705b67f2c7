//! The difference equation `a(n)·u(n+1) = b(n)·u(n) - c(n)·u(n-1)`, `n >= 1`,
//! with polynomial coefficients and rational initial values `u0`, `u1`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::exactmath::rational::serde_rational;
use crate::exactmath::{all_sign_violations, ExactField, ExactReal, Poly, QuadExt, Rational};
use crate::PolyQ;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficient {
    A,
    B,
    C,
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coefficient::A => "a",
            Coefficient::B => "b",
            Coefficient::C => "c",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValidationError {
    #[error("coefficient degrees differ: deg a = {a:?}, deg b = {b:?}, deg c = {c:?}")]
    DegreeMismatch { a: Option<usize>, b: Option<usize>, c: Option<usize> },
    #[error("leading coefficient of {0}(n) is not positive")]
    NonPositiveLeading(Coefficient),
    #[error("{coefficient}(n) is not positive at n = {indices:?}")]
    NonPositiveValues { coefficient: Coefficient, indices: Vec<u64> },
}

/// A validated three-term recurrence with its initial values.
///
/// `a` is nonzero; `b` and `c` are either identically zero or share the
/// degree of `a`. Every nonzero coefficient has a positive leading
/// coefficient and is positive at every integer `n >= 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RecurrenceRepr", into = "RecurrenceRepr")]
pub struct Recurrence {
    a: PolyQ,
    b: PolyQ,
    c: PolyQ,
    u0: Rational,
    u1: Rational,
    label: Option<String>,
}

#[derive(Clone, Serialize, Deserialize)]
struct RecurrenceRepr {
    a: PolyQ,
    b: PolyQ,
    c: PolyQ,
    #[serde(with = "serde_rational")]
    u0: Rational,
    #[serde(with = "serde_rational")]
    u1: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl TryFrom<RecurrenceRepr> for Recurrence {
    type Error = ValidationError;
    fn try_from(r: RecurrenceRepr) -> Result<Self, Self::Error> {
        let rec = Recurrence::new(r.a, r.b, r.c, r.u0, r.u1)?;
        Ok(match r.label {
            Some(l) => rec.with_label(l),
            None => rec,
        })
    }
}

impl From<Recurrence> for RecurrenceRepr {
    fn from(r: Recurrence) -> Self {
        RecurrenceRepr { a: r.a, b: r.b, c: r.c, u0: r.u0, u1: r.u1, label: r.label }
    }
}

/// Checks the standing assumptions on `a`, `b`, `c`.
pub fn validate(a: &PolyQ, b: &PolyQ, c: &PolyQ) -> Result<(), ValidationError> {
    let delta = a.degree();
    let same = |p: &PolyQ| p.is_zero() || p.degree() == delta;
    if delta.is_none() || !same(b) || !same(c) {
        return Err(ValidationError::DegreeMismatch { a: delta, b: b.degree(), c: c.degree() });
    }
    for (poly, which) in [(a, Coefficient::A), (b, Coefficient::B), (c, Coefficient::C)] {
        if poly.is_zero() {
            continue;
        }
        if !poly.leading().is_some_and(Signed::is_positive) {
            return Err(ValidationError::NonPositiveLeading(which));
        }
        let bad = all_sign_violations(poly, 1, |s| s != Ordering::Greater)
            .expect("positive leading coefficient leaves finitely many violations");
        if !bad.is_empty() {
            return Err(ValidationError::NonPositiveValues { coefficient: which, indices: bad });
        }
    }
    Ok(())
}

impl Recurrence {
    pub fn new(
        a: PolyQ,
        b: PolyQ,
        c: PolyQ,
        u0: Rational,
        u1: Rational,
    ) -> Result<Self, ValidationError> {
        validate(&a, &b, &c)?;
        Ok(Self { a, b, c, u0, u1, label: None })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Same equation, different solution.
    pub fn with_initial(&self, u0: Rational, u1: Rational) -> Self {
        Self { u0, u1, ..self.clone() }
    }

    pub fn a(&self) -> &PolyQ {
        &self.a
    }

    pub fn b(&self) -> &PolyQ {
        &self.b
    }

    pub fn c(&self) -> &PolyQ {
        &self.c
    }

    pub fn u0(&self) -> &Rational {
        &self.u0
    }

    pub fn u1(&self) -> &Rational {
        &self.u1
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// The common degree δ.
    pub fn degree(&self) -> usize {
        self.a.degree().expect("validated: a is nonzero")
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        validate(&self.a, &self.b, &self.c)
    }

    /// `β_n = b(n)/a(n)`, for `n >= 1`.
    pub fn beta(&self, n: u64) -> Rational {
        self.b.eval_int(n as i64) / self.a.eval_int(n as i64)
    }

    /// `γ_n = c(n)/a(n)`, for `n >= 1`.
    pub fn gamma(&self, n: u64) -> Rational {
        self.c.eval_int(n as i64) / self.a.eval_int(n as i64)
    }

    /// Streaming forward evaluation starting at `u0`.
    pub fn iter_terms(&self) -> Terms<'_> {
        Terms { rec: self, prev: None, cur: None, n: 0 }
    }

    /// Exact `u_0 … u_N`.
    pub fn terms(&self, n: usize) -> Vec<Rational> {
        self.iter_terms().take(n + 1).collect()
    }

    pub fn characteristic(&self) -> CharData {
        CharData::of(self)
    }

    /// `Q_n(λ) = a(n)λ² − b(n)λ + c(n)` as a polynomial in `n`.
    pub fn q_n_at<T: ExactField>(&self, lam: &T) -> Poly<T> {
        let lift = |p: &PolyQ| p.map(|c| T::from(c.clone()));
        let lam2 = lam.clone() * lam.clone();
        &(&lift(&self.a).scale(&lam2) - &lift(&self.b).scale(lam)) + &lift(&self.c)
    }

    /// Indices `n <= N` with `u_n · u_(n+1) <= 0`.
    pub fn sign_changes(&self, n: usize) -> Vec<usize> {
        let t = self.terms(n + 1);
        t.windows(2)
            .enumerate()
            .filter(|(_, w)| !(&w[0] * &w[1]).is_positive())
            .map(|(i, _)| i)
            .collect()
    }
}

pub struct Terms<'a> {
    rec: &'a Recurrence,
    prev: Option<Rational>,
    cur: Option<Rational>,
    n: u64,
}

impl Iterator for Terms<'_> {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        let next = match (&self.prev, &self.cur) {
            (None, None) => self.rec.u0.clone(),
            (None, Some(_)) => self.rec.u1.clone(),
            (Some(prev), Some(cur)) => {
                let n = self.n as i64 - 1;
                let r = &self.rec;
                (r.b.eval_int(n) * cur - r.c.eval_int(n) * prev) / r.a.eval_int(n)
            }
            (Some(_), None) => unreachable!(),
        };
        self.prev = self.cur.take();
        self.cur = Some(next.clone());
        self.n += 1;
        Some(next)
    }
}

/// Leading-coefficient data: `Q(λ) = aλ² − bλ + c` and its roots.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharData {
    #[serde(with = "serde_rational")]
    pub a_lead: Rational,
    #[serde(with = "serde_rational")]
    pub b_lead: Rational,
    #[serde(with = "serde_rational")]
    pub c_lead: Rational,
    pub delta: usize,
    #[serde(with = "serde_rational")]
    pub disc: Rational,
    /// `λ1 <= λ2`; absent when the discriminant is negative.
    pub roots: Option<(ExactReal, ExactReal)>,
}

impl CharData {
    fn of(rec: &Recurrence) -> Self {
        let delta = rec.degree();
        let a = rec.a.coeff(delta);
        let b = rec.b.coeff(delta);
        let c = rec.c.coeff(delta);
        let four = Rational::from_integer(4.into());
        let disc = &b * &b - four * &a * &c;
        let roots = (!disc.is_negative()).then(|| {
            let two_a = &a * Rational::from_integer(2.into());
            let mid = &b / &two_a;
            let radicand = disc.numer() * disc.denom();
            let step = Rational::one() / (&two_a * Rational::from_integer(disc.denom().clone()));
            let l1 = QuadExt::new(mid.clone(), -step.clone(), radicand.clone()).expect("disc >= 0");
            let l2 = QuadExt::new(mid, step, radicand).expect("disc >= 0");
            (ExactReal::from(l1), ExactReal::from(l2))
        });
        CharData { a_lead: a, b_lead: b, c_lead: c, delta, disc, roots }
    }

    /// `Q(λ)` on the leading coefficients.
    pub fn char_poly_at<T: ExactField>(&self, lam: &T) -> T {
        let t = |r: &Rational| T::from(r.clone());
        t(&self.a_lead) * lam.clone() * lam.clone() - t(&self.b_lead) * lam.clone() + t(&self.c_lead)
    }

    pub fn lambda1(&self) -> Option<&ExactReal> {
        self.roots.as_ref().map(|r| &r.0)
    }

    pub fn lambda2(&self) -> Option<&ExactReal> {
        self.roots.as_ref().map(|r| &r.1)
    }
}
