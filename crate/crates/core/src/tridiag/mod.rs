//! Finite tridiagonal matrices and total-nonnegativity tests.
//!
//! Infinite matrices from the recurrence are only ever seen through their
//! top-left `k×k` truncations, so every verdict here means "TN up to order k".
//! The leading principal minors of the `M_1` truncation are exactly the
//! terms `u_1 … u_k`, which makes truncations as informative as term prefixes.

mod dense;

use std::cmp::Ordering;

use num_traits::One;
use serde::{Deserialize, Serialize};

pub use dense::DenseMatrix;

use crate::exactmath::rational::serde_rational_vec;
use crate::exactmath::{ExactField, Rational, Scalar};
use crate::recurrence::Recurrence;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TridiagError {
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("negative entry at ({0}, {1})")]
    NegativeEntry(usize, usize),
    #[error("negative input to PF test")]
    NegativeInput,
    #[error("truncation order {0} is too small")]
    OrderTooSmall(usize),
}

/// `k×k` tridiagonal matrix: `diag[i]` at `(i,i)`, `sup[i]` at `(i,i+1)`,
/// `sub[i]` at `(i+1,i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tridiagonal<T> {
    diag: Vec<T>,
    sup: Vec<T>,
    sub: Vec<T>,
}

impl<T: Scalar> Tridiagonal<T> {
    pub fn new(diag: Vec<T>, sup: Vec<T>, sub: Vec<T>) -> Result<Self, TridiagError> {
        let k = diag.len();
        if k == 0 || sup.len() + 1 != k || sub.len() + 1 != k {
            return Err(TridiagError::Shape(format!(
                "diag {}, super {}, sub {}",
                k,
                sup.len(),
                sub.len()
            )));
        }
        Ok(Self { diag, sup, sub })
    }

    /// Constant bands: `b` on the diagonal, `c` above, `a` below.
    pub fn toeplitz(k: usize, a: T, b: T, c: T) -> Result<Self, TridiagError> {
        let off = k.saturating_sub(1);
        Self::new(vec![b; k], vec![c; off], vec![a; off])
    }

    pub fn identity(k: usize) -> Result<Self, TridiagError> {
        Self::toeplitz(k, T::zero(), T::one(), T::zero())
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn sup(&self) -> &[T] {
        &self.sup
    }

    pub fn sub(&self) -> &[T] {
        &self.sub
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        if i == j {
            self.diag[i].clone()
        } else if j == i + 1 {
            self.sup[i].clone()
        } else if i == j + 1 {
            self.sub[j].clone()
        } else {
            T::zero()
        }
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let k = self.size();
        DenseMatrix::from_rows((0..k).map(|i| (0..k).map(|j| self.get(i, j)).collect()).collect())
            .expect("square")
    }

    /// Determinants of the contiguous principal blocks `start..=start+r`,
    /// for `r = 0 … k-1-start`, by the three-term minor recurrence.
    pub fn contiguous_minors_from(&self, start: usize) -> Vec<T> {
        let mut out = Vec::with_capacity(self.size() - start);
        let (mut prev2, mut prev1) = (T::zero(), T::one());
        for j in start..self.size() {
            let coupling = if j > start {
                self.sub[j - 1].clone() * self.sup[j - 1].clone()
            } else {
                T::zero()
            };
            let d = self.diag[j].clone() * prev1.clone() - coupling * prev2;
            prev2 = prev1;
            prev1 = d.clone();
            out.push(d);
        }
        out
    }

    /// `D_1 … D_k`.
    pub fn leading_principal_minors(&self) -> Vec<T> {
        self.contiguous_minors_from(0)
    }
}

pub fn leading_principal_minors<T: Scalar>(t: &Tridiagonal<T>) -> Vec<T> {
    t.leading_principal_minors()
}

impl<T: ExactField> Tridiagonal<T> {
    fn first_negative_entry(&self) -> Option<(usize, usize)> {
        let neg = |x: &T| x.sign() == Ordering::Less;
        let k = self.size();
        (0..k)
            .flat_map(|i| [(i, i), (i, i + 1), (i + 1, i)])
            .filter(|&(i, j)| i < k && j < k)
            .find(|&(i, j)| neg(&self.get(i, j)))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative_entry().is_none()
    }

    /// All off-diagonal entries nonzero.
    pub fn is_irreducible(&self) -> bool {
        self.sup.iter().chain(&self.sub).all(|x| !x.is_zero())
    }
}

/// Leading-minor test for irreducible nonnegative matrices; anything else,
/// or a vanishing leading minor, is decided by [`is_tn_contiguous`].
pub fn is_tn_leading<T: ExactField>(t: &Tridiagonal<T>) -> bool {
    if !t.is_nonnegative() {
        return false;
    }
    if t.is_irreducible() {
        let minors = t.leading_principal_minors();
        if minors.iter().all(ExactField::is_positive_exact) {
            return true;
        }
        if minors.iter().any(|m| m.sign() == Ordering::Less) {
            return false;
        }
    }
    is_tn_contiguous(t).unwrap_or(false)
}

/// A nonnegative tridiagonal matrix is TN iff every principal minor on
/// consecutive rows and columns is nonnegative.
pub fn is_tn_contiguous<T: ExactField>(t: &Tridiagonal<T>) -> Result<bool, TridiagError> {
    if let Some((i, j)) = t.first_negative_entry() {
        return Err(TridiagError::NegativeEntry(i, j));
    }
    Ok((0..t.size()).all(|s| t.contiguous_minors_from(s).iter().all(ExactField::is_nonnegative_exact)))
}

/// A nonnegative tridiagonal matrix is TN iff every principal minor is
/// nonnegative. Enumerates all `2^k - 1` index sets; meant for small `k`.
pub fn is_tn_principal<T: ExactField>(t: &Tridiagonal<T>) -> Result<bool, TridiagError> {
    if let Some((i, j)) = t.first_negative_entry() {
        return Err(TridiagError::NegativeEntry(i, j));
    }
    let k = t.size();
    let dense = t.to_dense();
    for mask in 1u64..(1u64 << k) {
        let idx: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        if dense.select(&idx, &idx).determinant()?.sign() == Ordering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(r, s, t)` is a Pólya frequency sequence iff `s² >= 4rt`.
pub fn pf3_check(r: &Rational, s: &Rational, t: &Rational) -> Result<bool, TridiagError> {
    if [r, s, t].iter().any(|x| x.sign() == Ordering::Less) {
        return Err(TridiagError::NegativeInput);
    }
    Ok(s * s >= Rational::from_integer(4.into()) * r * t)
}

/// Checks `det M · det M[1..k-1] = det M^k_k · det M^0_0 − det M^k_0 · det M^0_k`
/// on a `(k+1)×(k+1)` matrix, where `M^I_J` deletes rows `I` and columns `J`.
pub fn desnanot_jacobi_check<T>(m: &DenseMatrix<T>) -> Result<bool, TridiagError>
where
    T: Scalar + std::ops::Div<Output = T>,
{
    if m.rows() != m.cols() || m.rows() < 2 {
        return Err(TridiagError::Shape(format!("{}x{}", m.rows(), m.cols())));
    }
    let k = m.rows() - 1;
    let det = |x: DenseMatrix<T>| x.determinant();
    let lhs = det(m.clone())? * det(m.delete(&[0, k], &[0, k]))?;
    let rhs = det(m.delete(&[k], &[k]))? * det(m.delete(&[0], &[0]))?
        - det(m.delete(&[k], &[0]))? * det(m.delete(&[0], &[k]))?;
    Ok(lhs == rhs)
}

/// Top-left `k×k` block of `M_0`: first column `(u1, u0)`, then columns
/// `(c(j), b(j), a(j))` down the bands.
pub fn m0_truncation(rec: &Recurrence, k: usize) -> Result<Tridiagonal<Rational>, TridiagError> {
    if k < 2 {
        return Err(TridiagError::OrderTooSmall(k));
    }
    let at = |p: &crate::PolyQ, j: usize| p.eval_int(j as i64);
    let mut diag = vec![rec.u1().clone()];
    diag.extend((1..k).map(|j| at(rec.b(), j)));
    let sup = (1..k).map(|j| at(rec.c(), j)).collect();
    let mut sub = vec![rec.u0().clone()];
    sub.extend((1..k - 1).map(|j| at(rec.a(), j)));
    Tridiagonal::new(diag, sup, sub)
}

/// Top-left `k×k` block of `M_1`, whose leading principal minors are `u_1 … u_k`.
pub fn m1_truncation(rec: &Recurrence, k: usize) -> Result<Tridiagonal<Rational>, TridiagError> {
    if k < 1 {
        return Err(TridiagError::OrderTooSmall(k));
    }
    let mut diag = vec![rec.u1().clone()];
    diag.extend((1..k as u64).map(|j| rec.beta(j)));
    let sup = (1..k as u64).map(|j| rec.gamma(j)).collect();
    let mut sub = vec![rec.u0().clone()];
    sub.extend((1..k.saturating_sub(1)).map(|_| Rational::one()));
    if k == 1 {
        sub.clear();
    }
    Tridiagonal::new(diag, sup, sub)
}

/// Top-left `k×k` block of `J_i` (`i >= 1`): `β_i, β_(i+1), …` on the
/// diagonal, `γ_(i+1), …` above, ones below.
pub fn j_truncation(rec: &Recurrence, i: u64, k: usize) -> Result<Tridiagonal<Rational>, TridiagError> {
    if i == 0 {
        return Err(TridiagError::Shape("J_0 needs an explicit beta_0; use j0_truncation".into()));
    }
    if k < 1 {
        return Err(TridiagError::OrderTooSmall(k));
    }
    let diag = (0..k as u64).map(|r| rec.beta(i + r)).collect();
    let sup = (1..k as u64).map(|r| rec.gamma(i + r)).collect();
    Tridiagonal::new(diag, sup, vec![Rational::one(); k - 1])
}

/// `J_0` with a caller-chosen `β_0`.
pub fn j0_truncation(rec: &Recurrence, beta0: &Rational, k: usize) -> Result<Tridiagonal<Rational>, TridiagError> {
    if k < 1 {
        return Err(TridiagError::OrderTooSmall(k));
    }
    let mut diag = vec![beta0.clone()];
    diag.extend((1..k as u64).map(|j| rec.beta(j)));
    let sup = (1..k as u64).map(|j| rec.gamma(j)).collect();
    Tridiagonal::new(diag, sup, vec![Rational::one(); k - 1])
}

#[derive(Serialize, Deserialize)]
struct TridiagRepr {
    #[serde(with = "serde_rational_vec")]
    diag: Vec<Rational>,
    #[serde(rename = "super", with = "serde_rational_vec")]
    sup: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    sub: Vec<Rational>,
}

impl Serialize for Tridiagonal<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TridiagRepr { diag: self.diag.clone(), sup: self.sup.clone(), sub: self.sub.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tridiagonal<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = TridiagRepr::deserialize(d)?;
        Tridiagonal::new(r.diag, r.sup, r.sub).map_err(serde::de::Error::custom)
    }
}
