//! Scalar traits shared by polynomials and matrices.
//!
//! [`Scalar`] is the ring interface every generic container needs; it is
//! satisfied by `f64` as well as the exact fields. [`ExactField`] adds the
//! exact sign decision and rational enclosures that the "for all n" checks
//! rely on, and is only implemented for exact number types.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Rational;

/// Commutative ring operations by value.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
        + Neg<Output = Self>
{
}

/// An ordered field whose elements have an exactly decidable sign.
pub trait ExactField: Scalar + Div<Output = Self> + From<Rational> {
    /// Exact sign of the element.
    fn sign(&self) -> Ordering;

    /// A rational interval `[lo, hi]` containing the element, with
    /// `hi - lo < 2^-bits` (or a point interval when the element is rational).
    fn enclosure(&self, bits: u32) -> (Rational, Rational);

    /// Rational upper bound on `|self|`.
    fn abs_upper(&self) -> Rational {
        let (lo, hi) = self.enclosure(64);
        lo.abs().max(hi.abs())
    }

    /// Rational lower bound on `|self|`, strictly positive for nonzero elements.
    fn abs_lower(&self) -> Rational {
        if self.sign() == Ordering::Equal {
            return Rational::zero();
        }
        let mut bits = 64;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return lo;
            }
            if hi.is_negative() {
                return -hi;
            }
            bits *= 2;
        }
    }

    /// Exact comparison through the sign of the difference.
    fn cmp_exact(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign()
    }

    fn is_positive_exact(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    fn is_nonnegative_exact(&self) -> bool {
        self.sign() != Ordering::Less
    }
}

impl ExactField for Rational {
    fn sign(&self) -> Ordering {
        self.cmp(&Rational::zero())
    }

    fn enclosure(&self, _bits: u32) -> (Rational, Rational) {
        (self.clone(), self.clone())
    }

    fn abs_upper(&self) -> Rational {
        self.abs()
    }

    fn abs_lower(&self) -> Rational {
        self.abs()
    }
}
