//! Exact arithmetic over `Q` and real quadratic fields `Q(√D)`, generic
//! polynomials, and sign decisions at all integers beyond a threshold.

mod bounds;
mod poly;
mod quad;
pub mod rational;
mod real;
mod scalar;

pub use bounds::{
    all_sign_violations, first_positive_from, first_sign_violation, holds_le_zero_for_all,
    real_root_upper_bound,
};
pub use poly::Poly;
pub use quad::{quad_sign, sqrt_enclosure, QuadExt};
pub use rational::{parse_rational, to_decimal};
pub use real::ExactReal;
pub use scalar::{ExactField, Scalar};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactMathError {
    #[error("zero polynomial has no root bound")]
    ZeroPolynomial,
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}
