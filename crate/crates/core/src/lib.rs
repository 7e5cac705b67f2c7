//! Exact decision procedures for the positivity and log-convexity of
//! sequences satisfying `a(n)·u(n+1) = b(n)·u(n) − c(n)·u(n−1)` with
//! polynomial coefficients.
//!
//! Everything is decided in `Q` or in a real quadratic field `Q(√D)`. The
//! polynomial and matrix containers are generic over [`exactmath::Scalar`];
//! the aliases below fix them to the exact fields used for every verdict.

pub mod certify;
pub mod contfrac;
pub mod corpus;
pub mod exactmath;
pub mod recurrence;
pub mod report;
pub mod tridiag;

pub use exactmath::{ExactReal, QuadExt, Rational};
pub use recurrence::Recurrence;

/// Polynomial in `n` over `Q`.
pub type PolyQ = exactmath::Poly<Rational>;
/// Polynomial in `n` over `Q(√D)`.
pub type PolyQuad = exactmath::Poly<QuadExt>;
/// Tridiagonal matrix over `Q`.
pub type TridiagonalMatrix = tridiag::Tridiagonal<Rational>;
/// Dense matrix over `Q`.
pub type DenseMatrixQ = tridiag::DenseMatrix<Rational>;
