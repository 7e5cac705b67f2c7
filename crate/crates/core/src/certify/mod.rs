//! The criteria engine.
//!
//! * [`classify_discriminant`] sorts a recurrence by the sign of `b² − 4ac`.
//! * [`certify_positive_with`] checks the hypotheses of the criterion
//!   "`Q_n(λ0) <= 0` for all large `n` and `u_(m+1) >= λ0·u_m > 0`", and
//!   completes the finite prefix so the verdict covers the whole sequence.
//! * [`certify_logconvex`] does the same for the log-convexity criterion
//!   built from the 2×2 determinants `B(n)` and `C(n)`.
//!
//! Certificates are plain data; [`verify_certificate`] recomputes every
//! obligation from the recurrence alone.

mod logconvex;
mod positivity;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactmath::rational::serde_rational;
use crate::exactmath::{ExactReal, Rational};
use crate::recurrence::Recurrence;

pub use logconvex::{
    certify_logconvex, logconv_data, ratio_monotonicity_evidence, ratio_monotonicity_of,
    LogConvData, LogConvexityCertificate, NonPositiveTerm,
};
pub use positivity::{
    auto_certify_positive, certify_positive_with, check_ratio_dominance, decide_constant,
    decide_linear, lambda_candidates, verify_induction_steps, Attempt, ConstantDecision,
    Exhausted, LinearDecision,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// `b² < 4ac`: every nontrivial solution oscillates.
    OscillatoryAll,
    /// `b² > 4ac`: every nontrivial solution is eventually of one sign.
    EventuallySignDefinite,
    /// `b² = 4ac`: either behavior occurs; nothing is claimed.
    BoundaryUndetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    #[serde(with = "serde_rational")]
    pub disc: Rational,
}

pub fn classify_discriminant(rec: &Recurrence) -> Classification {
    use std::cmp::Ordering::*;
    let disc = rec.characteristic().disc;
    let verdict = match disc.cmp(&Rational::from_integer(0.into())) {
        Less => Verdict::OscillatoryAll,
        Greater => Verdict::EventuallySignDefinite,
        Equal => Verdict::BoundaryUndetermined,
    };
    Classification { verdict, disc }
}

/// One named hypothesis of a criterion and whether it was verified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obligation {
    pub name: String,
    pub verified: bool,
}

impl Obligation {
    fn ok(name: &str) -> Self {
        Self { name: name.to_string(), verified: true }
    }
}

/// Obligation names, shared by certificates and failures.
pub mod obligation {
    pub const LAMBDA0_POSITIVE: &str = "lambda0_positive";
    pub const Q_NONPOSITIVE_TAIL: &str = "q_nonpositive_tail";
    pub const START_POSITIVE: &str = "start_positive";
    pub const START_RATIO: &str = "start_ratio";
    pub const PREFIX_POSITIVE: &str = "prefix_positive";
    pub const DOMINANCE_TAIL: &str = "bc_dominance_tail";
    pub const C_NONNEGATIVE_TAIL: &str = "c_nonnegative_tail";
    pub const START_RATIOS_MONOTONE: &str = "start_ratios_monotone";
    pub const PREFIX_LOGCONVEX: &str = "prefix_logconvex";
    pub const LEADS_POSITIVE: &str = "b_c_leads_positive";
}

/// The first obligation that could not be verified.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifyFailure {
    pub obligation: String,
    /// Concrete index where the obligation breaks, when there is one.
    pub witness: Option<u64>,
    pub detail: String,
}

impl CertifyFailure {
    fn new(obligation: &str, witness: Option<u64>, detail: impl Into<String>) -> Self {
        Self { obligation: obligation.to_string(), witness, detail: detail.into() }
    }
}

impl fmt::Display for CertifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} failed", self.obligation)?;
        if let Some(n) = self.witness {
            write!(f, " at n = {}", n)?;
        }
        write!(f, ": {}", self.detail)
    }
}

impl std::error::Error for CertifyFailure {}

/// Positivity of every term `u_n`, `n >= 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositivityCertificate {
    pub lambda0: ExactReal,
    pub m: u64,
    /// `Q_n(λ0) <= 0` is asserted for `n >= q_from = max(m, 1)`.
    pub q_from: u64,
    /// `u_0 … u_(m+1)`.
    #[serde(with = "crate::exactmath::rational::serde_rational_vec")]
    pub prefix_checked: Vec<Rational>,
    pub obligations: Vec<Obligation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Positivity(PositivityCertificate),
    LogConvexity(LogConvexityCertificate),
}

/// Recomputes every obligation of `cert` against `rec`.
pub fn verify_certificate(rec: &Recurrence, cert: &Certificate) -> Result<(), CertifyFailure> {
    let mismatch = |what: &str| CertifyFailure::new("certificate_matches", None, what.to_string());
    match cert {
        Certificate::Positivity(c) => {
            let fresh = certify_positive_with(rec, &c.lambda0, c.m)?;
            if fresh.prefix_checked != c.prefix_checked {
                return Err(mismatch("prefix terms differ from the recurrence"));
            }
            if fresh.obligations != c.obligations || fresh.q_from != c.q_from {
                return Err(mismatch("obligation list differs"));
            }
        }
        Certificate::LogConvexity(c) => {
            let fresh = certify_logconvex(rec, c.m).map_err(|e| match e {
                logconvex::LogConvexError::Failed(f) => f,
                other => mismatch(&other.to_string()),
            })?;
            if &fresh != c {
                return Err(mismatch("recomputed certificate differs"));
            }
        }
    }
    Ok(())
}

pub use logconvex::LogConvexError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertifyError {
    #[error("expected coefficient degree {expected}, got {actual}")]
    WrongDegree { expected: usize, actual: usize },
}
