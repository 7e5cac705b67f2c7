//! Full analysis of one recurrence, as a serializable report.

use std::fmt;
use std::time::Instant;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::certify::{
    auto_certify_positive, certify_logconvex, classify_discriminant, decide_constant, ratio_monotonicity_of,
    Classification, ConstantDecision, LogConvexError, LogConvexityCertificate, PositivityCertificate, Verdict,
};
use crate::contfrac::{refute_positivity, rho_lower_bounds, CFSummary, Refutation};
use crate::exactmath::rational::{rat, serde_rational, to_decimal};
use crate::exactmath::Rational;
use crate::recurrence::{CharData, Recurrence};

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    /// Rows of the term table.
    pub terms: usize,
    /// Largest start index tried by the certificate searches.
    pub m_max: u64,
    pub cf_tol: Rational,
    pub cf_iters: u64,
    /// Terms scanned for a nonpositive value or a ratio drop.
    pub scan: usize,
    /// Render table entries as decimals with this many digits.
    pub decimal: Option<usize>,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self { terms: 20, m_max: 50, cf_tol: rat(1, 1_000_000_000), cf_iters: 500, scan: 200, decimal: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    NonPositiveTerm {
        index: u64,
        #[serde(with = "serde_rational")]
        value: Rational,
    },
    ConstantDecision { violated: String, first_nonpositive: Option<u64> },
    ContinuedFraction {
        #[serde(with = "serde_rational")]
        rho_hat: Rational,
        iteration: u64,
    },
    /// Negative discriminant: every nontrivial solution oscillates.
    Oscillatory { first_sign_change: Option<usize> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PositivityResult {
    Certified { method: String, certificate: PositivityCertificate },
    Refuted { evidence: Evidence },
    Inconclusive { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LogConvexityResult {
    Certified { certificate: LogConvexityCertificate },
    /// `u_(n+2)/u_(n+1) < u_(n+1)/u_n` at `index`, or a nonpositive term.
    Refuted { index: u64, reason: String },
    NotApplicable { reason: String },
    Inconclusive { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermRow {
    pub n: usize,
    pub u: String,
    /// `u_(n+1)/u_n`.
    pub ratio: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Timings {
    pub positivity_ms: f64,
    pub logconvex_ms: f64,
    pub contfrac_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub input: Recurrence,
    pub characteristic: CharData,
    pub classification: Classification,
    pub positivity: PositivityResult,
    pub log_convexity: LogConvexityResult,
    pub continued_fraction: Option<CFSummary>,
    pub terms: Vec<TermRow>,
    pub timings: Timings,
}

impl AnalysisReport {
    pub fn is_conclusive(&self) -> bool {
        !matches!(self.positivity, PositivityResult::Inconclusive { .. })
    }

    /// JSON form without timings, for comparing runs.
    pub fn to_value_untimed(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().unwrap().remove("timings");
        v
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn analyze(rec: &Recurrence, opts: &AnalyzeOptions) -> AnalysisReport {
    let start = Instant::now();
    let scanned = rec.terms(opts.scan.max(opts.terms).max(opts.m_max as usize + 3));
    let classification = classify_discriminant(rec);

    let t = Instant::now();
    let positivity = positivity(rec, opts, &scanned, &classification);
    let positivity_ms = ms(t);

    let t = Instant::now();
    let log_convexity = log_convexity(rec, opts, &scanned);
    let logconvex_ms = ms(t);

    let t = Instant::now();
    let continued_fraction = rho_lower_bounds(rec, &opts.cf_tol, opts.cf_iters)
        .ok()
        .map(|e| e.summary(opts.decimal.unwrap_or(12), 5));
    let contfrac_ms = ms(t);

    let render = |r: &Rational| match opts.decimal {
        Some(d) => to_decimal(r, d),
        None => r.to_string(),
    };
    let terms = (0..opts.terms.min(scanned.len() - 1))
        .map(|n| TermRow {
            n,
            u: render(&scanned[n]),
            ratio: (!scanned[n].is_zero()).then(|| render(&(&scanned[n + 1] / &scanned[n]))),
        })
        .collect();

    AnalysisReport {
        input: rec.clone(),
        characteristic: rec.characteristic(),
        classification,
        positivity,
        log_convexity,
        continued_fraction,
        terms,
        timings: Timings { positivity_ms, logconvex_ms, contfrac_ms, total_ms: ms(start) },
    }
}

fn positivity(
    rec: &Recurrence,
    opts: &AnalyzeOptions,
    scanned: &[Rational],
    class: &Classification,
) -> PositivityResult {
    if let Some(i) = scanned.iter().position(|u| !u.is_positive()) {
        return PositivityResult::Refuted {
            evidence: Evidence::NonPositiveTerm { index: i as u64, value: scanned[i].clone() },
        };
    }
    if rec.degree() == 0 {
        return match decide_constant(rec).expect("degree checked") {
            ConstantDecision::Positive { certificate } => {
                PositivityResult::Certified { method: "constant_coefficients".into(), certificate }
            }
            ConstantDecision::NotPositive { violated, first_nonpositive } => PositivityResult::Refuted {
                evidence: Evidence::ConstantDecision { violated, first_nonpositive },
            },
        };
    }
    match auto_certify_positive(rec, opts.m_max) {
        Ok(certificate) => {
            return PositivityResult::Certified { method: "criterion".into(), certificate };
        }
        Err(_) if class.verdict == Verdict::OscillatoryAll => {
            let first_sign_change = rec.sign_changes(scanned.len().max(2) - 1).first().copied();
            return PositivityResult::Refuted { evidence: Evidence::Oscillatory { first_sign_change } };
        }
        Err(_) => {}
    }
    match refute_positivity(rec, opts.cf_iters) {
        Refutation::Refuted { rho_hat, iteration } => {
            PositivityResult::Refuted { evidence: Evidence::ContinuedFraction { rho_hat, iteration } }
        }
        Refutation::InitialNonPositive => unreachable!("u_0 scanned above"),
        Refutation::Inconclusive { reason } => PositivityResult::Inconclusive {
            reason: format!(
                "no certificate with m <= {} and candidate lambda0 values; continued fraction: {}",
                opts.m_max, reason
            ),
        },
    }
}

fn log_convexity(rec: &Recurrence, opts: &AnalyzeOptions, scanned: &[Rational]) -> LogConvexityResult {
    match ratio_monotonicity_of(scanned) {
        Err(e) => return LogConvexityResult::Refuted { index: e.0 as u64, reason: e.to_string() },
        Ok(Some(i)) => {
            return LogConvexityResult::Refuted {
                index: i as u64,
                reason: format!("u_{}/u_{} < u_{}/u_{}", i + 2, i + 1, i + 1, i),
            }
        }
        Ok(None) => {}
    }
    let mut last = None;
    for m in 0..=opts.m_max {
        match certify_logconvex(rec, m) {
            Ok(certificate) => return LogConvexityResult::Certified { certificate },
            Err(e @ LogConvexError::Precondition { .. }) => {
                return LogConvexityResult::NotApplicable { reason: e.to_string() }
            }
            Err(LogConvexError::Failed(f)) => last = Some(f),
        }
    }
    LogConvexityResult::Inconclusive {
        reason: match last {
            Some(f) => format!("no start index m <= {}; at m = {}: {}", opts.m_max, opts.m_max, f),
            None => "no start index tried".into(),
        },
    }
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rec = &self.input;
        if let Some(l) = rec.label() {
            writeln!(f, "{}", l)?;
        }
        writeln!(f, "  a(n) = {}", rec.a())?;
        writeln!(f, "  b(n) = {}", rec.b())?;
        writeln!(f, "  c(n) = {}", rec.c())?;
        writeln!(f, "  u0 = {}, u1 = {}", rec.u0(), rec.u1())?;
        let ch = &self.characteristic;
        write!(f, "discriminant {} ({:?})", ch.disc, self.classification.verdict)?;
        match &ch.roots {
            Some((l1, l2)) => writeln!(f, ", roots {} and {}", l1, l2)?,
            None => writeln!(f)?,
        }
        match &self.positivity {
            PositivityResult::Certified { method, certificate } => writeln!(
                f,
                "positive: certified ({}) with lambda0 = {}, m = {}",
                method, certificate.lambda0, certificate.m
            )?,
            PositivityResult::Refuted { evidence } => writeln!(f, "not positive: {}", evidence)?,
            PositivityResult::Inconclusive { reason } => writeln!(f, "positivity inconclusive: {}", reason)?,
        }
        match &self.log_convexity {
            LogConvexityResult::Certified { certificate } => writeln!(
                f,
                "log-convex: certified with lambda0 = {}, m = {}",
                certificate.lambda0, certificate.m
            )?,
            LogConvexityResult::Refuted { reason, .. } => writeln!(f, "not log-convex: {}", reason)?,
            LogConvexityResult::NotApplicable { reason } => writeln!(f, "log-convexity: not applicable, {}", reason)?,
            LogConvexityResult::Inconclusive { reason } => writeln!(f, "log-convexity inconclusive: {}", reason)?,
        }
        if let Some(cf) = &self.continued_fraction {
            write!(f, "rho_0 >= {}", cf.rho_hat_decimal.as_deref().unwrap_or("?"))?;
            write!(f, " after {} iterations", cf.iterations)?;
            if let Some(n) = cf.divergence_at {
                write!(f, " (nonpositive minor at n = {})", n)?;
            } else if !cf.rigorous {
                write!(f, " (not rigorous)")?;
            }
            writeln!(f)?;
        }
        for row in &self.terms {
            match &row.ratio {
                Some(r) => writeln!(f, "  u_{:<3} = {}    ratio {}", row.n, row.u, r)?,
                None => writeln!(f, "  u_{:<3} = {}", row.n, row.u)?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::NonPositiveTerm { index, value } => write!(f, "u_{} = {}", index, value),
            Evidence::ConstantDecision { violated, first_nonpositive } => {
                write!(f, "{} fails", violated)?;
                match first_nonpositive {
                    Some(n) => write!(f, ", first nonpositive term u_{}", n),
                    None => Ok(()),
                }
            }
            Evidence::ContinuedFraction { rho_hat, iteration } => {
                write!(f, "u_1 < rho_hat * u_0 with rho_hat = {} (iteration {})", rho_hat, iteration)
            }
            Evidence::Oscillatory { first_sign_change } => {
                write!(f, "negative discriminant, every solution oscillates")?;
                match first_sign_change {
                    Some(n) => write!(f, "; u_{} * u_{} <= 0", n, n + 1),
                    None => Ok(()),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::corpus_lookup;

    #[test]
    fn szego_report() {
        let rec = corpus_lookup("szego").unwrap().rec;
        let r = analyze(&rec, &AnalyzeOptions::default());
        match &r.positivity {
            PositivityResult::Certified { certificate, .. } => {
                assert_eq!(certificate.lambda0.to_string(), "27/2");
                assert_eq!(certificate.m, 1);
            }
            other => panic!("{:?}", other),
        }
        assert_eq!(r.terms.len(), 20);
        assert!(r.to_string().contains("positive: certified"));
    }

    #[test]
    fn oscillating_report() {
        let rec = corpus_lookup("a006077").unwrap().rec;
        let r = analyze(&rec, &AnalyzeOptions::default());
        assert_eq!(r.classification.verdict, Verdict::OscillatoryAll);
        assert!(matches!(r.positivity, PositivityResult::Refuted { .. }));
        assert!(r.is_conclusive());
    }
}
