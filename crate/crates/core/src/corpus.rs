//! Named recurrences with known behavior and, where available, an
//! independent finite-sum formula for their terms.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exactmath::rational::{format_rational, int, parse_rational, serde_rational_opt};
use crate::exactmath::Rational;
use crate::recurrence::{Recurrence, ValidationError};
use crate::PolyQ;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CorpusError {
    #[error("unknown corpus key `{0}`")]
    UnknownKey(String),
    #[error("`{0}` needs a rational parameter")]
    MissingParam(String),
    #[error("`{0}` takes no parameter")]
    UnexpectedParam(String),
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("`{0}` has no closed form")]
    NoClosedForm(String),
    #[error("parameter gives an invalid recurrence: {0}")]
    Invalid(#[from] ValidationError),
}

/// Behavior the entry is known to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    PositivityCertificate,
    LogConvexityCertificate,
    OscillatoryAll,
    /// Zero discriminant, but every solution changes sign.
    SignChange,
    /// Zero discriminant; the given solution is constant.
    Constant,
    /// Zero discriminant, nothing known for this parameter.
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Straub,
    Szego,
    LewyAskey,
    KauersZeilberger,
    Apery,
    A006077,
    Cooper,
    Laguerre,
}

const FAMILIES: [(&str, Family, bool); 8] = [
    ("straub", Family::Straub, true),
    ("szego", Family::Szego, false),
    ("lewy_askey", Family::LewyAskey, false),
    ("kauers_zeilberger", Family::KauersZeilberger, false),
    ("apery", Family::Apery, false),
    ("a006077", Family::A006077, false),
    ("cooper", Family::Cooper, false),
    ("laguerre", Family::Laguerre, true),
];

#[derive(Debug, Clone, Serialize)]
pub struct CorpusEntry {
    pub key: String,
    #[serde(with = "serde_rational_opt", skip_serializing_if = "Option::is_none")]
    pub param: Option<Rational>,
    pub rec: Recurrence,
    pub expected: Expected,
    pub notes: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<String>,
    #[serde(skip)]
    family: Family,
}

/// Keys, with `(a)` / `(x)` marking parameterized families.
pub fn corpus_keys() -> Vec<&'static str> {
    vec!["straub(a)", "szego", "lewy_askey", "kauers_zeilberger", "apery", "a006077", "cooper", "laguerre(x)"]
}

/// Splits `name(param)` into its parts; a bare name has no parameter.
pub fn parse_key(spec: &str) -> Result<(String, Option<Rational>), CorpusError> {
    let spec = spec.trim();
    match spec.split_once('(') {
        None => Ok((spec.to_string(), None)),
        Some((name, rest)) => {
            let inner = rest.strip_suffix(')').ok_or_else(|| CorpusError::BadParam(spec.to_string()))?;
            let p = parse_rational(inner.trim()).map_err(|e| CorpusError::BadParam(e.to_string()))?;
            Ok((name.to_string(), Some(p)))
        }
    }
}

pub fn is_corpus_key(spec: &str) -> bool {
    parse_key(spec).is_ok_and(|(name, _)| FAMILIES.iter().any(|(k, _, _)| *k == name))
}

fn poly(c: &[i64]) -> PolyQ {
    PolyQ::from_ints(c)
}

pub fn corpus_get(key: &str, param: Option<&Rational>) -> Result<CorpusEntry, CorpusError> {
    let &(name, family, parameterized) = FAMILIES
        .iter()
        .find(|(k, _, _)| *k == key)
        .ok_or_else(|| CorpusError::UnknownKey(key.to_string()))?;
    match (parameterized, param) {
        (true, None) => return Err(CorpusError::MissingParam(name.to_string())),
        (false, Some(_)) => return Err(CorpusError::UnexpectedParam(name.to_string())),
        _ => {}
    }
    let cube = poly(&[1, 3, 3, 1]);
    let odd = poly(&[1, 2]);
    let mut metadata = None;
    let (rec, expected, notes) = match family {
        Family::Straub => {
            let a = param.unwrap();
            let two_minus = int(2) - a;
            let rec = Recurrence::new(
                poly(&[1, 1]),
                odd.scale(&two_minus),
                PolyQ::new(vec![Rational::zero(), a * a]),
                int(1),
                two_minus,
            )?;
            let exp = if *a <= int(1) { Expected::PositivityCertificate } else { Expected::OscillatoryAll };
            (rec, exp, "diagonal of 1/(1 - (x+y) + a*x*y); positive iff a <= 1")
        }
        Family::Szego => (
            Recurrence::new(poly(&[2, 4, 2]), poly(&[24, 81, 81]), poly(&[-81, 0, 729]), int(1), int(12))?,
            Expected::PositivityCertificate,
            "diagonal of 1/(1 - (x+y+z) + 3/4*(xy+yz+zx)) at (2x,2y,2z)",
        ),
        Family::LewyAskey => {
            metadata = Some("t_n = binomial(2n, n) * h_n matches the diagonal only for h_1 = 12; this entry keeps h_1 = 24".to_string());
            (
                Recurrence::new(poly(&[3, 6, 3]), poly(&[36, 112, 112]), poly(&[-64, 0, 1024]), int(1), int(24))?,
                Expected::PositivityCertificate,
                "Lewy-Askey rational function, normalized diagonal h_n",
            )
        }
        Family::KauersZeilberger => (
            Recurrence::new(cube, &odd * &poly(&[4, 12, 12]), poly(&[0, 0, 0, 16]), int(1), int(4))?,
            Expected::PositivityCertificate,
            "diagonal of the Kauers-Zeilberger rational function",
        ),
        Family::Apery => (
            Recurrence::new(cube, &odd * &poly(&[5, 17, 17]), poly(&[0, 0, 0, 1]), int(1), int(5))?,
            Expected::PositivityCertificate,
            "Apery numbers for zeta(3); initial values from the binomial sum",
        ),
        Family::A006077 => (
            Recurrence::new(poly(&[1, 2, 1]), poly(&[3, 9, 9]), poly(&[0, 0, 27]), int(1), int(3))?,
            Expected::OscillatoryAll,
            "diagonal of 1/(1 + x^3 + y^3 + z^3 - 3xyz); initial values from the binomial sum",
        ),
        Family::Cooper => (
            Recurrence::new(cube, &odd * &poly(&[6, 14, 14]), poly(&[0, -12, 0, 192]), int(1), int(6))?,
            Expected::LogConvexityCertificate,
            "Cooper's sporadic sequence s18",
        ),
        Family::Laguerre => {
            let x = param.unwrap();
            let one_minus = int(1) - x;
            let rec = Recurrence::new(
                poly(&[1, 1]),
                PolyQ::new(vec![one_minus.clone(), int(2)]),
                poly(&[0, 1]),
                int(1),
                one_minus,
            )?;
            let exp = if x.is_one() {
                Expected::SignChange
            } else if x.is_zero() {
                Expected::Constant
            } else {
                Expected::Undetermined
            };
            (rec, exp, "Laguerre polynomials L_n(x); zero discriminant")
        }
    };
    let label = match param {
        Some(p) => format!("{}({})", name, format_rational(p)),
        None => name.to_string(),
    };
    Ok(CorpusEntry {
        key: name.to_string(),
        param: param.cloned(),
        rec: rec.with_label(label),
        expected,
        notes: notes.to_string(),
        metadata,
        family,
    })
}

/// Looks up `name` or `name(param)`.
pub fn corpus_lookup(spec: &str) -> Result<CorpusEntry, CorpusError> {
    let (name, param) = parse_key(spec)?;
    corpus_get(&name, param.as_ref())
}

/// Every fixed entry plus the parameter values worked out by hand.
pub fn standard_instances() -> Vec<CorpusEntry> {
    [
        "straub(-1)",
        "straub(0)",
        "straub(1/2)",
        "straub(1)",
        "straub(3/2)",
        "straub(2)",
        "szego",
        "lewy_askey",
        "kauers_zeilberger",
        "apery",
        "a006077",
        "cooper",
        "laguerre(0)",
        "laguerre(1)",
    ]
    .iter()
    .map(|s| corpus_lookup(s).expect("built-in instance"))
    .collect()
}

fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: i64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn pow(base: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

fn r(x: BigInt) -> Rational {
    Rational::from_integer(x)
}

/// Multinomial `(3k)!/k!^3`.
fn trinomial(k: i64) -> BigInt {
    factorial(3 * k) / num_traits::pow(factorial(k), 3)
}

impl CorpusEntry {
    pub fn has_closed_form(&self) -> bool {
        !matches!(self.family, Family::LewyAskey | Family::KauersZeilberger)
    }

    /// `u_n` from the entry's finite-sum formula.
    pub fn closed_form(&self, n: i64) -> Option<Rational> {
        let sum = |f: &dyn Fn(i64) -> Rational, hi: i64| (0..=hi).fold(Rational::zero(), |acc, k| acc + f(k));
        let v = match self.family {
            Family::Apery => sum(&|k| r(num_traits::pow(binom(n, k) * binom(n + k, k), 2)), n),
            Family::Szego => sum(
                &|k| pow(&int(-27), n - k) * pow(&int(2), 2 * k - n) * r(trinomial(k) * binom(k, n - k)),
                n,
            ),
            Family::Straub => {
                let a = self.param.as_ref().unwrap();
                sum(
                    &|k| {
                        r(factorial(2 * n - k) / (factorial(k) * num_traits::pow(factorial(n - k), 2)))
                            * pow(&-a.clone(), k)
                    },
                    n,
                )
            }
            Family::A006077 => sum(
                &|k| pow(&int(-1), k) * pow(&int(3), n - 3 * k) * r(binom(n, 3 * k) * trinomial(k)),
                n / 3,
            ),
            Family::Cooper => sum(
                &|k| {
                    let head = binom(n, k) * binom(2 * k, k) * binom(2 * (n - k), n - k);
                    let tail = binom(2 * n - 3 * k - 1, n) + binom(2 * n - 3 * k, n);
                    pow(&int(-1), k) * r(head * tail)
                },
                n / 3,
            ),
            // L_n(x) = Σ binomial(n, k) (−x)^k / k!
            Family::Laguerre => {
                let x = self.param.as_ref().unwrap();
                sum(&|k| r(binom(n, k)) * pow(&-x.clone(), k) / r(factorial(k)), n)
            }
            Family::LewyAskey | Family::KauersZeilberger => return None,
        };
        Some(v)
    }

    /// `u_0 … u_N` from the closed form.
    pub fn oracle_terms(&self, n: usize) -> Result<Vec<Rational>, CorpusError> {
        if !self.has_closed_form() {
            return Err(CorpusError::NoClosedForm(self.key.clone()));
        }
        Ok((0..=n as i64).map(|k| self.closed_form(k).unwrap()).collect())
    }

    /// Compares the closed form with the terms of `rec`, which defaults to
    /// the entry's own recurrence.
    pub fn cross_check_against(&self, rec: &Recurrence, n: usize) -> Result<Result<(), Mismatch>, CorpusError> {
        let oracle = self.oracle_terms(n)?;
        let terms = rec.terms(n);
        Ok(match oracle.iter().zip(&terms).position(|(o, t)| o != t) {
            None => Ok(()),
            Some(i) => Err(Mismatch { index: i, expected: oracle[i].clone(), actual: terms[i].clone() }),
        })
    }

    pub fn cross_check(&self, n: usize) -> Result<Result<(), Mismatch>, CorpusError> {
        self.cross_check_against(&self.rec, n)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("u_{index}: closed form gives {expected}, recurrence gives {actual}")]
pub struct Mismatch {
    pub index: usize,
    pub expected: Rational,
    pub actual: Rational,
}

pub fn oracle_terms(key: &str, param: Option<&Rational>, n: usize) -> Result<Vec<Rational>, CorpusError> {
    corpus_get(key, param)?.oracle_terms(n)
}

pub fn cross_check(key: &str, param: Option<&Rational>, n: usize) -> Result<Result<(), Mismatch>, CorpusError> {
    corpus_get(key, param)?.cross_check(n)
}
