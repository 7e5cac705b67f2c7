//! A real number that is either rational or lies in some `Q(√D)`.

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, to_decimal};
use super::{ExactField, QuadExt, Rational};

#[derive(Clone, Debug)]
pub enum ExactReal {
    Rational(Rational),
    Quadratic(QuadExt),
}

impl ExactReal {
    pub fn to_quad(&self) -> QuadExt {
        match self {
            ExactReal::Rational(r) => QuadExt::from(r.clone()),
            ExactReal::Quadratic(q) => q.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            ExactReal::Rational(r) => Some(r),
            ExactReal::Quadratic(_) => None,
        }
    }

    pub fn sign(&self) -> Ordering {
        match self {
            ExactReal::Rational(r) => r.sign(),
            ExactReal::Quadratic(q) => q.sign(),
        }
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        match self {
            ExactReal::Rational(r) => to_decimal(r, digits),
            ExactReal::Quadratic(q) => q.to_decimal(digits),
        }
    }
}

impl From<Rational> for ExactReal {
    fn from(r: Rational) -> Self {
        ExactReal::Rational(r)
    }
}

impl From<QuadExt> for ExactReal {
    fn from(q: QuadExt) -> Self {
        match q.as_rational() {
            Some(r) => ExactReal::Rational(r.clone()),
            None => ExactReal::Quadratic(q),
        }
    }
}

impl PartialEq for ExactReal {
    fn eq(&self, other: &Self) -> bool {
        self.to_quad() == other.to_quad()
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactReal::Rational(r) => write!(f, "{}", r),
            ExactReal::Quadratic(q) => write!(f, "{}", q),
        }
    }
}

/// Rationals serialize as `"p/q"` strings, irrationals as `{"p","q","D"}` objects.
impl Serialize for ExactReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExactReal::Rational(r) => s.serialize_str(&format_rational(r)),
            ExactReal::Quadratic(q) => q.serialize(s),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Repr {
    Text(String),
    Quad(QuadExt),
}

impl<'de> Deserialize<'de> for ExactReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match Repr::deserialize(d)? {
            Repr::Text(t) => ExactReal::Rational(parse_rational(&t).map_err(D::Error::custom)?),
            Repr::Quad(q) => ExactReal::from(q),
        })
    }
}
