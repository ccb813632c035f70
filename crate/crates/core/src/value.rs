//! The max-plus semiring `R ∪ {-∞}`, with the completed element `+∞`.
//!
//! | op | meaning | neutral |
//! |----|---------|---------|
//! | ⊕  | max     | -∞      |
//! | ⊗  | +       | 0       |
//!
//! Infinities are tags, never IEEE sentinels, so comparisons are exact and
//! integer-valued inputs stay integer-valued.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Absolute tolerance used for equality tests on non-integer data.
pub const EQ_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug)]
pub enum MaxPlusValue {
    NegInf,
    Finite(f64),
    /// Only produced transiently while closing a kernel with a positive cycle.
    PosInf,
}

pub use MaxPlusValue::{Finite, NegInf, PosInf};

impl MaxPlusValue {
    pub const ZERO: MaxPlusValue = Finite(0.0);

    /// Maps IEEE infinities to the tagged variants.
    ///
    /// Panics on NaN.
    pub fn new(v: f64) -> Self {
        assert!(!v.is_nan(), "NaN is not a max-plus value");
        if v == f64::NEG_INFINITY {
            NegInf
        } else if v == f64::INFINITY {
            PosInf
        } else {
            Finite(v)
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn is_neg_inf(self) -> bool {
        matches!(self, NegInf)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Finite(v) => Some(v),
            _ => None,
        }
    }

    /// IEEE view, for I/O and the analytic module.
    pub fn to_f64(self) -> f64 {
        match self {
            NegInf => f64::NEG_INFINITY,
            Finite(v) => v,
            PosInf => f64::INFINITY,
        }
    }

    pub fn oplus(self, other: Self) -> Self {
        oplus(self, other)
    }

    pub fn otimes(self, other: Self) -> Self {
        otimes(self, other)
    }

    /// Equality up to [`EQ_TOL`] on finite values; infinities must match.
    pub fn approx_eq(self, other: Self) -> bool {
        match (self, other) {
            (Finite(a), Finite(b)) => (a - b).abs() <= EQ_TOL,
            (NegInf, NegInf) | (PosInf, PosInf) => true,
            _ => false,
        }
    }

    /// `self <= other` up to [`EQ_TOL`].
    pub fn approx_le(self, other: Self) -> bool {
        match (self, other) {
            (Finite(a), Finite(b)) => a <= b + EQ_TOL,
            _ => self <= other,
        }
    }
}

/// `max(a, b)` under the order -∞ < reals < +∞.
/// Ordinary negation, mapping -∞ and +∞ to each other.
impl std::ops::Neg for MaxPlusValue {
    type Output = MaxPlusValue;

    fn neg(self) -> Self {
        match self {
            NegInf => PosInf,
            Finite(v) => Finite(-v),
            PosInf => NegInf,
        }
    }
}

pub fn oplus(a: MaxPlusValue, b: MaxPlusValue) -> MaxPlusValue {
    if a >= b {
        a
    } else {
        b
    }
}

/// `a + b`, with -∞ absorbing even against +∞.
pub fn otimes(a: MaxPlusValue, b: MaxPlusValue) -> MaxPlusValue {
    match (a, b) {
        (NegInf, _) | (_, NegInf) => NegInf,
        (PosInf, _) | (_, PosInf) => PosInf,
        (Finite(x), Finite(y)) => Finite(x + y),
    }
}

impl PartialEq for MaxPlusValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for MaxPlusValue {}

impl PartialOrd for MaxPlusValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MaxPlusValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.partial_cmp(b).unwrap_or(Ordering::Equal),
        }
    }
}

impl From<f64> for MaxPlusValue {
    fn from(v: f64) -> Self {
        MaxPlusValue::new(v)
    }
}

impl From<i64> for MaxPlusValue {
    fn from(v: i64) -> Self {
        Finite(v as f64)
    }
}

impl From<i32> for MaxPlusValue {
    fn from(v: i32) -> Self {
        Finite(v as f64)
    }
}

impl fmt::Display for MaxPlusValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => f.write_str("-inf"),
            PosInf => f.write_str("+inf"),
            Finite(v) => write!(f, "{}", v + 0.0),
        }
    }
}

impl FromStr for MaxPlusValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "-inf" | "-infinity" => return Ok(NegInf),
            "+inf" | "inf" | "+infinity" | "infinity" => return Ok(PosInf),
            _ => {}
        }
        let v: f64 = t
            .parse()
            .map_err(|_| Error::Parse(format!("not a max-plus value: {s:?}")))?;
        if !v.is_finite() {
            return Err(Error::Parse(format!("not a max-plus value: {s:?}")));
        }
        Ok(Finite(v))
    }
}

/// Rounds to 12 significant digits, the precision used for emitted reports.
pub fn round_sig12(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v + 0.0;
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}

impl Serialize for MaxPlusValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            NegInf => serializer.serialize_str("-inf"),
            PosInf => serializer.serialize_str("+inf"),
            Finite(v) => {
                let r = round_sig12(*v);
                if r.fract() == 0.0 && r.abs() < 9.0e15 {
                    serializer.serialize_i64(r as i64)
                } else {
                    serializer.serialize_f64(r)
                }
            }
        }
    }
}

struct ValueVisitor;

impl<'de> Visitor<'de> for ValueVisitor {
    type Value = MaxPlusValue;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a number or one of \"-inf\", \"+inf\"")
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Self::Value, E> {
        Ok(Finite(v))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Self::Value, E> {
        Ok(Finite(v as f64))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Self::Value, E> {
        Ok(Finite(v as f64))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
        v.parse().map_err(|e: Error| E::custom(e.to_string()))
    }
}

impl<'de> Deserialize<'de> for MaxPlusValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_any(ValueVisitor)
    }
}
