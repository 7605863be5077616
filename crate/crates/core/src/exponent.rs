use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An integrability exponent in `[1, ∞]`. `∞` is a distinguished value, never
/// a large float, so that its conjugate is exactly 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinite,
}

impl Exponent {
    pub fn finite(self) -> Option<f64> {
        match self {
            Exponent::Finite(v) => Some(v),
            Exponent::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinite)
    }

    /// Hölder conjugate: `1/s + 1/s' = 1`. The conjugate of 1 is `∞` and
    /// vice versa.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Infinite => Exponent::Finite(1.0),
            Exponent::Finite(v) if v == 1.0 => Exponent::Infinite,
            Exponent::Finite(v) => Exponent::Finite(v / (v - 1.0)),
        }
    }

    /// `1/s`, with `1/∞ = 0`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Finite(v) => 1.0 / v,
            Exponent::Infinite => 0.0,
        }
    }

    /// Total order with `∞` on top.
    pub fn le(self, other: Exponent) -> bool {
        match (self, other) {
            (_, Exponent::Infinite) => true,
            (Exponent::Infinite, Exponent::Finite(_)) => false,
            (Exponent::Finite(a), Exponent::Finite(b)) => a <= b,
        }
    }
}

impl From<f64> for Exponent {
    fn from(v: f64) -> Self {
        if v.is_infinite() {
            Exponent::Infinite
        } else {
            Exponent::Finite(v)
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(v) => write!(f, "{v}"),
            Exponent::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => return Ok(Exponent::Infinite),
            _ => {}
        }
        if let Some((a, b)) = t.split_once('/') {
            let num: f64 = a.trim().parse().map_err(|_| Error::Parse(format!("bad exponent {s:?}")))?;
            let den: f64 = b.trim().parse().map_err(|_| Error::Parse(format!("bad exponent {s:?}")))?;
            return Ok(Exponent::from(num / den));
        }
        t.parse::<f64>()
            .map(Exponent::from)
            .map_err(|_| Error::Parse(format!("bad exponent {s:?}")))
    }
}

/// `(p, q, r)` with `1/q + 1/r = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentTriple {
    pub p: f64,
    pub q: Exponent,
    pub r: f64,
}

impl ExponentTriple {
    pub fn new(p: f64, q: Exponent) -> Result<Self> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::Domain(format!("p must be a finite value >= 1, got {p}")));
        }
        let r = match q {
            Exponent::Infinite => 1.0,
            Exponent::Finite(v) if v > 1.0 && v.is_finite() => v / (v - 1.0),
            Exponent::Finite(v) => {
                return Err(Error::Domain(format!("q must lie in (1, inf], got {v}")))
            }
        };
        Ok(ExponentTriple { p, q, r })
    }

    /// Like [`ExponentTriple::new`] but also requires `2 <= p <= q`.
    pub fn ordered(p: f64, q: Exponent) -> Result<Self> {
        let t = Self::new(p, q)?;
        if p < 2.0 {
            return Err(Error::Domain(format!("p must be >= 2, got {p}")));
        }
        if !Exponent::Finite(p).le(q) {
            return Err(Error::Ordering { p, q: q.to_string() });
        }
        Ok(t)
    }
}
