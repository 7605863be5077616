use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{FourierSeries, MultiIndex};
use crate::error::{Error, Result};

/// `f(z) = Σ_j c_j z_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct LinearPolynomial {
    pub coeffs: Vec<Complex64>,
}

impl LinearPolynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        LinearPolynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        LinearPolynomial { coeffs: coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect() }
    }

    /// `(z_1 + ... + z_d) / √d`.
    pub fn symmetric(d: usize) -> Self {
        Self::from_real(&vec![1.0 / (d as f64).sqrt(); d])
    }

    /// `z_1 + ... + z_d`.
    pub fn sum(d: usize) -> Self {
        Self::from_real(&vec![1.0; d])
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    pub fn norm_l2(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖f‖_∞ = Σ |c_j|`.
    pub fn norm_sup(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    pub fn evaluate(&self, theta: &[f64]) -> Result<Complex64> {
        if theta.len() < self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: theta.len() });
        }
        Ok(self.coeffs.iter().zip(theta).map(|(c, &t)| c * Complex64::from_polar(1.0, t)).sum())
    }

    pub fn scale(&self, s: f64) -> Self {
        LinearPolynomial { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn to_series(&self) -> FourierSeries {
        FourierSeries::from_terms(
            self.dim(),
            self.coeffs.iter().enumerate().map(|(j, c)| (MultiIndex::unit(j), *c)),
        )
    }

    /// Parses `"1,0.5"` or complex entries such as `"1+2i,-0.5i"`.
    pub fn parse(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| parse_complex(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        Ok(LinearPolynomial { coeffs })
    }
}

fn parse_complex(t: &str) -> Result<Complex64> {
    let err = || Error::Parse(format!("bad coefficient {t:?}"));
    let t = t.replace(' ', "");
    if let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) {
        // Split at the last sign that is not part of an exponent.
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            v => v.parse::<f64>().map_err(|_| err())?,
        };
        let re = re.parse::<f64>().map_err(|_| err())?;
        Ok(Complex64::new(re, im))
    } else {
        Ok(Complex64::new(t.parse::<f64>().map_err(|_| err())?, 0.0))
    }
}
