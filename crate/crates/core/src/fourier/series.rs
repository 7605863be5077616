use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::MultiIndex;
use crate::error::{Error, Result};

/// Finitely supported Fourier series `Σ c_α z^α` in `dim` variables.
///
/// No stored coefficient is exactly zero, and `dim` is at least the support
/// length of every key.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FourierSeries {
    dim: usize,
    terms: BTreeMap<MultiIndex, Complex64>,
}

impl FourierSeries {
    pub fn zero(dim: usize) -> Self {
        FourierSeries { dim, terms: BTreeMap::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_terms(0, [(MultiIndex::zero(), c)])
    }

    pub fn monomial(alpha: impl Into<MultiIndex>, c: Complex64) -> Self {
        Self::from_terms(0, [(alpha.into(), c)])
    }

    /// `z_j` for zero-based `j`.
    pub fn variable(j: usize) -> Self {
        Self::monomial(MultiIndex::unit(j), Complex64::new(1.0, 0.0))
    }

    /// Builds a series, summing repeated keys and dropping exact zeros.
    /// The dimension is raised to cover the support if needed.
    pub fn from_terms<I>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        let mut s = FourierSeries::zero(dim);
        for (a, c) in terms {
            s.add_term(a, c);
        }
        s
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: Complex64) {
        use std::collections::btree_map::Entry;
        self.dim = self.dim.max(alpha.support_len());
        let zero = Complex64::new(0.0, 0.0);
        match self.terms.entry(alpha) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == zero {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                if c != zero {
                    v.insert(c);
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Same terms, viewed in at least `dim` variables.
    pub fn with_dim(mut self, dim: usize) -> Self {
        self.dim = self.dim.max(dim);
        self
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Complex64 {
        self.terms.get(alpha).copied().unwrap_or_default()
    }

    pub fn max_abs_exponent(&self) -> i64 {
        self.terms.keys().map(MultiIndex::max_abs).max().unwrap_or(0)
    }

    /// `‖f‖_2` by Parseval.
    pub fn norm_l2(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `Σ c_α e^{i α·θ}`.
    pub fn evaluate(&self, theta: &[f64]) -> Result<Complex64> {
        if theta.len() < self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: theta.len() });
        }
        Ok(self
            .terms
            .iter()
            .map(|(a, c)| {
                let phase: f64 = a.entries().iter().zip(theta).map(|(&k, &t)| k as f64 * t).sum();
                c * Complex64::from_polar(1.0, phase)
            })
            .sum())
    }

    fn filter(&self, keep: impl Fn(&MultiIndex) -> bool) -> FourierSeries {
        FourierSeries {
            dim: self.dim,
            terms: self.terms.iter().filter(|(a, _)| keep(a)).map(|(a, c)| (a.clone(), *c)).collect(),
        }
    }

    /// Riesz projection: keeps the terms with every exponent nonnegative.
    pub fn riesz_project(&self) -> FourierSeries {
        self.filter(MultiIndex::is_analytic)
    }

    /// The `k`-homogeneous part, i.e. terms of total degree `k`.
    pub fn homogeneous_part(&self, k: i64) -> FourierSeries {
        self.filter(|a| a.degree() == k)
    }

    /// Distinct total degrees present, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.terms.keys().map(MultiIndex::degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Sets every variable past the first `d` to zero in the sense of the
    /// mean over the tail variables: terms touching a tail variable vanish.
    pub fn restrict(&self, d: usize) -> FourierSeries {
        let mut out = self.filter(|a| a.support_len() <= d);
        out.dim = self.dim.min(d);
        out
    }

    /// Moves variable `j` to `map(j)`; the result has dimension `dim`.
    pub fn reindex(&self, dim: usize, map: impl Fn(usize) -> usize) -> FourierSeries {
        FourierSeries::from_terms(dim, self.terms.iter().map(|(a, c)| (a.reindex(&map), *c)))
    }

    /// `f(z_1, z_3, z_5, ...) · f(z_2, z_4, z_6, ...)` in `2·dim` variables.
    pub fn tensor_double(&self) -> FourierSeries {
        let odd = self.reindex(2 * self.dim, |j| 2 * j);
        let even = self.reindex(2 * self.dim, |j| 2 * j + 1);
        (&odd * &even).with_dim(2 * self.dim)
    }

    /// `Σ_α c_α(self) · conj(c_α(other))`.
    pub fn inner(&self, other: &FourierSeries) -> Complex64 {
        let (small, large, flip) = if self.len() <= other.len() {
            (self, other, false)
        } else {
            (other, self, true)
        };
        small
            .terms
            .iter()
            .filter_map(|(a, c)| large.terms.get(a).map(|d| if flip { d * c.conj() } else { c * d.conj() }))
            .sum()
    }

    /// Pointwise complex conjugate on the torus: `c_α -> conj(c_{-α})`.
    pub fn conj(&self) -> FourierSeries {
        FourierSeries::from_terms(self.dim, self.terms.iter().map(|(a, c)| (a.neg(), c.conj())))
    }

    pub fn scale(&self, s: Complex64) -> FourierSeries {
        FourierSeries::from_terms(self.dim, self.terms.iter().map(|(a, c)| (a.clone(), c * s)))
    }

    /// Drops coefficients with modulus below `threshold`.
    pub fn purge(&self, threshold: f64) -> FourierSeries {
        self.filter(|a| self.terms[a].norm() >= threshold)
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| TermJson { alpha: a.padded(self.dim), re: c.re + 0.0, im: c.im + 0.0 })
                .collect(),
        }
    }

    pub fn from_json(j: &SeriesJson) -> FourierSeries {
        FourierSeries::from_terms(
            j.dim,
            j.terms.iter().map(|t| (MultiIndex::from(t.alpha.clone()), Complex64::new(t.re, t.im))),
        )
    }

    /// Canonical JSON text: terms sorted by exponent vector, padded to `dim`.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("series serialization cannot fail")
    }

    pub fn from_json_str(s: &str) -> Result<FourierSeries> {
        let j: SeriesJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(FourierSeries::from_json(&j))
    }
}

/// Wire form of a [`FourierSeries`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub dim: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub alpha: Vec<i32>,
    pub re: f64,
    pub im: f64,
}

impl Add for &FourierSeries {
    type Output = FourierSeries;

    fn add(self, rhs: &FourierSeries) -> FourierSeries {
        let mut out = self.clone();
        out.dim = out.dim.max(rhs.dim);
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), *c);
        }
        out
    }
}

impl Sub for &FourierSeries {
    type Output = FourierSeries;

    fn sub(self, rhs: &FourierSeries) -> FourierSeries {
        self + &rhs.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &FourierSeries {
    type Output = FourierSeries;

    fn mul(self, rhs: &FourierSeries) -> FourierSeries {
        let mut acc: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                *acc.entry(a.add(b)).or_default() += c * d;
            }
        }
        FourierSeries::from_terms(self.dim.max(rhs.dim), acc)
    }
}

/// Serializes in the canonical `{"dim", "terms"}` layout.
impl serde::Serialize for FourierSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}
