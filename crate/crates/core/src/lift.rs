//! The `L^q` function of least norm whose Riesz projection is
//! `φ = z_1 + … + z_d`.
//!
//! With `p` conjugate to `q` the minimizer is `ψ = C |φ|^{p−2} φ`,
//! `C = d / ‖φ‖_p^p`: it pairs with `φ` to `d` and is a multiple of the
//! norming functional of `φ` in `L^p`, so its projection is `φ` and its
//! norm is `d / ‖φ‖_p`. The grid samples of `ψ` make all three facts
//! checkable.

use num_complex::Complex64;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::fourier::grid::{abs_pow, grid_len};
use crate::fourier::{extract_coefficients, sample_grid, FourierSeries, GridFunction, LinearPolynomial, MultiIndex};
use crate::norms::{grid_norm_at, LinearNorm};
use crate::special::{gamma, recip_gamma};

#[derive(Debug, Clone)]
pub struct MinimalLift {
    pub d: usize,
    pub q: Exponent,
    pub p: f64,
    /// `C = d · ‖φ‖_p^{−p}`, with `‖φ‖_p` from the same grid.
    pub normalizer: f64,
    pub lift: GridFunction,
}

const MAX_LIFT_POINTS: usize = 1 << 26;

/// Samples `ψ` on the `N^d` grid. Where `φ` vanishes, `ψ` is set to 0.
/// Sampled zeros of `φ` come out as rounding noise, and for `p < 2` the
/// phase of that noise would leak into `ψ`, so anything below `d·1e-12`
/// counts as a zero.
pub fn build_lift(d: usize, q: Exponent, n: usize) -> Result<MinimalLift> {
    if d == 0 || d > 4 {
        return Err(Error::Cost(format!("minimal lift limited to 1 <= d <= 4, got {d}")));
    }
    if let Exponent::Finite(v) = q {
        if !(v > 1.0) {
            return Err(Error::Domain(format!("q must lie in (1, inf], got {v}")));
        }
    }
    if n < 3 {
        return Err(Error::Aliasing { points: n, max_exponent: 1 });
    }
    if grid_len(d, n)? > MAX_LIFT_POINTS {
        return Err(Error::Cost(format!("lift grid {n}^{d} exceeds {MAX_LIFT_POINTS} points")));
    }
    let p = q.conjugate().finite().expect("q > 1 has a finite conjugate");
    let phi = LinearPolynomial::sum(d).to_series();
    let phi_norm = grid_norm_at(&phi, Exponent::Finite(p), n)?;
    let normalizer = d as f64 / phi_norm.powf(p);
    let samples = sample_grid(&phi, n)?;
    let zero = d as f64 * 1e-12;
    let lift = samples.map(|v| {
        if v.norm() <= zero {
            return Complex64::new(0.0, 0.0);
        }
        // |v|^{p−2} v, written to stay finite for p < 2
        v * (normalizer * abs_pow(v, p) / v.norm_sqr())
    });
    Ok(MinimalLift { d, q, p, normalizer, lift })
}

pub fn build_lift_default(d: usize, q: Exponent, cfg: &Config) -> Result<MinimalLift> {
    build_lift(d, q, cfg.lift_n(d))
}

#[derive(Debug, Clone, Serialize)]
pub struct CoefficientEntry {
    pub alpha: Vec<i32>,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProjectionReport {
    pub tol: f64,
    /// Largest of `|c_{e_j} − 1|` and `|c_α|` over the other analytic `α`.
    pub max_violation: f64,
    pub worst_alpha: Vec<i32>,
    /// The largest non-analytic coefficients, by modulus.
    pub dominant_non_analytic: Vec<CoefficientEntry>,
    /// All extracted coefficients above the purge threshold.
    pub coefficients: FourierSeries,
}

impl ProjectionReport {
    pub fn passed(&self) -> bool {
        self.max_violation <= self.tol
    }

    pub fn check(&self) -> Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(Error::Projection {
                alpha: self.worst_alpha.clone(),
                detail: format!("violation {:.3e} exceeds tolerance {:.1e}", self.max_violation, self.tol),
            })
        }
    }
}

/// Extracts the coefficients with `|α_j| ≤ max_deg` and compares the
/// analytic ones with those of `φ`. Tolerance is `1e-6` for `p ≥ 2` and
/// `1e-3` below, where the weight `|φ|^{p−2}` is singular.
pub fn verify_projection(lift: &MinimalLift, max_deg: usize) -> Result<ProjectionReport> {
    let coeffs = extract_coefficients(&lift.lift, max_deg, 0.0)?;
    let tol = if lift.p >= 2.0 { 1e-6 } else { 1e-3 };
    let d = lift.d;
    let mut max_violation = 0.0;
    let mut worst_alpha = vec![0; d];
    let mut non_analytic = Vec::new();
    for (alpha, c) in coeffs.terms() {
        let v = if alpha.is_analytic() {
            let target = if alpha.degree() == 1 { 1.0 } else { 0.0 };
            (c - target).norm()
        } else {
            non_analytic.push(CoefficientEntry { alpha: alpha.padded(d), re: c.re + 0.0, im: c.im + 0.0 });
            continue;
        };
        if v > max_violation {
            max_violation = v;
            worst_alpha = alpha.padded(d);
        }
    }
    // unit coefficients absent from the map count as 0
    for j in 0..d {
        if coeffs.coeff(&MultiIndex::unit(j)) == Complex64::new(0.0, 0.0) && max_violation < 1.0 {
            max_violation = 1.0;
            worst_alpha = MultiIndex::unit(j).padded(d);
        }
    }
    non_analytic.sort_by(|a, b| (b.re.hypot(b.im)).total_cmp(&a.re.hypot(a.im)));
    non_analytic.truncate(8);
    Ok(ProjectionReport {
        tol,
        max_violation,
        worst_alpha,
        dominant_non_analytic: non_analytic,
        coefficients: coeffs.purge(1e-12),
    })
}

/// Coefficient of `z_1^k z_2^{1−k}` in the `d = 2` lift:
/// `Γ(1+p/2) Γ(p/2) / (Γ(1+p/2−k) Γ(p/2+k))`, zero where a denominator
/// argument is a pole.
pub fn d2_closed_form_coefficient(p: f64, k: i64) -> f64 {
    let s = 0.5 * p;
    gamma(1.0 + s) * gamma(s) * recip_gamma(1.0 + s - k as f64) * recip_gamma(s + k as f64)
}

/// `(‖ψ‖_q on the grid, d / ‖φ‖_p)` with the right side from a method that
/// does not touch the grid.
pub fn minimal_norm_identity(lift: &MinimalLift) -> Result<(f64, f64)> {
    let lhs = lift.lift.norm(lift.q);
    let phi_norm = LinearNorm { bessel_tol: 1e-12, ..LinearNorm::default() }
        .norm(&LinearPolynomial::sum(lift.d), lift.p)?
        .value;
    Ok((lhs, lift.d as f64 / phi_norm))
}
