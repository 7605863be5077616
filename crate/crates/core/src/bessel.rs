//! Bessel functions of integer order, zeros of `J_0`, and moments of planar
//! random walks with prescribed step lengths.
//!
//! For a walk `R = |Σ_j w_j z_j|` with independent uniform phases the
//! characteristic function is `Π_j J_0(w_j x)`, and for `s > 0` not an even
//! integer
//!
//! ```text
//! E R^s = K_s ∫_0^∞ x^{-s-1} (T_m(x) − Π_j J_0(w_j x)) dx,
//! K_s   = s 2^s Γ(1+s/2) / Γ(1−s/2),   m = ⌊s/2⌋,
//! ```
//!
//! where `T_m` is the Taylor polynomial of `Π_j J_0(w_j x)` through `x^{2m}`.
//! The subtraction makes the integral absolutely convergent, so the tail
//! beyond the last partition point is bounded with `√y |J_0(y)| ≤ 0.8`.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::quad::GaussLegendre;
use crate::special::gamma;

/// `J_n(x)` for integer `n ≥ 0`.
pub fn bessel_j(n: u32, x: f64) -> f64 {
    let sign = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    let x = x.abs();
    let switch = 25.0 + (n * n) as f64;
    let v = if x <= switch { j_trapezoid(n, x) } else { j_hankel(n, x) };
    sign * v
}

pub fn bessel_j0(x: f64) -> f64 {
    bessel_j(0, x)
}

pub fn bessel_j1(x: f64) -> f64 {
    bessel_j(1, x)
}

// J_n(x) = (1/2π) ∫ cos(nτ − x sin τ) dτ; the periodic trapezoid rule
// converges faster than geometrically once M exceeds x + n.
fn j_trapezoid(n: u32, x: f64) -> f64 {
    let m = (x + n as f64 + 40.0).ceil() as usize;
    let h = TAU / m as f64;
    let s: f64 = (0..m)
        .map(|k| {
            let t = h * k as f64;
            (n as f64 * t - x * t.sin()).cos()
        })
        .sum();
    s / m as f64
}

// Hankel asymptotic expansion, truncated at the smallest term.
fn j_hankel(n: u32, x: f64) -> f64 {
    let mu = 4.0 * (n as f64).powi(2);
    let mut p = 0.0;
    let mut q = 0.0;
    let mut term: f64 = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..200usize {
        if term.abs() > last || term.abs() < 1e-18 {
            break;
        }
        last = term.abs();
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        let odd = (2 * k + 1) as f64;
        term *= (mu - odd * odd) / ((k + 1) as f64 * 8.0 * x);
    }
    let chi = x - (0.5 * n as f64 + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// The `m`-th positive zero of `J_0` (`m ≥ 1`).
pub fn j0_zero(m: usize) -> f64 {
    let beta = (m as f64 - 0.25) * PI;
    let b2 = beta * beta;
    let mut x = beta + 1.0 / (8.0 * beta) - 31.0 / (384.0 * beta * b2) + 3779.0 / (15360.0 * beta * b2 * b2);
    for _ in 0..8 {
        let dx = bessel_j0(x) / bessel_j1(x);
        x += dx;
        if dx.abs() < 1e-15 * x {
            break;
        }
    }
    x
}

/// Taylor coefficients (in powers of `x²`) of `Π_j J_0(w_j x)`, up to `x^{2K}`.
fn product_series(weights: &[f64], order: usize) -> Vec<f64> {
    let mut acc = vec![0.0; order + 1];
    acc[0] = 1.0;
    for &w in weights {
        // J_0(wx) = Σ_k (−1)^k (w/2)^{2k} / (k!)^2 x^{2k}
        let mut j = vec![0.0; order + 1];
        let mut t = 1.0;
        for (k, jk) in j.iter_mut().enumerate() {
            *jk = t;
            let kk = (k + 1) as f64;
            t *= -(0.5 * w).powi(2) / (kk * kk);
        }
        let mut next = vec![0.0; order + 1];
        for a in 0..=order {
            if acc[a] == 0.0 {
                continue;
            }
            for b in 0..=(order - a) {
                next[a + b] += acc[a] * j[b];
            }
        }
        acc = next;
    }
    acc
}

/// `E R^s` with its rigorous truncation bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkMoment {
    pub moment: f64,
    pub error_bound: f64,
    pub intervals: usize,
}

/// `E |Σ_j w_j z_j|^s` for `s > 0` not an even integer, to absolute error
/// `tol` on the moment (plus quadrature rounding).
pub fn walk_moment(weights: &[f64], s: f64, tol: f64) -> Result<WalkMoment> {
    let w: Vec<f64> = weights.iter().map(|v| v.abs()).filter(|&v| v > 0.0).collect();
    if w.is_empty() {
        return Err(Error::Domain("random walk needs a nonzero step".into()));
    }
    if !(s > 0.0) || (s / 2.0).fract() == 0.0 {
        return Err(Error::Domain(format!("walk moment needs s > 0 not an even integer, got {s}")));
    }
    let n = w.len() as f64;
    let m = (s / 2.0).floor() as usize;
    let ks = s * 2f64.powf(s) * gamma(1.0 + 0.5 * s) / gamma(1.0 - 0.5 * s);
    let wmax = w.iter().cloned().fold(0.0, f64::max);
    let wsum: f64 = w.iter().sum();

    // [0, a]: termwise integration of the power series.
    let a = 2.0 / wsum;
    let series = product_series(&w, m + 60);
    let mut head = 0.0;
    for (k, ak) in series.iter().enumerate().skip(m + 1) {
        let e = 2.0 * k as f64 - s;
        head -= ak * a.powf(e) / e;
    }

    // Tail bound for the Bessel part: ∫_X^∞ x^{-s-1} Π (0.8/√(w_j x)) dx.
    let c = 0.8f64.powf(n) / w.iter().map(|v| v.sqrt()).product::<f64>();
    let expo = s + 0.5 * n;
    let target = tol / ks.abs();
    let x_cut = (c / (expo * target)).powf(1.0 / expo).max(10.0 * a).min(1e6 / wmax);
    let bessel_tail = c * x_cut.powf(-expo) / expo;

    let poly = |x: f64| -> f64 {
        let x2 = x * x;
        let mut t = 0.0;
        let mut pw = 1.0;
        for ak in series.iter().take(m + 1) {
            t += ak * pw;
            pw *= x2;
        }
        t
    };
    let integrand = |x: f64| -> f64 {
        let prod: f64 = w.iter().map(|&wj| bessel_j0(wj * x)).product();
        x.powf(-s - 1.0) * (poly(x) - prod)
    };

    // Partition at zeros of J_0(w_max x); node count follows the fastest
    // oscillation Σ w_j.
    let nodes = 12 + 4 * (wsum / wmax).ceil() as usize;
    let gl = GaussLegendre::new(nodes.min(96));
    let mut body = 0.0;
    let mut left = a;
    let mut k = 1;
    let mut intervals = 0;
    while left < x_cut {
        let z = j0_zero(k) / wmax;
        k += 1;
        if z <= left {
            continue;
        }
        let right = z.min(x_cut);
        body += gl.integrate(&integrand, left, right);
        intervals += 1;
        left = right;
    }

    // Polynomial part of the tail, exactly: ∫_X^∞ a_k x^{2k−s−1} dx.
    let mut poly_tail = 0.0;
    for (kk, ak) in series.iter().take(m + 1).enumerate() {
        let e = 2.0 * kk as f64 - s;
        poly_tail += ak * x_cut.powf(e) / (-e);
    }

    let integral = head + body + poly_tail;
    let moment = ks * integral;
    let error_bound = ks.abs() * bessel_tail + 1e-13 * moment.abs().max(1.0);
    Ok(WalkMoment { moment, error_bound, intervals })
}
