use std::f64::consts::PI;

use num_complex::Complex64;

use super::{root_error, Method, NormEstimate};
use crate::error::{Error, Result};
use crate::quad::{integrate, GaussLegendre};

/// `E|a + b z|^p = (1/π) ∫_0^π ((a−b)² + 4ab cos²(θ/2))^{p/2} dθ` for
/// `a, b ≥ 0`, on a grid of intervals graded geometrically towards the
/// possible kink at `θ = π`.
pub fn two_term_mean(a: f64, b: f64, p: f64) -> f64 {
    let (a, b) = (a.abs(), b.abs());
    if a == 0.0 || b == 0.0 {
        return (a + b).powf(p);
    }
    thread_local! {
        static RULE: GaussLegendre = GaussLegendre::new(16);
    }
    let diff2 = (a - b) * (a - b);
    let ab4 = 4.0 * a * b;
    // with u = π − θ the integrand is (diff² + 4ab sin²(u/2))^{p/2}
    let g = |u: f64| {
        let s = (0.5 * u).sin();
        (diff2 + ab4 * s * s).powf(0.5 * p)
    };
    let scale = (a - b).abs() / (a * b).sqrt();
    RULE.with(|rule| {
        let mut total = 0.0;
        let mut hi = PI;
        for _ in 0..60 {
            let lo = 0.5 * hi;
            total += rule.integrate(g, lo, hi);
            hi = lo;
            if hi < 0.25 * scale {
                break;
            }
        }
        total += rule.integrate(g, 0.0, hi);
        total / PI
    })
}

/// `‖c_1 z_1 + c_2 z_2‖_p` through the one-variable reduction
/// `|c_1 z_1 + c_2 z_2| ~ ||c_1| + |c_2| e^{iθ}|`, integrated adaptively to
/// absolute tolerance `tol` on the `p`-th moment.
pub fn two_term_norm(c1: Complex64, c2: Complex64, p: f64, tol: f64) -> Result<NormEstimate> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::Domain(format!("norm exponent must be finite and >= 1, got {p}")));
    }
    let (a, b) = (c1.norm(), c2.norm());
    if a == 0.0 || b == 0.0 {
        return Ok(NormEstimate::exact(a + b, Method::Reduction1d, 0));
    }
    let diff2 = (a - b) * (a - b);
    let ab4 = 4.0 * a * b;
    let r = integrate(
        |t: f64| {
            let c = (0.5 * t).cos();
            (diff2 + ab4 * c * c).powf(0.5 * p) / PI
        },
        0.0,
        PI,
        tol,
        2000,
    );
    Ok(NormEstimate {
        value: r.value.powf(1.0 / p),
        method: Method::Reduction1d,
        error_bound: root_error(r.value, r.error, p),
        samples: r.evaluations as u64,
        std_error: 0.0,
        converged: r.error <= tol,
    })
}
