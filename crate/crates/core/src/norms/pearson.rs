use super::{multinomial_norm, root_error, Method, NormEstimate};
use crate::bessel::walk_moment;
use crate::error::{Error, Result};
use crate::fourier::LinearPolynomial;

/// `‖Σ c_j z_j‖_p` from the Bessel-integral moment of the planar walk with
/// step lengths `|c_j|`. Even integer `p` is routed to the exact
/// multinomial expansion, where the integral representation degenerates.
pub fn bessel_norm(f: &LinearPolynomial, p: f64, tol: f64) -> Result<NormEstimate> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::Domain(format!("norm exponent must be finite and >= 1, got {p}")));
    }
    if p.fract() == 0.0 && (p as u64) % 2 == 0 {
        return multinomial_norm(f, p);
    }
    let w = f.moduli();
    let nonzero: Vec<f64> = w.into_iter().filter(|&v| v > 0.0).collect();
    match nonzero.len() {
        0 => return Ok(NormEstimate::exact(0.0, Method::Bessel, 0)),
        1 => return Ok(NormEstimate::exact(nonzero[0], Method::Bessel, 0)),
        _ => {}
    }
    // tolerance on the moment that yields `tol` on the norm
    let scale = nonzero.iter().map(|v| v * v).sum::<f64>().sqrt();
    let m_tol = tol * p * (0.5 * scale).powf(p - 1.0);
    let r = walk_moment(&nonzero, p, m_tol)?;
    let moment = r.moment.max(0.0);
    Ok(NormEstimate {
        value: moment.powf(1.0 / p),
        method: Method::Bessel,
        error_bound: root_error(moment, r.error_bound, p),
        samples: r.intervals as u64,
        std_error: 0.0,
        converged: true,
    })
}

/// `(E R^p)^{1/p}` for the unit-step planar walk `R = |z_1 + … + z_d|`.
pub fn pearson_walk_moment(d: usize, p: f64, tol: f64) -> Result<NormEstimate> {
    if d < 1 {
        return Err(Error::Domain("walk needs at least one step".into()));
    }
    if !(p >= 1.0 && p < d as f64) {
        return Err(Error::Domain(format!("walk moment needs 1 <= p < d, got p = {p}, d = {d}")));
    }
    bessel_norm(&LinearPolynomial::sum(d), p, tol)
}
