use super::{root_error, Method, NormEstimate};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::fourier::grid::{abs_pow, grid_len, sum_on_grid};
use crate::fourier::FourierSeries;

const MAX_GRID_DIM: usize = 4;

/// Rectangle-rule `L^p` norm at a single grid size (`∞` gives the grid
/// maximum).
pub fn grid_norm_at(f: &FourierSeries, p: Exponent, n: usize) -> Result<f64> {
    let len = grid_len(f.dim(), n)? as f64;
    match p {
        Exponent::Finite(p) => {
            check_p(p)?;
            Ok((sum_on_grid(f, n, |v| abs_pow(v, p))? / len).powf(1.0 / p))
        }
        Exponent::Infinite => {
            // max is order-independent, so the chunked reduction is not needed
            let g = crate::fourier::grid::evaluate_on_grid(f, n)?;
            Ok(g.norm(Exponent::Infinite))
        }
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::Domain(format!("norm exponent must be finite and >= 1, got {p}")));
    }
    Ok(())
}

/// `(N^{-d} Σ |f(θ_n)|^p)^{1/p}` with N doubled from `n_start` until two
/// successive values agree to `cfg.grid_rtol` or the point cap is hit. The
/// error bound is the last observed change; a capped run is flagged
/// `converged = false`.
pub fn grid_norm(f: &FourierSeries, p: f64, n_start: usize, cfg: &Config) -> Result<NormEstimate> {
    check_p(p)?;
    if n_start < 4 {
        return Err(Error::Domain(format!("grid norm needs N >= 4, got {n_start}")));
    }
    let d = f.dim();
    if d > MAX_GRID_DIM {
        return Err(Error::Cost(format!("grid norm limited to d <= {MAX_GRID_DIM}, got {d}")));
    }
    let mut n = n_start;
    let moment = |n: usize| -> Result<f64> {
        Ok(sum_on_grid(f, n, |v| abs_pow(v, p))? / grid_len(d, n)? as f64)
    };
    let mut prev = moment(n)?;
    loop {
        let next_n = 2 * n;
        let points = grid_len(d, next_n).unwrap_or(usize::MAX);
        if points > cfg.grid_max_points || d == 0 {
            // Cap reached (or nothing to refine): report what we have.
            let converged = d == 0;
            return Ok(NormEstimate {
                value: prev.powf(1.0 / p),
                method: Method::Grid,
                error_bound: if converged { 0.0 } else { f64::INFINITY },
                samples: grid_len(d, n)? as u64,
                std_error: 0.0,
                converged,
            });
        }
        let cur = moment(next_n)?;
        let diff = root_error(cur, (cur - prev).abs(), p);
        let value = cur.powf(1.0 / p);
        n = next_n;
        if diff <= cfg.grid_rtol * value {
            return Ok(NormEstimate {
                value,
                method: Method::Grid,
                error_bound: diff,
                samples: points as u64,
                std_error: 0.0,
                converged: true,
            });
        }
        let after = grid_len(d, 2 * n).unwrap_or(usize::MAX);
        if after > cfg.grid_max_points {
            return Ok(NormEstimate {
                value,
                method: Method::Grid,
                error_bound: diff,
                samples: points as u64,
                std_error: 0.0,
                converged: false,
            });
        }
        prev = cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::LinearPolynomial;
    use std::f64::consts::PI;

    #[test]
    fn unimodular_has_norm_one() {
        let f = FourierSeries::variable(0);
        for p in [1.0, 1.5, 3.0, 7.0] {
            let e = grid_norm(&f, p, 8, &Config::default()).unwrap();
            assert!((e.value - 1.0).abs() < 1e-14);
            assert!(e.converged);
        }
    }

    #[test]
    fn two_variable_l1_norm() {
        let f = LinearPolynomial::sum(2).to_series();
        let e = grid_norm(&f, 1.0, 16, &Config::default()).unwrap();
        assert!((e.value - 4.0 / PI).abs() <= e.error_bound.max(1e-12));
        assert!((e.value - 4.0 / PI).abs() < 1e-6);
    }

    #[test]
    fn three_variable_fourth_moment() {
        // E|z1+z2+z3|^4 = 2·9 − 3 = 15
        let f = LinearPolynomial::sum(3).to_series();
        let e = grid_norm(&f, 4.0, 8, &Config::default()).unwrap();
        assert!((e.value - 15f64.powf(0.25)).abs() < 1e-12);
        assert!(e.converged);
    }

    #[test]
    fn guards() {
        let f = LinearPolynomial::sum(5).to_series();
        assert!(matches!(grid_norm(&f, 2.0, 8, &Config::default()), Err(Error::Cost(_))));
        let g = FourierSeries::variable(0);
        assert!(grid_norm(&g, 0.5, 8, &Config::default()).is_err());
        assert!(grid_norm(&g, 2.0, 2, &Config::default()).is_err());
    }

    #[test]
    fn sup_norm_at() {
        let f = LinearPolynomial::sum(2).to_series();
        assert!((grid_norm_at(&f, Exponent::Infinite, 8).unwrap() - 2.0).abs() < 1e-15);
    }
}
