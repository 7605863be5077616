use num_complex::Complex64;

use super::{bessel_norm, multinomial_norm, root_error, two_term_mean, Method, NormEstimate};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::fourier::grid::root_of_unity;
use crate::fourier::LinearPolynomial;
use crate::par;

/// Fast `‖Σ c_j z_j‖_p` for linear polynomials, used inside optimizers.
///
/// Only the moduli matter. With `a ≥ b ≥ …` the largest two coefficients,
/// the mean over `z_1` is the closed one-dimensional integral
/// [`two_term_mean`]`(a, |b + Σ_{j≥3} c_j z_j|)` and the rotation invariance
/// removes `z_2`, leaving a periodic rectangle rule over `d − 2` angles.
/// The error bound compares the full grid with its even-index subgrid.
/// Even integer `p` is exact; `d ≥ 5` goes through the Bessel integral.
#[derive(Debug, Clone)]
pub struct LinearNorm {
    pub n3: usize,
    pub n4: usize,
    pub bessel_tol: f64,
}

impl Default for LinearNorm {
    fn default() -> Self {
        LinearNorm::from_config(&Config::default())
    }
}

impl LinearNorm {
    pub fn from_config(cfg: &Config) -> Self {
        LinearNorm { n3: cfg.linear_n3, n4: cfg.linear_n4, bessel_tol: 1e-10 }
    }

    pub fn norm(&self, f: &LinearPolynomial, p: f64) -> Result<NormEstimate> {
        self.norm_moduli(&f.moduli(), p)
    }

    pub fn norm_moduli(&self, c: &[f64], p: f64) -> Result<NormEstimate> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::Domain(format!("norm exponent must be finite and >= 1, got {p}")));
        }
        let mut c: Vec<f64> = c.iter().map(|v| v.abs()).filter(|&v| v > 0.0).collect();
        c.sort_by(|a, b| b.total_cmp(a));
        let even = p.fract() == 0.0 && (p as u64) % 2 == 0;
        match c.len() {
            0 => return Ok(NormEstimate::exact(0.0, Method::Reduction1d, 0)),
            1 => return Ok(NormEstimate::exact(c[0], Method::Reduction1d, 0)),
            _ => {}
        }
        if even && p <= 16.0 {
            return multinomial_norm(&LinearPolynomial::from_real(&c), p);
        }
        match c.len() {
            2 => Ok(NormEstimate {
                value: two_term_mean(c[0], c[1], p).powf(1.0 / p),
                method: Method::Reduction1d,
                error_bound: 1e-12 * (c[0] + c[1]),
                samples: 1,
                std_error: 0.0,
                converged: true,
            }),
            3 | 4 => {
                let n = if c.len() == 3 { self.n3 } else { self.n4 };
                let (m, m_half) = reduced_grid_moment(&c, p, n);
                Ok(NormEstimate {
                    value: m.powf(1.0 / p),
                    method: Method::Grid,
                    error_bound: root_error(m, (m - m_half).abs(), p) + 1e-12 * m.powf(1.0 / p),
                    samples: (n as u64).pow(c.len() as u32 - 2),
                    std_error: 0.0,
                    converged: true,
                })
            }
            _ => bessel_norm(&LinearPolynomial::from_real(&c), p, self.bessel_tol),
        }
    }
}

// Returns the rectangle-rule moment on the N-grid and on its even subgrid.
fn reduced_grid_moment(c: &[f64], p: f64, n: usize) -> (f64, f64) {
    let a = c[0];
    let b = c[1];
    let rest = &c[2..];
    let k = rest.len();
    let roots: Vec<Complex64> = (0..n).map(|j| root_of_unity(j, n)).collect();
    let len = n.pow(k as u32);
    let parts = par::map_chunks(len, 1 << 10, |range| {
        let (mut full, mut half) = (0.0, 0.0);
        for flat in range {
            let mut w = Complex64::new(b, 0.0);
            let mut rem = flat;
            let mut all_even = true;
            for &cj in rest.iter().rev() {
                let idx = rem % n;
                rem /= n;
                all_even &= idx % 2 == 0;
                w += cj * roots[idx];
            }
            let v = two_term_mean(a, w.norm(), p);
            full += v;
            if all_even {
                half += v;
            }
        }
        (full, half)
    });
    let (full, half) = parts.into_iter().fold((0.0, 0.0), |(x, y), (u, v)| (x + u, y + v));
    let half_len = (n / 2).pow(k as u32) as f64;
    (full / len as f64, half / half_len)
}
