use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{FourierSeries, MultiIndex};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::par;

/// Samples on the uniform `N^d` grid of `T^d`, flat-indexed
/// lexicographically with the last axis fastest. Point `n` has angles
/// `θ_j = 2π n_j / N`; every sample carries weight `N^{-d}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub dim: usize,
    pub n: usize,
    pub values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(dim: usize, n: usize, values: Vec<Complex64>) -> Result<Self> {
        let len = grid_len(dim, n)?;
        if values.len() != len {
            return Err(Error::DimensionMismatch { expected: len, got: values.len() });
        }
        Ok(GridFunction { dim, n, values })
    }

    /// Grid values of a pointwise function of the angle vector.
    pub fn from_fn<F>(dim: usize, n: usize, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> Complex64 + Sync + Send,
    {
        let len = grid_len(dim, n)?;
        let step = TAU / n as f64;
        let chunks = par::map_chunks(len, par::CHUNK, |range| {
            let mut theta = vec![0.0; dim];
            range
                .map(|flat| {
                    let idx = unflatten(flat, dim, n);
                    for (t, &k) in theta.iter_mut().zip(&idx) {
                        *t = step * k as f64;
                    }
                    f(&theta)
                })
                .collect::<Vec<_>>()
        });
        Ok(GridFunction { dim, n, values: chunks.concat() })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Multi-index of flat position `flat`.
    pub fn index(&self, flat: usize) -> Vec<usize> {
        unflatten(flat, self.dim, self.n)
    }

    pub fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &k| acc * self.n + k % self.n)
    }

    /// Mean over the grid: the normalized Haar integral of the samples.
    pub fn mean(&self) -> Complex64 {
        let re = par::chunked_sum(self.len(), |r| r.map(|i| self.values[i].re).sum());
        let im = par::chunked_sum(self.len(), |r| r.map(|i| self.values[i].im).sum());
        Complex64::new(re, im) / self.len() as f64
    }

    /// `(N^{-d} Σ |v|^p)` for finite `p`.
    pub fn mean_abs_pow(&self, p: f64) -> f64 {
        let s = par::chunked_sum(self.len(), |r| r.map(|i| abs_pow(self.values[i], p)).sum());
        s / self.len() as f64
    }

    /// Discrete `L^p` norm; `∞` gives the maximum modulus.
    pub fn norm(&self, p: Exponent) -> f64 {
        match p {
            Exponent::Finite(p) => self.mean_abs_pow(p).powf(1.0 / p),
            Exponent::Infinite => self.values.iter().map(|v| v.norm()).fold(0.0, f64::max),
        }
    }

    /// Values shifted by `shift` grid steps along every axis.
    pub fn rotate_all_axes(&self, shift: usize) -> GridFunction {
        let values = (0..self.len())
            .map(|flat| {
                let idx: Vec<usize> = self.index(flat).iter().map(|k| k + shift).collect();
                self.values[self.flat(&idx)]
            })
            .collect();
        GridFunction { dim: self.dim, n: self.n, values }
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64 + Sync + Send) -> GridFunction {
        let values = par::map_chunks(self.len(), par::CHUNK, |r| r.map(|i| f(self.values[i])).collect::<Vec<_>>());
        GridFunction { dim: self.dim, n: self.n, values: values.concat() }
    }
}

pub(crate) fn abs_pow(v: Complex64, p: f64) -> f64 {
    if p == 2.0 {
        v.norm_sqr()
    } else if p == 4.0 {
        let s = v.norm_sqr();
        s * s
    } else {
        v.norm_sqr().powf(0.5 * p)
    }
}

pub(crate) fn grid_len(dim: usize, n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::Domain("grid needs at least one point per axis".into()));
    }
    n.checked_pow(dim as u32)
        .ok_or_else(|| Error::Cost(format!("grid {n}^{dim} overflows")))
}

fn unflatten(mut flat: usize, dim: usize, n: usize) -> Vec<usize> {
    let mut idx = vec![0; dim];
    for k in (0..dim).rev() {
        idx[k] = flat % n;
        flat /= n;
    }
    idx
}

/// Samples `f` on the `N^d` grid, `d = f.dim()`. Requires `N > 2·max|α_j|`.
pub fn sample_grid(f: &FourierSeries, n: usize) -> Result<GridFunction> {
    let m = f.max_abs_exponent();
    if (n as i64) <= 2 * m {
        return Err(Error::Aliasing { points: n, max_exponent: m });
    }
    evaluate_on_grid(f, n)
}

/// Pointwise values of `f` on the `N^d` grid with no aliasing requirement;
/// used for quadrature of `|f|^p`, which only needs exact point values.
pub(crate) fn evaluate_on_grid(f: &FourierSeries, n: usize) -> Result<GridFunction> {
    let dim = f.dim();
    let len = grid_len(dim, n)?;
    // roots[k] = e^{2πik/N}; e^{i m θ_n} = roots[(m n) mod N] keeps phases exact mod N.
    let roots: Vec<Complex64> = (0..n).map(|k| root_of_unity(k, n)).collect();
    let terms: Vec<(&MultiIndex, &Complex64)> = f.terms().collect();
    let nn = n as i64;
    let chunks = par::map_chunks(len, par::CHUNK, |range| {
        range
            .map(|flat| {
                let idx = unflatten(flat, dim, n);
                terms
                    .iter()
                    .map(|(a, c)| {
                        let mut phase = 0i64;
                        for (j, &e) in a.entries().iter().enumerate() {
                            phase += e as i64 * idx[j] as i64;
                        }
                        **c * roots[phase.rem_euclid(nn) as usize]
                    })
                    .sum::<Complex64>()
            })
            .collect::<Vec<_>>()
    });
    Ok(GridFunction { dim, n, values: chunks.concat() })
}

/// `Σ_n g(f(θ_n))` over the `N^d` grid without materializing the samples,
/// reduced in fixed chunk order.
pub(crate) fn sum_on_grid(f: &FourierSeries, n: usize, g: impl Fn(Complex64) -> f64 + Sync + Send) -> Result<f64> {
    let dim = f.dim();
    let len = grid_len(dim, n)?;
    let roots: Vec<Complex64> = (0..n).map(|k| root_of_unity(k, n)).collect();
    let terms: Vec<(Vec<i64>, Complex64)> = f
        .terms()
        .map(|(a, c)| ((0..dim).map(|j| a.get(j) as i64).collect(), *c))
        .collect();
    let nn = n as i64;
    Ok(par::chunked_sum(len, |range| {
        let mut idx = unflatten(range.start, dim, n);
        let mut acc = 0.0;
        for _ in range {
            let v: Complex64 = terms
                .iter()
                .map(|(a, c)| {
                    let phase: i64 = a.iter().zip(&idx).map(|(&e, &k)| e * k as i64).sum();
                    c * roots[phase.rem_euclid(nn) as usize]
                })
                .sum();
            acc += g(v);
            // odometer increment, last axis fastest
            for k in (0..dim).rev() {
                idx[k] += 1;
                if idx[k] < n {
                    break;
                }
                idx[k] = 0;
            }
        }
        acc
    }))
}

/// `e^{2πik/N}` with the quarter-turn points exact.
pub(crate) fn root_of_unity(k: usize, n: usize) -> Complex64 {
    let k = k % n;
    if (4 * k) % n == 0 {
        match 4 * k / n {
            0 => return Complex64::new(1.0, 0.0),
            1 => return Complex64::new(0.0, 1.0),
            2 => return Complex64::new(-1.0, 0.0),
            _ => return Complex64::new(0.0, -1.0),
        }
    }
    let (s, c) = (TAU * k as f64 / n as f64).sin_cos();
    Complex64::new(c, s)
}

/// All Fourier coefficients with `|α_j| <= max_deg`, from a row-major
/// multi-dimensional FFT of the grid. Coefficients smaller than `purge`
/// are dropped. Exact (to rounding) for trigonometric polynomials of degree
/// at most `max_deg` per axis; otherwise the result carries aliasing error.
pub fn extract_coefficients(g: &GridFunction, max_deg: usize, purge: f64) -> Result<FourierSeries> {
    let n = g.n;
    if n <= 2 * max_deg {
        return Err(Error::Aliasing { points: n, max_exponent: max_deg as i64 });
    }
    let dim = g.dim;
    let mut data = g.values.clone();
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(n);
    let len = data.len();
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for axis in 0..dim {
        let stride = n.pow((dim - 1 - axis) as u32);
        let block = stride * n;
        for start in (0..len).step_by(block) {
            for offset in 0..stride {
                let base = start + offset;
                for k in 0..n {
                    line[k] = data[base + k * stride];
                }
                fft.process(&mut line);
                for k in 0..n {
                    data[base + k * stride] = line[k];
                }
            }
        }
    }
    let scale = 1.0 / len as f64;
    let m = max_deg as i64;
    let width = (2 * m + 1) as usize;
    let count = width.pow(dim as u32);
    let mut out = FourierSeries::zero(dim);
    for t in 0..count {
        let offs = unflatten(t, dim, width);
        let alpha: Vec<i32> = offs.iter().map(|&o| (o as i64 - m) as i32).collect();
        let flat = alpha
            .iter()
            .fold(0usize, |acc, &a| acc * n + (a as i64).rem_euclid(n as i64) as usize);
        let c = data[flat] * scale;
        if c.norm() >= purge && c.norm() > 0.0 {
            out.add_term(MultiIndex::new(alpha), c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(j: usize) -> FourierSeries {
        FourierSeries::variable(j)
    }

    #[test]
    fn constant_one_is_normalized() {
        let g = sample_grid(&FourierSeries::constant(Complex64::new(1.0, 0.0)).with_dim(2), 8).unwrap();
        assert_eq!(g.len(), 64);
        assert!(g.values.iter().all(|v| *v == Complex64::new(1.0, 0.0)));
        assert!((g.mean() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn roots_of_unity_for_z1() {
        let g = sample_grid(&z(0), 4).unwrap();
        let expect = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
        for (v, (re, im)) in g.values.iter().zip(expect) {
            assert_eq!(*v, Complex64::new(re, im));
        }
    }

    #[test]
    fn aliasing_rejected() {
        let f = &(&z(0) * &z(0)) * &z(0);
        assert!(matches!(sample_grid(&f, 6), Err(Error::Aliasing { .. })));
        assert!(sample_grid(&f, 7).is_ok());
    }

    #[test]
    fn extraction_examples() {
        let f = &z(0) + &z(1).conj();
        let g = sample_grid(&f, 8).unwrap();
        let back = extract_coefficients(&g, 3, 1e-12).unwrap();
        assert_eq!(back.len(), 2);
        assert!((back.coeff(&MultiIndex::new(vec![1, 0])) - 1.0).norm() < 1e-14);
        assert!((back.coeff(&MultiIndex::new(vec![0, -1])) - 1.0).norm() < 1e-14);

        let h = &z(0) * &z(0).conj();
        let back = extract_coefficients(&sample_grid(&h.with_dim(1), 8).unwrap(), 3, 1e-12).unwrap();
        assert_eq!(back.len(), 1);
        assert!((back.coeff(&MultiIndex::zero()) - 1.0).norm() < 1e-15);
    }

    #[test]
    fn grid_norms() {
        let f = &z(0) + &z(1);
        let g = sample_grid(&f, 16).unwrap();
        assert!((g.norm(Exponent::Finite(2.0)) - 2f64.sqrt()).abs() < 1e-14);
        assert!((g.norm(Exponent::Infinite) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rotation_by_one_step() {
        let f = &z(0) + &z(1);
        let g = sample_grid(&f, 8).unwrap();
        let r = g.rotate_all_axes(1);
        let w = root_of_unity(1, 8);
        for (a, b) in r.values.iter().zip(&g.values) {
            assert!((a - b * w).norm() < 1e-14);
        }
    }
}
