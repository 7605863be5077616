use super::{Method, NormEstimate};
use crate::error::{Error, Result};
use crate::fourier::LinearPolynomial;

const MAX_TERMS: f64 = 2e7;

fn factorial(n: usize) -> f64 {
    (2..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Exact `E|Σ c_j z_j|^p` for even integer `p = 2m`:
/// `Σ_{|α| = m} (m!/α!)^2 Π |c_j|^{2α_j}`, the diagonal pairings of
/// `(Σ c_j z_j)^m (Σ c̄_j z̄_j)^m`.
pub fn multinomial_moment(f: &LinearPolynomial, p: f64) -> Result<f64> {
    if !(p >= 2.0) || p.fract() != 0.0 || (p as u64) % 2 != 0 {
        return Err(Error::Domain(format!("multinomial route needs an even integer p >= 2, got {p}")));
    }
    let m = (p / 2.0) as usize;
    let sq: Vec<f64> = f.coeffs.iter().map(|c| c.norm_sqr()).filter(|&v| v > 0.0).collect();
    let d = sq.len();
    if d == 0 {
        return Ok(0.0);
    }
    // number of compositions C(d+m-1, m)
    let count = (1..=m).fold(1.0, |acc, k| acc * (d + k - 1) as f64 / k as f64);
    if count > MAX_TERMS {
        return Err(Error::Cost(format!("{count:.0} multinomial terms for d = {d}, p = {p}")));
    }
    let fact: Vec<f64> = (0..=m).map(factorial).collect();
    // Σ over compositions of `left` into positions j.. of Π sq_i^{α_i} / (α_i!)^2
    fn walk(j: usize, left: usize, sq: &[f64], fact: &[f64]) -> f64 {
        if j + 1 == sq.len() {
            return sq[j].powi(left as i32) / (fact[left] * fact[left]);
        }
        let mut pw = 1.0;
        let mut acc = 0.0;
        for k in 0..=left {
            acc += pw / (fact[k] * fact[k]) * walk(j + 1, left - k, sq, fact);
            pw *= sq[j];
        }
        acc
    }
    let acc = fact[m] * fact[m] * walk(0, m, &sq, &fact);
    Ok(acc)
}

/// `‖f‖_p` for even integer `p`, exact up to rounding.
pub fn multinomial_norm(f: &LinearPolynomial, p: f64) -> Result<NormEstimate> {
    let m = multinomial_moment(f, p)?;
    let m_half = (p / 2.0) as usize;
    let d = f.dim();
    let count = (1..=m_half).fold(1.0, |acc, k| acc * (d + k - 1) as f64 / k as f64);
    Ok(NormEstimate::exact(m.powf(1.0 / p), Method::Multinomial, count as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::FourierSeries;
    use num_complex::Complex64;

    // Independent oracle: expand f^m · conj(f)^m as a series and read the
    // constant coefficient.
    fn brute_force(f: &LinearPolynomial, p: usize) -> f64 {
        let s = f.to_series();
        let sc = s.conj();
        let mut acc = FourierSeries::constant(Complex64::new(1.0, 0.0));
        for _ in 0..p / 2 {
            acc = &(&acc * &s) * &sc;
        }
        acc.coeff(&crate::fourier::MultiIndex::zero()).re
    }

    #[test]
    fn symmetric_fourth_moment() {
        for d in 1..=6 {
            let phi = LinearPolynomial::symmetric(d);
            let v = multinomial_norm(&phi, 4.0).unwrap().value;
            let expect = (2.0 - 1.0 / d as f64).powf(0.25);
            assert!((v - expect).abs() < 1e-14, "d = {d}");
        }
        for d in 2..=3 {
            let phi = LinearPolynomial::symmetric(d);
            assert!((brute_force(&phi, 4) - (2.0 - 1.0 / d as f64)).abs() < 1e-14);
        }
    }

    #[test]
    fn matches_brute_force_expansion() {
        let f = LinearPolynomial::new(vec![
            Complex64::new(0.3, 0.4),
            Complex64::new(-1.2, 0.0),
            Complex64::new(0.0, 0.7),
        ]);
        for p in [2, 4, 6, 8] {
            let a = multinomial_moment(&f, p as f64).unwrap();
            let b = brute_force(&f, p);
            assert!((a - b).abs() < 1e-12 * b, "p = {p}: {a} vs {b}");
        }
    }

    #[test]
    fn trivial_cases() {
        let f = LinearPolynomial::from_real(&[-0.75]);
        for p in [2.0, 4.0, 8.0] {
            assert!((multinomial_norm(&f, p).unwrap().value - 0.75).abs() < 1e-15);
        }
        let g = LinearPolynomial::from_real(&[1.0, 2.0, 2.0]);
        assert!((multinomial_norm(&g, 2.0).unwrap().value - 3.0).abs() < 1e-15);
        assert!(multinomial_norm(&g, 3.0).is_err());
        assert!(matches!(
            multinomial_norm(&LinearPolynomial::sum(200), 16.0),
            Err(Error::Cost(_))
        ));
    }
}
