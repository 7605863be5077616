use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ContinuousCDF, Normal};

use super::{Method, NormEstimate};
use crate::error::{Error, Result};
use crate::fourier::grid::abs_pow;
use crate::fourier::LinearPolynomial;
use crate::par;

const MIN_SAMPLES: usize = 1000;
const MC_CHUNK: usize = 1 << 14;

/// Monte Carlo `‖f‖_p` with i.i.d. uniform angles. Chunk `c` draws from the
/// ChaCha stream `(seed, c)`, so every sample is a pure function of the seed
/// and its position and the result does not depend on the thread count.
/// The error bound is the two-sided `confidence` half-width of the mean,
/// pushed through `x ↦ x^{1/p}`.
pub fn monte_carlo_norm(
    f: &LinearPolynomial,
    p: f64,
    samples: usize,
    seed: u64,
    confidence: f64,
) -> Result<NormEstimate> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::Domain(format!("norm exponent must be finite and >= 1, got {p}")));
    }
    if samples < MIN_SAMPLES {
        return Err(Error::Domain(format!("Monte Carlo needs at least {MIN_SAMPLES} samples, got {samples}")));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::Domain(format!("confidence must lie in (0, 1), got {confidence}")));
    }
    let coeffs = &f.coeffs;
    let partials = par::map_chunks(samples, MC_CHUNK, |range| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream((range.start / MC_CHUNK) as u64);
        // Welford within the chunk
        let (mut count, mut mean, mut m2) = (0.0f64, 0.0f64, 0.0f64);
        for _ in range {
            let v: Complex64 = coeffs.iter().map(|c| c * Complex64::from_polar(1.0, TAU * rng.gen::<f64>())).sum();
            let x = abs_pow(v, p);
            count += 1.0;
            let delta = x - mean;
            mean += delta / count;
            m2 += delta * (x - mean);
        }
        (count, mean, m2)
    });
    // Chan et al. pairwise merge, in chunk order
    let (m, mean, m2) = partials.into_iter().fold((0.0f64, 0.0f64, 0.0f64), |(na, ma, sa), (nb, mb, sb)| {
        if na == 0.0 {
            return (nb, mb, sb);
        }
        let n = na + nb;
        let delta = mb - ma;
        (n, ma + delta * nb / n, sa + sb + delta * delta * na * nb / n)
    });
    let var = m2 / (m - 1.0);
    let se_mean = (var / m).sqrt();
    let value = mean.powf(1.0 / p);
    // d(x^{1/p})/dx = x^{1/p − 1}/p
    let se = if mean > 0.0 { value / (p * mean) * se_mean } else { 0.0 };
    let z = Normal::new(0.0, 1.0).expect("standard normal").inverse_cdf(0.5 + 0.5 * confidence);
    Ok(NormEstimate {
        value,
        method: Method::Montecarlo,
        error_bound: z * se,
        samples: samples as u64,
        std_error: se,
        converged: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::multinomial_norm;

    #[test]
    fn single_variable_is_exact() {
        let f = LinearPolynomial::from_real(&[0.6]);
        let e = monte_carlo_norm(&f, 3.0, 5000, 1, 0.99).unwrap();
        assert!((e.value - 0.6).abs() < 1e-14);
        assert!(e.error_bound < 1e-12);
    }

    #[test]
    fn deterministic_for_seed() {
        let f = LinearPolynomial::symmetric(3);
        let a = monte_carlo_norm(&f, 1.5, 40_000, 7, 0.99).unwrap();
        let b = monte_carlo_norm(&f, 1.5, 40_000, 7, 0.99).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        let c = monte_carlo_norm(&f, 1.5, 40_000, 8, 0.99).unwrap();
        assert_ne!(a.value, c.value);
    }

    #[test]
    fn agrees_with_exact_fourth_moment() {
        let f = LinearPolynomial::symmetric(6);
        let e = monte_carlo_norm(&f, 4.0, 1_000_000, 2024, 0.99).unwrap();
        let exact = multinomial_norm(&f, 4.0).unwrap().value;
        assert!((e.value - exact).abs() <= 3.0 * e.error_bound, "{e:?} vs {exact}");
    }

    #[test]
    fn guards() {
        let f = LinearPolynomial::symmetric(2);
        assert!(monte_carlo_norm(&f, 1.0, 10, 0, 0.99).is_err());
        assert!(monte_carlo_norm(&f, 0.9, 10_000, 0, 0.99).is_err());
    }
}
