use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polytorus::duality::{dual_norm_linear, shift_average, verify_dual_inverse};
use polytorus::norms::{multinomial_norm, LinearNorm};
use polytorus::special::khintchine_constants;
use polytorus::LinearPolynomial;

// Oracle: ‖φ_3‖_4 = (5/3)^{1/4} from the pairing count 2 − 1/d.
#[test]
fn dual_inverse_matches_pairing_count() {
    let (measured, predicted) = verify_dual_inverse(3, 4.0).unwrap();
    assert!((predicted - (5.0f64 / 3.0).powf(-0.25)).abs() < 1e-12);
    assert!((measured - predicted).abs() < 1e-6);
    let (m1, p1) = verify_dual_inverse(1, 2.5).unwrap();
    assert!((m1 - 1.0).abs() < 1e-12 && (p1 - 1.0).abs() < 1e-12);
}

#[test]
fn sandwich_and_certificates() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..12 {
        let d = rng.gen_range(2..=4);
        let phi = LinearPolynomial::from_real(&(0..d).map(|_| rng.gen_range(0.1..1.0)).collect::<Vec<_>>());
        for p in [1.0, 1.5, 3.0, 4.0] {
            let k = khintchine_constants(p).unwrap();
            let r = dual_norm_linear(&phi, p, 3, 5).unwrap();
            assert!(r.lower_certificate <= r.value + 1e-12);
            assert!(r.value <= r.upper_certificate + 1e-9);
            assert!(r.value >= phi.norm_l2() / k.b - 1e-3);
            assert!((r.maximizer.norm_l2() - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn symmetric_symbol_has_symmetric_maximizer() {
    for d in 2..=4 {
        for p in [1.0, 1.5, 3.0] {
            let r = dual_norm_linear(&LinearPolynomial::symmetric(d), p, 8, 3).unwrap();
            let c = r.maximizer.moduli();
            let spread = c.iter().cloned().fold(f64::MIN, f64::max) - c.iter().cloned().fold(f64::MAX, f64::min);
            assert!(spread < 1e-3, "d={d} p={p}: {c:?}");
        }
    }
}

#[test]
fn scaling() {
    let phi = LinearPolynomial::from_real(&[0.3, 0.8, 0.5]);
    for p in [1.5, 3.0] {
        let a = dual_norm_linear(&phi, p, 4, 0).unwrap().value;
        let b = dual_norm_linear(&phi.scale(2.5), p, 4, 0).unwrap().value;
        assert!((b - 2.5 * a).abs() < 1e-6 * b, "{a} {b}");
    }
}

#[test]
fn triangle_averaging() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let norm = LinearNorm::default();
    for _ in 0..30 {
        let d = rng.gen_range(1..=4);
        let f = LinearPolynomial::from_real(&(0..d).map(|_| rng.gen_range(0.0..1.0)).collect::<Vec<_>>());
        let (lambda, avg) = shift_average(&f);
        let phi = LinearPolynomial::symmetric(d);
        for (a, b) in avg.coeffs.iter().zip(&phi.scale(lambda).coeffs) {
            assert!((a - b).norm() < 1e-14);
        }
        for p in [1.0, 1.5, 3.0, 4.0] {
            let lhs = lambda * norm.norm(&phi, p).unwrap().value;
            let rhs = norm.norm(&f, p).unwrap().value;
            assert!(lhs <= rhs + 1e-8, "d={d} p={p}: {lhs} > {rhs}");
        }
    }
}

#[test]
fn khintchine_bounds_for_linear_norms() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let norm = LinearNorm::default();
    for _ in 0..40 {
        let d = rng.gen_range(1..=6);
        let f = LinearPolynomial::from_real(&(0..d).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<_>>());
        for p in [1.0, 1.5, 3.0, 4.0] {
            let k = khintchine_constants(p).unwrap();
            let e = norm.norm(&f, p).unwrap();
            let l2 = f.norm_l2();
            assert!(e.value >= k.a * l2 - 1e-9 && e.value <= k.b * l2 + 1e-9, "d={d} p={p}");
        }
    }
    // exact for even p
    let f = LinearPolynomial::from_real(&[1.0, 2.0, 0.5]);
    let a = norm.norm(&f, 4.0).unwrap().value;
    let b = multinomial_norm(&f, 4.0).unwrap().value;
    assert_eq!(a, b);
}
