use proptest::prelude::*;

use polytorus::fourier::{extract_coefficients, sample_grid, MultiIndex};
use polytorus::{Complex64, FourierSeries};

// Oracle: direct evaluation of Σ c_α e^{i α·θ} at the grid points.
fn direct_mean_abs2(f: &FourierSeries, n: usize) -> f64 {
    let d = f.dim();
    let total = n.pow(d as u32);
    let mut sum = 0.0;
    for flat in 0..total {
        let mut rem = flat;
        let mut theta = vec![0.0; d];
        for t in theta.iter_mut().rev() {
            *t = 2.0 * std::f64::consts::PI * (rem % n) as f64 / n as f64;
            rem /= n;
        }
        sum += f.evaluate(&theta).unwrap().norm_sqr();
    }
    sum / total as f64
}

fn series(max_dim: usize, max_deg: i32) -> impl Strategy<Value = FourierSeries> {
    (1..=max_dim).prop_flat_map(move |d| {
        prop::collection::vec(
            (prop::collection::vec(-max_deg..=max_deg, d), -1.0..1.0f64, -1.0..1.0f64),
            0..8,
        )
        .prop_map(move |terms| {
            FourierSeries::from_terms(
                d,
                terms.into_iter().map(|(a, re, im)| (MultiIndex::new(a), Complex64::new(re, im))),
            )
        })
    })
}

fn close(a: &FourierSeries, b: &FourierSeries, tol: f64) -> bool {
    let diff = a - b;
    let ok = diff.terms().all(|(_, c)| c.norm() <= tol);
    ok
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parseval_on_grid(f in series(3, 2)) {
        let g = sample_grid(&f, 5).unwrap();
        let grid = g.mean_abs_pow(2.0);
        let coeff = f.norm_l2().powi(2);
        prop_assert!((grid - coeff).abs() <= 1e-12 * (1.0 + coeff));
        prop_assert!((grid - direct_mean_abs2(&f, 5)).abs() <= 1e-12 * (1.0 + coeff));
    }

    #[test]
    fn extraction_inverts_sampling(f in series(3, 2)) {
        let g = sample_grid(&f, 6).unwrap();
        let back = extract_coefficients(&g, 2, 1e-13).unwrap();
        prop_assert!(close(&back, &f, 1e-12));
    }

    #[test]
    fn riesz_projection_is_idempotent(f in series(4, 3)) {
        let p = f.riesz_project();
        prop_assert_eq!(p.riesz_project(), p.clone());
        prop_assert!(p.terms().all(|(a, _)| a.is_analytic()));
        // complementary part has no analytic terms
        prop_assert!((&f - &p).terms().all(|(a, _)| !a.is_analytic()));
    }

    #[test]
    fn homogeneous_parts_partition(f in series(4, 3)) {
        let mut sum = FourierSeries::zero(f.dim());
        for k in f.degrees() {
            let part = f.homogeneous_part(k);
            prop_assert!(part.terms().all(|(a, _)| a.degree() == k));
            sum = &sum + &part;
        }
        prop_assert!(close(&sum, &f, 1e-15));
    }

    #[test]
    fn tensor_double_norms_multiply(f in series(2, 2)) {
        let f2 = f.tensor_double();
        prop_assert_eq!(f2.dim(), 2 * f.dim());
        let n1 = f.norm_l2().powi(2);
        prop_assert!((f2.norm_l2() - n1).abs() <= 1e-12 * (1.0 + n1));
        prop_assert!(close(&f2.riesz_project(), &f.riesz_project().tensor_double(), 1e-14));
    }

    #[test]
    fn json_round_trip(f in series(3, 3)) {
        let s = f.to_json_string();
        let back = FourierSeries::from_json_str(&s).unwrap();
        prop_assert_eq!(back.to_json_string(), s);
        prop_assert!(close(&back, &f, 0.0));
    }

    #[test]
    fn restriction_drops_tail_variables(f in series(4, 2), d in 1usize..4) {
        let r = f.restrict(d);
        prop_assert!(r.terms().all(|(a, _)| a.support_len() <= d));
        // averaging over the tail variables: evaluate with them integrated out
        let n = 5;
        let g = sample_grid(&f, n).unwrap();
        if f.dim() > d {
            let tail = n.pow((f.dim() - d) as u32);
            let head = sample_grid(&r.clone().with_dim(d), n).unwrap();
            for (i, v) in head.values.iter().enumerate() {
                let mean: Complex64 = g.values[i * tail..(i + 1) * tail].iter().sum::<Complex64>() / tail as f64;
                prop_assert!((mean - v).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn canonical_json_layout() {
    let f = FourierSeries::from_terms(
        2,
        [
            (MultiIndex::new(vec![0, 1]), Complex64::new(1.0, 0.0)),
            (MultiIndex::new(vec![-1, 0]), Complex64::new(1.0, 0.0)),
            (MultiIndex::zero(), Complex64::new(0.5, -0.0)),
        ],
    );
    assert_eq!(
        f.to_json_string(),
        r#"{"dim":2,"terms":[{"alpha":[-1,0],"re":1.0,"im":0.0},{"alpha":[0,0],"re":0.5,"im":0.0},{"alpha":[0,1],"re":1.0,"im":0.0}]}"#
    );
}
