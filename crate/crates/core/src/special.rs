//! Gamma-function constants: Khintchine constants, the critical exponent
//! for `L^∞ → L^p`, and the unboundedness margin `Γ(1+p/2)^{1/p} Γ(1+r/2)^{1/r}`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exponent::{Exponent, ExponentTriple};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(x: f64) -> f64 {
    // x is the shifted argument (z - 1)
    LANCZOS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS[0], |acc, (i, c)| acc + c / (x + (i + 1) as f64))
}

fn exact_factorial(n: u32) -> f64 {
    (2..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// `Γ(x)` for real `x`, with the reflection formula below 1/2. Nonpositive
/// integers return `NaN`.
pub fn gamma(x: f64) -> f64 {
    if x == x.floor() {
        if x <= 0.0 {
            return f64::NAN;
        }
        if x <= 171.0 {
            return exact_factorial(x as u32 - 1);
        }
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    ln_gamma(x).exp()
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    if x < 0.5 {
        // ln|Γ(x)| through reflection; only used for 0 < x < 1/2 here.
        return (PI / (PI * x).sin().abs()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}

/// `1/Γ(x)`, zero at the poles.
pub fn recip_gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        0.0
    } else {
        1.0 / gamma(x)
    }
}

/// `B(x, y) = Γ(x)Γ(y)/Γ(x+y)`.
pub fn beta(x: f64, y: f64) -> f64 {
    if x > 0.0 && y > 0.0 {
        (ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y)).exp()
    } else {
        gamma(x) * gamma(y) * recip_gamma(x + y)
    }
}

/// `Γ(1+p/2)^{1/p}`: the `p`-th absolute moment, normalized, of a standard
/// complex Gaussian; also the large-`d` limit of `‖(z_1+…+z_d)/√d‖_p`.
pub fn gamma_moment_constant(p: f64) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::Domain(format!("moment constant needs finite p >= 1, got {p}")));
    }
    Ok(moment_constant(p))
}

fn moment_constant(p: f64) -> f64 {
    (ln_gamma(1.0 + 0.5 * p) / p).exp()
}

/// Optimal constants `a_p ≤ 1 ≤ b_p` of the Khintchine inequality for
/// linear functions on the polytorus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KhintchineConstants {
    pub p: f64,
    pub a: f64,
    pub b: f64,
}

pub fn khintchine_constants(p: f64) -> Result<KhintchineConstants> {
    let g = gamma_moment_constant(p)?;
    Ok(KhintchineConstants { p, a: g.min(1.0), b: g.max(1.0) })
}

/// Bisection down to bracket width `width`, followed by one secant step
/// from the final bracket (kept only if it stays inside).
pub fn bisect_secant(f: impl Fn(f64) -> f64, lo: f64, hi: f64, width: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb0) = (f(a), f(b));
    let mut fb = fb0;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::Bracket { lo, hi, f_lo: fa, f_hi: fb });
    }
    while b - a > width {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    let s = b - fb * (b - a) / (fb - fa);
    if s.is_finite() && s >= a && s <= b {
        Ok(s)
    } else {
        Ok(0.5 * (a + b))
    }
}

const ROOT_WIDTH: f64 = 1e-10;

/// The unique `p` in `[2, 6]` with `Γ(1+p/2)^{1/p} = 2/√π` (≈ 3.31138).
pub fn solve_critical_p() -> Result<f64> {
    let target = (2.0 / PI.sqrt()).ln();
    bisect_secant(|p| ln_gamma(1.0 + 0.5 * p) / p - target, 2.0, 6.0, ROOT_WIDTH)
}

/// `Γ(1+p/2)^{1/p} · Γ(1+r/2)^{1/r}` for `2 ≤ p ≤ q ≤ ∞`; a value above 1
/// means the Riesz projection is unbounded from `L^q` to `L^p`.
pub fn unboundedness_margin(t: &ExponentTriple) -> Result<f64> {
    let t = ExponentTriple::ordered(t.p, t.q)?;
    Ok(moment_constant(t.p) * moment_constant(t.r))
}

fn log_margin(p: f64, r: f64) -> f64 {
    ln_gamma(1.0 + 0.5 * p) / p + ln_gamma(1.0 + 0.5 * r) / r
}

/// The `p` in `[2, q]` where the unboundedness margin crosses 1, clamped
/// to `q` when the margin stays below 1 on the whole interval.
pub fn critical_curve(q: Exponent) -> Result<f64> {
    let r = q.conjugate().finite().unwrap_or(f64::INFINITY);
    let hi = match q {
        Exponent::Infinite => 6.0,
        Exponent::Finite(v) if v >= 2.0 => v,
        Exponent::Finite(v) => return Err(Error::Domain(format!("critical curve needs q >= 2, got {v}"))),
    };
    let h = |p: f64| log_margin(p, r);
    if h(2.0) >= 0.0 {
        return Ok(2.0);
    }
    if h(hi) <= 0.0 {
        return Ok(hi);
    }
    bisect_secant(h, 2.0, hi, ROOT_WIDTH)
}

/// `p·r/4` for the older one-variable sufficient condition.
pub fn legacy_condition(t: &ExponentTriple) -> Result<f64> {
    let t = ExponentTriple::ordered(t.p, t.q)?;
    Ok(t.p * t.r / 4.0)
}

/// The `p` where `p·r/4 = 1`, clamped to `[2, q]`.
pub fn legacy_curve(q: Exponent) -> Result<f64> {
    let r = match q {
        Exponent::Infinite => 1.0,
        Exponent::Finite(v) if v >= 2.0 => v / (v - 1.0),
        Exponent::Finite(v) => return Err(Error::Domain(format!("legacy curve needs q >= 2, got {v}"))),
    };
    let p = 4.0 / r;
    Ok(match q {
        Exponent::Infinite => p.max(2.0),
        Exponent::Finite(v) => p.clamp(2.0, v),
    })
}

/// Upper bound on `p_∞` from the two-variable example of Marzo and Seip.
pub const MARZO_SEIP_BOUND: f64 = 3.67632;

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    // Reference values from a 25-digit evaluation.
    #[test]
    fn gamma_reference_values() {
        let cases = [
            (0.5, 1.772_453_850_905_516_027),
            (1.5, 0.886_226_925_452_758_013_6),
            (2.75, 1.608_359_421_985_545_659),
            (7.3, 1_271.423_633_663_909_273),
            (9.99, 354_802.017_019_830_927_3),
            (-2.5, -0.945_308_720_482_941_881_2),
            (-3.5, 0.270_088_205_852_269_108_9),
            (0.1, 9.513_507_698_668_731_836),
        ];
        for (x, g) in cases {
            assert!(rel(gamma(x), g) < 1e-13, "Γ({x}) = {} vs {g}", gamma(x));
        }
        assert_eq!(gamma(4.0), 6.0);
        assert!(gamma(-2.0).is_nan());
        assert_eq!(recip_gamma(-2.0), 0.0);
        assert_eq!(recip_gamma(0.0), 0.0);
    }

    #[test]
    fn beta_matches_gamma_ratio() {
        assert!(rel(beta(2.0, 3.0), 1.0 / 12.0) < 1e-14);
        assert!(rel(beta(0.5, 0.5), PI) < 1e-13);
    }

    #[test]
    fn moment_constant_examples() {
        assert_eq!(gamma_moment_constant(2.0).unwrap(), 1.0);
        assert!((gamma_moment_constant(1.0).unwrap() - PI.sqrt() / 2.0).abs() < 1e-15);
        assert!((gamma_moment_constant(4.0).unwrap() - 2f64.powf(0.25)).abs() < 1e-15);
        assert!(gamma_moment_constant(0.5).is_err());
    }

    #[test]
    fn khintchine_examples() {
        let k = khintchine_constants(2.0).unwrap();
        assert_eq!((k.a, k.b), (1.0, 1.0));
        let k = khintchine_constants(1.0).unwrap();
        assert!((k.a - PI.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(k.b, 1.0);
        let k = khintchine_constants(4.0).unwrap();
        assert_eq!(k.a, 1.0);
        assert!((k.b - 2f64.powf(0.25)).abs() < 1e-15);
        assert!(khintchine_constants(f64::INFINITY).is_err());
    }

    #[test]
    fn critical_p() {
        let p = solve_critical_p().unwrap();
        assert!((p - 3.31138).abs() < 1e-5);
        // 25-digit root of the defining equation
        assert!((p - 3.311_375_843_004_722_67).abs() < 1e-9);
        let resid = gamma_moment_constant(p).unwrap() - 2.0 / PI.sqrt();
        assert!(resid.abs() < 1e-8);
        assert!(p < MARZO_SEIP_BOUND);
    }

    #[test]
    fn margin_examples() {
        let t = ExponentTriple::new(2.0, Exponent::Finite(2.0)).unwrap();
        assert_eq!(unboundedness_margin(&t).unwrap(), 1.0);
        let t = ExponentTriple::new(3.5, Exponent::Infinite).unwrap();
        // Γ(2.75)^{2/7} · √π/2 at 25 digits
        assert!((unboundedness_margin(&t).unwrap() - 1.015_106_346_095_190_144_7).abs() < 1e-13);
        let p = solve_critical_p().unwrap();
        let t = ExponentTriple::new(p, Exponent::Infinite).unwrap();
        assert!((unboundedness_margin(&t).unwrap() - 1.0).abs() < 1e-7);
        let bad = ExponentTriple { p: 4.0, q: Exponent::Finite(3.0), r: 1.5 };
        assert!(matches!(unboundedness_margin(&bad), Err(Error::Ordering { .. })));
    }

    #[test]
    fn curve_examples() {
        let p_inf = critical_curve(Exponent::Infinite).unwrap();
        assert!((p_inf - solve_critical_p().unwrap()).abs() < 1e-7);
        assert_eq!(critical_curve(Exponent::Finite(2.0)).unwrap(), 2.0);
        // golden values from a 25-digit root solve
        let golden = [
            (3.0, 2.567_315_888_317_572_4),
            (4.0, 2.791_981_576_668_770_2),
            (6.0, 2.987_534_560_063_077_6),
            (10.0, 3.126_638_190_493_649_1),
            (100.0, 3.294_053_224_829_351_4),
        ];
        for (q, p) in golden {
            let got = critical_curve(Exponent::Finite(q)).unwrap();
            assert!((got - p).abs() < 1e-8, "q = {q}: {got} vs {p}");
        }
    }

    #[test]
    fn legacy_examples() {
        let t = ExponentTriple::new(4.0, Exponent::Infinite).unwrap();
        assert_eq!(legacy_condition(&t).unwrap(), 1.0);
        let t = ExponentTriple::new(3.5, Exponent::Infinite).unwrap();
        assert_eq!(legacy_condition(&t).unwrap(), 0.875);
        let t = ExponentTriple::new(2.0, Exponent::Finite(2.0)).unwrap();
        assert_eq!(legacy_condition(&t).unwrap(), 1.0);
        assert_eq!(legacy_curve(Exponent::Infinite).unwrap(), 4.0);
        assert_eq!(legacy_curve(Exponent::Finite(2.0)).unwrap(), 2.0);
        assert!((legacy_curve(Exponent::Finite(4.0)).unwrap() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn moment_constant_increasing() {
        let mut prev = 0.0;
        for i in 0..100 {
            let p = 2.0 + 0.2 * i as f64;
            let g = gamma_moment_constant(p).unwrap();
            assert!(g > prev);
            prev = g;
        }
    }

    #[test]
    fn curve_is_monotone_and_solves_margin() {
        let mut prev = 2.0;
        for i in 1..60 {
            let q = 2.0 + 0.25 * i as f64;
            let p = critical_curve(Exponent::Finite(q)).unwrap();
            assert!(p >= prev - 1e-12, "q = {q}");
            assert!(p <= q);
            if p < q {
                let t = ExponentTriple::new(p, Exponent::Finite(q)).unwrap();
                assert!((unboundedness_margin(&t).unwrap() - 1.0).abs() < 1e-7);
            }
            prev = p;
        }
    }
}
