//! Certificates of unboundedness of the Riesz projection `L^q → L^p`.
//!
//! The witness for dimension `d` is the minimal lift `ψ_d` of
//! `φ_d = (z_1+…+z_d)/√d`; its amplification ratio equals
//! `‖φ_d‖_p · ‖φ_d‖_r` (`1/q + 1/r = 1`), so only norms of `φ_d` are needed.
//! A certificate is issued when the product minus its error bars exceeds 1.

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exponent::{Exponent, ExponentTriple};
use crate::fourier::{FourierSeries, LinearPolynomial};
use crate::norms::{bessel_norm, grid_norm_at, monte_carlo_norm, multinomial_norm, LinearNorm, NormEstimate};
use crate::par;
use crate::special::{critical_curve, legacy_curve, unboundedness_margin, MARZO_SEIP_BOUND};

pub const MAX_SCAN_DIM: usize = 12;

/// Monte Carlo cross-checks flag a disagreement beyond this many standard
/// errors (plus the primary method's own bound).
const CROSS_CHECK_SIGMAS: f64 = 5.0;

#[derive(Debug, Clone, Serialize)]
pub struct NormRecord {
    pub exponent: f64,
    pub estimate: NormEstimate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<NormEstimate>,
    pub consistent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanEntry {
    pub d: usize,
    pub norm_p: NormRecord,
    pub norm_r: NormRecord,
    pub product: f64,
    /// Product of the two lower error bars.
    pub product_lower_bound: f64,
}

impl ScanEntry {
    fn certifies(&self) -> bool {
        self.product_lower_bound > 1.0 && self.norm_p.consistent && self.norm_r.consistent
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub p: f64,
    pub q: String,
    pub r: f64,
    pub d: usize,
    pub product_lower_bound: f64,
    pub margin: f64,
    pub method_log: Vec<NormRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Certified,
    /// The large-`d` limit of the product is at most 1, so no symmetric
    /// witness can exist.
    Unsatisfied,
    /// The limit exceeds 1 but no `d ≤ d_max` cleared the error bars.
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Certified => 0,
            Status::Unsatisfied => 2,
            Status::Inconclusive => 3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertifyOutcome {
    pub status: Status,
    /// `Γ(1+p/2)^{1/p} Γ(1+r/2)^{1/r}`, the `d → ∞` product.
    pub clt_product: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    /// Largest `product_lower_bound − 1` seen in the scan.
    pub best_margin: f64,
    pub best_d: usize,
    pub scan: Vec<ScanEntry>,
}

fn is_even_integer(s: f64) -> bool {
    s.fract() == 0.0 && (s as u64) % 2 == 0
}

/// `‖φ_d‖_s` by the cheapest rigorous route, cross-checked by Monte Carlo
/// unless that route is exact.
fn symmetric_norm(d: usize, s: f64, seed: u64, cfg: &Config) -> Result<NormRecord> {
    let phi = LinearPolynomial::symmetric(d);
    let estimate = if d == 1 {
        NormEstimate::exact(1.0, crate::norms::Method::Multinomial, 1)
    } else if is_even_integer(s) {
        multinomial_norm(&phi, s)?
    } else if d <= 4 {
        LinearNorm::from_config(cfg).norm(&phi, s)?
    } else {
        bessel_norm(&phi, s, cfg.bessel_tol)?
    };
    if estimate.method.is_exact() || d == 1 {
        return Ok(NormRecord { exponent: s, estimate, cross_check: None, consistent: true });
    }
    let mc = monte_carlo_norm(&phi, s, cfg.mc_samples, seed, cfg.mc_confidence)?;
    let band = estimate.error_bound + (CROSS_CHECK_SIGMAS * mc.std_error).max(mc.error_bound);
    let consistent = (estimate.value - mc.value).abs() <= band;
    Ok(NormRecord { exponent: s, estimate, cross_check: Some(mc), consistent })
}

/// Scans `d = 1..=d_max` and returns the first `d` whose conservative norm
/// product exceeds 1. All `d` are evaluated: the product need not be
/// monotone in `d`.
pub fn certify_unbounded(p: f64, q: Exponent, d_max: usize, seed: u64, cfg: &Config) -> Result<CertifyOutcome> {
    let t = ExponentTriple::ordered(p, q)?;
    if d_max == 0 || d_max > MAX_SCAN_DIM {
        return Err(Error::Domain(format!("d_max must lie in 1..={MAX_SCAN_DIM}, got {d_max}")));
    }
    let clt_product = unboundedness_margin(&t)?;
    if clt_product <= 1.0 {
        return Ok(CertifyOutcome {
            status: Status::Unsatisfied,
            clt_product,
            certificate: None,
            best_margin: clt_product - 1.0,
            best_d: 0,
            scan: Vec::new(),
        });
    }
    let scan = par::map_chunks(d_max, 1, |range| -> Result<ScanEntry> {
        let d = range.start + 1;
        // distinct Monte Carlo streams per dimension and exponent
        let norm_p = symmetric_norm(d, t.p, seed.wrapping_add(2 * d as u64), cfg)?;
        let norm_r = symmetric_norm(d, t.r, seed.wrapping_add(2 * d as u64 + 1), cfg)?;
        Ok(ScanEntry {
            d,
            product: norm_p.estimate.value * norm_r.estimate.value,
            product_lower_bound: norm_p.estimate.lower() * norm_r.estimate.lower(),
            norm_p,
            norm_r,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let (best_d, best_lb) = scan
        .iter()
        .map(|e| (e.d, e.product_lower_bound))
        .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    let certificate = scan.iter().find(|e| e.certifies()).map(|e| Certificate {
        p: t.p,
        q: t.q.to_string(),
        r: t.r,
        d: e.d,
        product_lower_bound: e.product_lower_bound,
        margin: e.product_lower_bound - 1.0,
        method_log: vec![e.norm_p.clone(), e.norm_r.clone()],
    });
    Ok(CertifyOutcome {
        status: if certificate.is_some() { Status::Certified } else { Status::Inconclusive },
        clt_product,
        certificate,
        best_margin: best_lb - 1.0,
        best_d,
        scan,
    })
}

/// `(‖Pf‖_p/‖f‖_q, ‖Pf₂‖_p/‖f₂‖_q)` on `N`-point grids, with `f₂` the
/// tensor double of `f`. The second is the square of the first.
pub fn amplification_demo(f: &FourierSeries, p: Exponent, q: Exponent, n: usize) -> Result<(f64, f64)> {
    if f.dim() > 2 {
        return Err(Error::Cost(format!("amplification demo needs dim <= 2, got {}", f.dim())));
    }
    for e in [p, q] {
        if let Exponent::Finite(v) = e {
            if !(v >= 1.0) {
                return Err(Error::Domain(format!("exponents must be >= 1, got {v}")));
            }
        }
    }
    let ratio = |g: &FourierSeries| -> Result<f64> {
        let den = grid_norm_at(g, q, n)?;
        if den == 0.0 {
            return Err(Error::Domain("amplification ratio of the zero function".into()));
        }
        Ok(grid_norm_at(&g.riesz_project(), p, n)? / den)
    };
    Ok((ratio(f)?, ratio(&f.tensor_double())?))
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub q: String,
    pub theorem3_p: f64,
    pub legacy_p: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marzo_seip_reference: Option<f64>,
}

pub fn critical_table(q_values: &[Exponent]) -> Result<Vec<TableRow>> {
    q_values
        .iter()
        .map(|&q| {
            Ok(TableRow {
                q: q.to_string(),
                theorem3_p: critical_curve(q)?,
                legacy_p: legacy_curve(q)?,
                marzo_seip_reference: q.is_infinite().then_some(MARZO_SEIP_BOUND),
            })
        })
        .collect()
}

/// CSV with header `q,theorem3_p,legacy_p,marzo_seip_reference`; the last
/// column is only filled on the `q = inf` row.
pub fn emit_critical_table(q_values: &[Exponent]) -> Result<String> {
    let mut out = String::from("q,theorem3_p,legacy_p,marzo_seip_reference\n");
    for row in critical_table(q_values)? {
        let ms = row.marzo_seip_reference.map(|v| v.to_string()).unwrap_or_default();
        out.push_str(&format!("{},{:.10},{:.10},{}\n", row.q, row.theorem3_p, row.legacy_p, ms));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Complex64;

    #[test]
    fn trivial_exponents_unsatisfied() {
        let cfg = Config::default();
        let o = certify_unbounded(2.0, Exponent::Finite(2.0), 6, 0, &cfg).unwrap();
        assert_eq!(o.status, Status::Unsatisfied);
        assert_eq!(o.status.exit_code(), 2);
        let o = certify_unbounded(3.3, Exponent::Infinite, 12, 0, &cfg).unwrap();
        assert_eq!(o.status, Status::Unsatisfied);
        // just above the threshold the limit exceeds 1 by ~1e-6: no finite witness
        let o = certify_unbounded(3.31138, Exponent::Infinite, 12, 0, &cfg).unwrap();
        assert_eq!(o.status, Status::Inconclusive);
        assert!(o.clt_product > 1.0 && o.best_margin <= 0.0);
    }

    #[test]
    fn rejects_bad_input() {
        let cfg = Config::default();
        assert!(certify_unbounded(3.0, Exponent::Finite(2.5), 4, 0, &cfg).is_err());
        assert!(certify_unbounded(3.0, Exponent::Infinite, 13, 0, &cfg).is_err());
    }

    #[test]
    fn amplification_examples() {
        let f = &FourierSeries::variable(0) + &FourierSeries::variable(0).conj();
        let (r, r2) = amplification_demo(&f, Exponent::Finite(2.0), Exponent::Finite(2.0), 8).unwrap();
        assert!((r - 0.5f64.sqrt()).abs() < 1e-14);
        assert!((r2 - 0.5).abs() < 1e-14);
    }

    #[test]
    fn analytic_input_ratio() {
        let f = FourierSeries::from_terms(
            2,
            [
                (vec![1, 0].into(), Complex64::new(1.0, 0.0)),
                (vec![0, 2].into(), Complex64::new(0.5, -0.3)),
            ],
        );
        let (p, q) = (Exponent::Finite(4.0), Exponent::Finite(3.0));
        let (r, r2) = amplification_demo(&f, p, q, 16).unwrap();
        let direct = grid_norm_at(&f, p, 16).unwrap() / grid_norm_at(&f, q, 16).unwrap();
        assert!((r - direct).abs() < 1e-14);
        assert!((r2 - r * r).abs() < 1e-12);
    }

    #[test]
    fn table_rows() {
        let rows = critical_table(&[Exponent::Infinite, Exponent::Finite(2.0), Exponent::Finite(4.0)]).unwrap();
        assert!((rows[0].theorem3_p - 3.31138).abs() < 1e-5);
        assert_eq!(rows[0].legacy_p, 4.0);
        assert_eq!(rows[0].marzo_seip_reference, Some(3.67632));
        assert_eq!((rows[1].theorem3_p, rows[1].legacy_p), (2.0, 2.0));
        assert!(rows[2].theorem3_p < rows[2].legacy_p);
        let csv = emit_critical_table(&[Exponent::Infinite]).unwrap();
        assert!(csv.starts_with("q,theorem3_p,legacy_p,marzo_seip_reference\ninf,3.31"));
        assert!(csv.trim_end().ends_with(",3.67632"));
    }
}
