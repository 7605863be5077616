//! `L^p` norms on `T^d`: direct grid quadrature for general trigonometric
//! polynomials and several routes for linear polynomials.

mod clt;
mod grid;
mod linear;
mod monte_carlo;
mod multinomial;
mod pearson;
mod two_term;

use serde::{Deserialize, Serialize};

pub use clt::clt_limit_norm;
pub use grid::{grid_norm, grid_norm_at};
pub use linear::LinearNorm;
pub use monte_carlo::monte_carlo_norm;
pub use multinomial::{multinomial_moment, multinomial_norm};
pub use pearson::{bessel_norm, pearson_walk_moment};
pub use two_term::{two_term_mean, two_term_norm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Method {
    Grid,
    Reduction1d,
    Multinomial,
    Montecarlo,
    Bessel,
    CltLimit,
}

impl Method {
    pub fn is_exact(self) -> bool {
        matches!(self, Method::Multinomial | Method::CltLimit)
    }
}

impl std::str::FromStr for Method {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "grid" => Method::Grid,
            "reduction1d" | "two-term" | "twoterm" => Method::Reduction1d,
            "multinomial" => Method::Multinomial,
            "montecarlo" | "monte-carlo" | "mc" => Method::Montecarlo,
            "bessel" | "pearson" => Method::Bessel,
            "clt" | "cltlimit" => Method::CltLimit,
            other => return Err(crate::Error::Parse(format!("unknown method {other:?}"))),
        })
    }
}

/// A norm value with its provenance and absolute uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub method: Method,
    /// Absolute; zero for exact methods.
    pub error_bound: f64,
    /// Samples or grid points used.
    pub samples: u64,
    /// One standard error, for statistical estimates; zero otherwise.
    #[serde(skip_serializing_if = "is_zero", default)]
    pub std_error: f64,
    /// False when a cost cap stopped refinement before the tolerance was met.
    #[serde(skip_serializing_if = "is_true", default = "yes")]
    pub converged: bool,
}

fn is_zero(v: &f64) -> bool {
    *v == 0.0
}

fn is_true(v: &bool) -> bool {
    *v
}

fn yes() -> bool {
    true
}

impl NormEstimate {
    pub fn exact(value: f64, method: Method, samples: u64) -> Self {
        NormEstimate { value, method, error_bound: 0.0, samples, std_error: 0.0, converged: true }
    }

    pub fn lower(&self) -> f64 {
        (self.value - self.error_bound).max(0.0)
    }

    pub fn upper(&self) -> f64 {
        self.value + self.error_bound
    }
}

/// Propagates an absolute error on `M = ‖f‖_p^p` to `M^{1/p}`.
pub(crate) fn root_error(moment: f64, moment_err: f64, p: f64) -> f64 {
    if moment <= 0.0 {
        return moment_err.max(0.0).powf(1.0 / p);
    }
    let v = moment.powf(1.0 / p);
    let lo = (moment - moment_err).max(0.0).powf(1.0 / p);
    let hi = (moment + moment_err).powf(1.0 / p);
    (v - lo).max(hi - v)
}
