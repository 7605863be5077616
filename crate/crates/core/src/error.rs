use thiserror::Error;

/// Errors produced by the polytorus routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected at least {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("aliasing: {points} points per axis cannot resolve exponent {max_exponent}")]
    Aliasing { points: usize, max_exponent: i64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("exponent ordering violated: need p <= q (p = {p}, q = {q})")]
    Ordering { p: f64, q: String },

    #[error("root not bracketed on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    Bracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("cost guard: {0}")]
    Cost(String),

    #[error("projection check failed at {alpha:?}: {detail}")]
    Projection { alpha: Vec<i32>, detail: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
