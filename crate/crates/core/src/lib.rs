//! Numerical harmonic analysis on truncated polytori.
//!
//! The crate works with finitely supported Fourier series on `T^d` and
//! provides the Riesz projection, `L^p` norms of trigonometric and linear
//! polynomials, Khintchine-type constants, dual norms of linear functions,
//! the minimal-norm preimage of `z_1 + ... + z_d` under the Riesz
//! projection, and a certifier for unboundedness of the projection from
//! `L^q` to `L^p`.

pub mod bessel;
pub mod certify;
pub mod config;
pub mod duality;
pub mod error;
pub mod exponent;
pub mod fourier;
pub mod lift;
pub mod norms;
pub mod quad;
pub mod special;

mod par;

pub use config::Config;
pub use error::{Error, Result};
pub use exponent::{Exponent, ExponentTriple};
pub use fourier::{GridFunction, LinearPolynomial, MultiIndex, FourierSeries};
pub use norms::{Method, NormEstimate};

pub use num_complex::Complex64;
