//! Truncated Fourier series on `T^d`.
//!
//! Variables are numbered from zero internally; `z_1` in the usual notation
//! is variable 0. A negative exponent `-m` on a variable stands for
//! `conj(z)^m` on the torus.

pub(crate) mod grid;
mod index;
mod linear;
mod series;

pub use grid::{extract_coefficients, sample_grid, GridFunction};
pub use index::MultiIndex;
pub use linear::LinearPolynomial;
pub use series::{FourierSeries, SeriesJson, TermJson};
