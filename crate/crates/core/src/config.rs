//! Run-time tunables, loadable from a flat `key = value` file.
//!
//! ```text
//! # comments start with '#'
//! grid.rtol = 1e-8
//! lift.n.d2 = 256
//! seed = 7
//! ```

use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    /// Relative tolerance for N-doubling in grid quadrature.
    pub grid_rtol: f64,
    /// Starting points per axis for N-doubling.
    pub grid_start_n: usize,
    /// Cap on total grid points (N^d) during doubling.
    pub grid_max_points: usize,
    /// Coefficients below this magnitude are dropped after numerical extraction.
    pub purge_threshold: f64,
    /// Monte Carlo sample count.
    pub mc_samples: usize,
    /// Two-sided confidence used for Monte Carlo error bars.
    pub mc_confidence: f64,
    pub seed: u64,
    /// Absolute target error for the Bessel-integral moments.
    pub bessel_tol: f64,
    /// Absolute tolerance for 1-D adaptive quadrature.
    pub quad_tol: f64,
    /// Points per outer axis for the reduced linear-norm quadrature, d = 3.
    pub linear_n3: usize,
    /// Points per outer axis for the reduced linear-norm quadrature, d >= 4.
    pub linear_n4: usize,
    pub lift_n_d1: usize,
    pub lift_n_d2: usize,
    pub lift_n_d3: usize,
    pub lift_n_d4: usize,
    pub lift_max_deg: usize,
    pub dual_restarts: usize,
    pub dual_max_iter: usize,
    pub threads: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            grid_rtol: 1e-8,
            grid_start_n: 16,
            grid_max_points: 1 << 24,
            purge_threshold: 1e-12,
            mc_samples: 1_000_000,
            mc_confidence: 0.99,
            seed: 0,
            bessel_tol: 1e-6,
            quad_tol: 1e-10,
            linear_n3: 512,
            linear_n4: 96,
            lift_n_d1: 256,
            lift_n_d2: 256,
            lift_n_d3: 96,
            lift_n_d4: 32,
            lift_max_deg: 6,
            dual_restarts: 8,
            dual_max_iter: 200,
            threads: None,
        }
    }
}

impl Config {
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Parse(format!("{}: {e}", path.as_ref().display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
            cfg.set(key.trim(), value.trim())
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse().map_err(|_| Error::Parse(format!("bad value {v:?} for {key}")))
        }
        match key {
            "grid.rtol" => self.grid_rtol = num(key, value)?,
            "grid.start_n" => self.grid_start_n = num(key, value)?,
            "grid.max_points" => self.grid_max_points = num(key, value)?,
            "purge_threshold" => self.purge_threshold = num(key, value)?,
            "mc.samples" => self.mc_samples = num(key, value)?,
            "mc.confidence" => self.mc_confidence = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "bessel.tol" => self.bessel_tol = num(key, value)?,
            "quad.tol" => self.quad_tol = num(key, value)?,
            "linear.n3" => self.linear_n3 = num(key, value)?,
            "linear.n4" => self.linear_n4 = num(key, value)?,
            "lift.n.d1" => self.lift_n_d1 = num(key, value)?,
            "lift.n.d2" => self.lift_n_d2 = num(key, value)?,
            "lift.n.d3" => self.lift_n_d3 = num(key, value)?,
            "lift.n.d4" => self.lift_n_d4 = num(key, value)?,
            "lift.max_deg" => self.lift_max_deg = num(key, value)?,
            "dual.restarts" => self.dual_restarts = num(key, value)?,
            "dual.max_iter" => self.dual_max_iter = num(key, value)?,
            "threads" => self.threads = Some(num(key, value)?),
            _ => return Err(Error::Parse(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Default lift grid size for dimension `d`.
    pub fn lift_n(&self, d: usize) -> usize {
        match d {
            0 | 1 => self.lift_n_d1,
            2 => self.lift_n_d2,
            3 => self.lift_n_d3,
            _ => self.lift_n_d4,
        }
    }
}
