use crate::error::Result;
use crate::special::gamma_moment_constant;

/// `lim_d ‖(z_1+…+z_d)/√d‖_p = Γ(1+p/2)^{1/p}`, the normalized `p`-th
/// moment of a standard complex Gaussian.
pub fn clt_limit_norm(p: f64) -> Result<f64> {
    gamma_moment_constant(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(clt_limit_norm(2.0).unwrap(), 1.0);
        assert!((clt_limit_norm(4.0).unwrap() - 2f64.powf(0.25)).abs() < 1e-15);
        assert!((clt_limit_norm(1.0).unwrap() - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-15);
    }
}
