//! Browser bindings for three interactive views: the critical-exponent
//! curve, norms of a linear polynomial against its Khintchine bounds, and
//! the Fourier coefficients of the two-variable minimal lift.

use wasm_bindgen::prelude::*;

use polytorus::exponent::Exponent;
use polytorus::lift::d2_closed_form_coefficient;
use polytorus::norms::LinearNorm;
use polytorus::special::{critical_curve, khintchine_constants, legacy_curve};
use polytorus::LinearPolynomial;

fn js_err(e: polytorus::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Rows `[1/q, critical_p, legacy_p]` flattened, for `1/q` running from
/// 1/2 down to 0 in `steps` equal steps.
#[wasm_bindgen]
pub fn critical_curve_points(steps: usize) -> Result<Vec<f64>, JsError> {
    let steps = steps.max(1);
    let mut out = Vec::with_capacity(3 * (steps + 1));
    for k in 0..=steps {
        let inv = 0.5 * (1.0 - k as f64 / steps as f64);
        let q = if inv == 0.0 { Exponent::Infinite } else { Exponent::Finite(1.0 / inv) };
        out.push(inv);
        out.push(critical_curve(q).map_err(js_err)?);
        out.push(legacy_curve(q).map_err(js_err)?);
    }
    Ok(out)
}

/// `[‖f‖_p, error bound, a_p‖f‖₂, b_p‖f‖₂]` for `f` given as
/// comma-separated coefficients such as `"1, 0.5, 0.3i"`.
#[wasm_bindgen]
pub fn linear_norm(coeffs: &str, p: f64) -> Result<Vec<f64>, JsError> {
    let f = LinearPolynomial::parse(coeffs).map_err(js_err)?;
    if f.dim() > 8 {
        return Err(JsError::new("at most 8 coefficients in the demo"));
    }
    let e = LinearNorm::default().norm(&f, p).map_err(js_err)?;
    let k = khintchine_constants(p).map_err(js_err)?;
    let l2 = f.norm_l2();
    Ok(vec![e.value, e.error_bound, k.a * l2, k.b * l2])
}

/// Coefficients of `z_1^k z_2^{1−k}` in the minimal lift of `z_1 + z_2`,
/// for `k = k_min..=k_max`.
#[wasm_bindgen]
pub fn lift_coefficients(p: f64, k_min: i32, k_max: i32) -> Vec<f64> {
    (k_min..=k_max).map(|k| d2_closed_form_coefficient(p, k as i64)).collect()
}
