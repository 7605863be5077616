//! Dual norms of linear symbols against `H^p`, restricted to linear test
//! functions.
//!
//! For a linear `φ` the supremum of `|⟨f, φ⟩| / ‖f‖_p` over `H^p` is attained
//! on linear `f`, and after rotating each variable both `f` and `φ` may be
//! taken with nonnegative coefficients. The optimizer therefore works on the
//! nonnegative part of the unit sphere of `R^d`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::fourier::LinearPolynomial;
use crate::norms::{grid_norm, LinearNorm};
use crate::par;
use crate::special::khintchine_constants;

#[derive(Debug, Clone, Serialize)]
pub struct DualNormResult {
    /// Best ratio found; a lower bound for the dual norm (the test function's
    /// norm enters with its error bar added).
    pub value: f64,
    /// Unit `‖·‖₂`, nonnegative coefficients.
    pub maximizer: LinearPolynomial,
    /// The ratio at `f = φ`: `‖φ‖₂² / ‖φ‖_p`.
    pub lower_certificate: f64,
    /// `‖φ‖₂ / a_p`.
    pub upper_certificate: f64,
}

/// Objective `Σ c_j m_j / ‖Σ c_j z_j‖_p` on nonnegative coefficient vectors.
struct Ratio<'a> {
    m: &'a [f64],
    p: f64,
    norm: &'a LinearNorm,
}

impl Ratio<'_> {
    fn eval(&self, c: &[f64]) -> Result<f64> {
        let c: Vec<f64> = c.iter().map(|v| v.abs()).collect();
        let num: f64 = c.iter().zip(self.m).map(|(a, b)| a * b).sum();
        let den = self.norm.norm_moduli(&c, self.p)?;
        if den.value == 0.0 {
            return Ok(0.0);
        }
        Ok(num / den.value)
    }

    /// Same ratio with the denominator pushed to its upper error bar.
    fn certified(&self, c: &[f64]) -> Result<f64> {
        let num: f64 = c.iter().zip(self.m).map(|(a, b)| a * b).sum();
        let den = self.norm.norm_moduli(c, self.p)?;
        Ok(num / den.upper())
    }
}

/// Grid sizes (per free angle) for the search objective, indexed by `d`.
const SEARCH_GRID: [usize; 5] = [1, 1, 2048, 192, 40];

/// The objective the optimizer climbs. For `d ≤ 4` it is a rectangle rule
/// over `θ_2, …, θ_d` (`θ_1 = 0` by rotation invariance) that returns the
/// exact gradient of its own ratio in the same pass; the grid includes
/// angle 0 so the rule is symmetric under permuting coefficients. Larger
/// `d` falls back to central differences of the accurate norm.
enum Search<'a> {
    Grid { m: &'a [f64], p: f64, n: usize, roots: Vec<Complex64> },
    Accurate(&'a Ratio<'a>),
}

impl Search<'_> {
    fn value(&self, c: &[f64]) -> Result<f64> {
        match self {
            Search::Grid { .. } => Ok(self.value_grad(c)?.0),
            Search::Accurate(r) => r.eval(c),
        }
    }

    /// Value at a line-search trial point, with the gradient when it comes
    /// for free.
    fn trial(&self, c: &[f64]) -> Result<(f64, Option<Vec<f64>>)> {
        match self {
            Search::Grid { .. } => self.value_grad(c).map(|(v, g)| (v, Some(g))),
            Search::Accurate(r) => Ok((r.eval(c)?, None)),
        }
    }

    fn value_grad(&self, c: &[f64]) -> Result<(f64, Vec<f64>)> {
        let d = c.len();
        match self {
            Search::Accurate(r) => {
                let mut g = vec![0.0; d];
                for j in 0..d {
                    let mut a = c.to_vec();
                    let mut b = c.to_vec();
                    a[j] += FD_STEP;
                    b[j] -= FD_STEP;
                    g[j] = (r.eval(&a)? - r.eval(&b)?) / (2.0 * FD_STEP);
                }
                Ok((r.eval(c)?, g))
            }
            Search::Grid { m, p, n, roots } => {
                let (p, n) = (*p, *n);
                let len = n.pow(d as u32 - 1);
                // per chunk: [Σ|f|^p, Σ|f|^{p-2} Re(f̄ u_j) for j = 0..d]
                let parts = par::map_chunks(len, par::CHUNK, |range| {
                    let mut acc = vec![0.0; d + 1];
                    let mut u = vec![Complex64::new(1.0, 0.0); d];
                    for flat in range {
                        let mut rem = flat;
                        for j in (1..d).rev() {
                            u[j] = roots[rem % n];
                            rem /= n;
                        }
                        let f: Complex64 = c.iter().zip(&u).map(|(cj, uj)| uj * *cj).sum();
                        let r2 = f.norm_sqr();
                        if r2 == 0.0 {
                            continue;
                        }
                        let w = r2.powf(0.5 * p - 1.0);
                        acc[0] += w * r2;
                        for j in 0..d {
                            acc[j + 1] += w * (f.conj() * u[j]).re;
                        }
                    }
                    acc
                });
                let mut tot = vec![0.0; d + 1];
                for part in parts {
                    tot.iter_mut().zip(part).for_each(|(a, b)| *a += b);
                }
                let moment = tot[0] / len as f64;
                if moment <= 0.0 {
                    return Ok((0.0, vec![0.0; d]));
                }
                let norm = moment.powf(1.0 / p);
                let lin: f64 = c.iter().zip(m.iter()).map(|(a, b)| a * b).sum();
                // dN/dc_j = N^{1-p} · mean(|f|^{p-2} Re(f̄ u_j))
                let scale = norm.powf(1.0 - p) / len as f64;
                let g = (0..d)
                    .map(|j| m[j] / norm - lin / (norm * norm) * scale * tot[j + 1])
                    .collect();
                Ok((lin / norm, g))
            }
        }
    }
}

fn project(c: &mut [f64]) {
    for v in c.iter_mut() {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    let n = c.iter().map(|v| v * v).sum::<f64>().sqrt();
    if n == 0.0 {
        c[0] = 1.0;
    } else {
        c.iter_mut().for_each(|v| *v /= n);
    }
}

const FD_STEP: f64 = 1e-5;
const STEP_MIN: f64 = 1e-10;

/// Projected gradient ascent with Barzilai–Borwein trial steps and Armijo
/// backtracking. Returns the final point, its objective value, and whether
/// the search stalled before any step (a nonzero gradient with no
/// acceptable step: a kink).
fn gradient_ascent(obj: &Search, start: Vec<f64>, max_iter: usize) -> Result<(Vec<f64>, f64, bool)> {
    let d = start.len();
    let mut x = start;
    project(&mut x);
    let (mut fx, mut g) = obj.value_grad(&x)?;
    let mut step: f64 = 0.5;
    let mut moved = false;
    let mut stalled = false;
    for _ in 0..max_iter {
        // The ratio is 0-homogeneous, so g is already tangent; drop the
        // components that would push a zero coordinate negative.
        for j in 0..d {
            if x[j] <= 0.0 && g[j] < 0.0 {
                g[j] = 0.0;
            }
        }
        if g.iter().map(|v| v * v).sum::<f64>().sqrt() < 1e-10 {
            break;
        }
        let mut accepted = None;
        let mut t = step;
        while t > STEP_MIN {
            let mut y: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a + t * b).collect();
            project(&mut y);
            let (fy, gy) = obj.trial(&y)?;
            let gain: f64 = y.iter().zip(&x).zip(&g).map(|((a, b), c)| (a - b) * c).sum();
            if fy > fx && fy >= fx + 1e-4 * gain.max(0.0) {
                accepted = Some((y, fy, gy));
                break;
            }
            t *= 0.5;
        }
        let Some((y, fy, gy)) = accepted else {
            stalled = !moved;
            break;
        };
        let gy = match gy {
            Some(g) => g,
            None => obj.value_grad(&y)?.1,
        };
        // BB step from the last displacement and gradient change
        let ss: f64 = y.iter().zip(&x).map(|(a, b)| (a - b) * (a - b)).sum();
        let sy: f64 = y.iter().zip(&x).zip(gy.iter().zip(&g)).map(|((a, b), (c, e))| (a - b) * (c - e)).sum();
        step = if sy < 0.0 { (ss / -sy).clamp(1e-6, 1e3) } else { (2.0 * t).min(1e3) };
        let progress = fy - fx;
        x = y;
        fx = fy;
        g = gy;
        moved = true;
        if progress <= 1e-14 * fx {
            break;
        }
    }
    Ok((x, fx, stalled))
}

/// Derivative-free fallback: Nelder–Mead on `x ↦ -ratio(|x| / ‖x‖)`.
fn nelder_mead(obj: &Search, start: &[f64], max_iter: usize) -> Result<(Vec<f64>, f64)> {
    let d = start.len();
    let f = |x: &[f64]| -> Result<f64> {
        let mut y = x.to_vec();
        y.iter_mut().for_each(|v| *v = v.abs());
        project(&mut y);
        Ok(-obj.value(&y)?)
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    simplex.push((start.to_vec(), f(start)?));
    for j in 0..d {
        let mut v = start.to_vec();
        v[j] += 0.1;
        let fv = f(&v)?;
        simplex.push((v, fv));
    }
    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if (simplex[d].1 - simplex[0].1).abs() < 1e-13 {
            break;
        }
        let centroid: Vec<f64> = (0..d)
            .map(|k| simplex[..d].iter().map(|(v, _)| v[k]).sum::<f64>() / d as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid.iter().zip(&simplex[d].0).map(|(c, w)| c + t * (c - w)).collect()
        };
        let xr = along(1.0);
        let fr = f(&xr)?;
        if fr < simplex[0].1 {
            let xe = along(2.0);
            let fe = f(&xe)?;
            simplex[d] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[d - 1].1 {
            simplex[d] = (xr, fr);
        } else {
            let xc = along(-0.5);
            let fc = f(&xc)?;
            if fc < simplex[d].1 {
                simplex[d] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for (v, fv) in simplex.iter_mut().skip(1) {
                    v.iter_mut().zip(&best).for_each(|(a, b)| *a = b + 0.5 * (*a - b));
                    *fv = f(v)?;
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut x = simplex[0].0.iter().map(|v| v.abs()).collect::<Vec<_>>();
    project(&mut x);
    Ok((x, -simplex[0].1))
}

/// Best ratio `|⟨f, φ⟩| / ‖f‖_p` over linear `f` in `d = φ.dim()` variables.
///
/// Restart 0 starts from the direction of `φ`, the others from ChaCha
/// streams `(seed, k)`. Ties go to the lowest restart index.
pub fn dual_norm_linear(phi: &LinearPolynomial, p: f64, restarts: usize, seed: u64) -> Result<DualNormResult> {
    dual_norm_linear_with(phi, p, restarts, seed, &Config::default())
}

pub fn dual_norm_linear_with(
    phi: &LinearPolynomial,
    p: f64,
    restarts: usize,
    seed: u64,
    cfg: &Config,
) -> Result<DualNormResult> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::Domain(format!("dual norm needs finite p >= 1, got {p}")));
    }
    if phi.is_trivial() {
        return Err(Error::Domain("dual norm of the zero function".into()));
    }
    let m = phi.moduli();
    let d = m.len();
    let norm = LinearNorm::from_config(cfg);
    let obj = Ratio { m: &m, p, norm: &norm };
    let l2 = phi.norm_l2();
    let lower_certificate = obj.certified(&m.iter().map(|v| v / l2).collect::<Vec<_>>())?;
    let upper_certificate = l2 / khintchine_constants(p)?.a;

    let search = if (2..=4).contains(&d) {
        let n = SEARCH_GRID[d];
        let roots = (0..n).map(|k| crate::fourier::grid::root_of_unity(k, n)).collect();
        Search::Grid { m: &m, p, n, roots }
    } else {
        Search::Accurate(&obj)
    };
    let restarts = restarts.max(1);
    let runs = par::map_chunks(restarts, 1, |range| -> Result<(Vec<f64>, f64)> {
        let k = range.start;
        let start: Vec<f64> = if k == 0 {
            m.clone()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            (0..d).map(|_| rng.gen::<f64>()).collect()
        };
        let (x, fx, stalled) = gradient_ascent(&search, start, cfg.dual_max_iter)?;
        if !stalled || d == 1 {
            return Ok((x, fx));
        }
        // No ascent step was possible: either a true critical point or a
        // kink; let the simplex method probe around it.
        let (y, fy) = nelder_mead(&search, &x, 50 * d * d)?;
        Ok(if fy > fx { (y, fy) } else { (x, fx) })
    });
    let mut best: Option<(Vec<f64>, f64)> = None;
    for r in runs {
        let r = r?;
        if best.as_ref().map_or(true, |b| r.1 > b.1) {
            best = Some(r);
        }
    }
    let (x, _) = best.expect("at least one restart");
    let found = obj.certified(&x)?;
    let (value, maximizer) = if found >= lower_certificate {
        (found, LinearPolynomial::from_real(&x))
    } else {
        (lower_certificate, LinearPolynomial::from_real(&m.iter().map(|v| v / l2).collect::<Vec<_>>()))
    };
    Ok(DualNormResult { value, maximizer, lower_certificate, upper_certificate })
}

/// `λ = ⟨f, φ_d⟩ = (c_1 + … + c_d)/√d` and the average of the `d` cyclic
/// shifts of `f`, which equals `λ φ_d`. Works on the moduli of `f`.
pub fn shift_average(f: &LinearPolynomial) -> (f64, LinearPolynomial) {
    let c = f.moduli();
    let d = c.len();
    if d == 0 {
        return (0.0, LinearPolynomial::default());
    }
    let lambda = c.iter().sum::<f64>() / (d as f64).sqrt();
    let mut avg = vec![0.0; d];
    for k in 0..d {
        for j in 0..d {
            avg[j] += c[(j + k) % d];
        }
    }
    avg.iter_mut().for_each(|v| *v /= d as f64);
    (lambda, LinearPolynomial::from_real(&avg))
}

/// `(measured, predicted)` for `φ_d`: the optimizer's dual norm against
/// `1/‖φ_d‖_p`, the latter from direct grid quadrature.
pub fn verify_dual_inverse(d: usize, p: f64) -> Result<(f64, f64)> {
    verify_dual_inverse_with(d, p, &Config::default())
}

pub fn verify_dual_inverse_with(d: usize, p: f64, cfg: &Config) -> Result<(f64, f64)> {
    if d == 0 || d > 4 {
        return Err(Error::Cost(format!("dual inverse check needs 1 <= d <= 4, got {d}")));
    }
    let phi = LinearPolynomial::symmetric(d);
    let measured = dual_norm_linear_with(&phi, p, cfg.dual_restarts, cfg.seed, cfg)?.value;
    let mut grid_cfg = cfg.clone();
    grid_cfg.grid_max_points = grid_cfg.grid_max_points.min(1 << 22);
    let predicted = 1.0 / grid_norm(&phi.to_series(), p, cfg.grid_start_n.max(4), &grid_cfg)?.value;
    Ok((measured, predicted))
}

/// `‖f‖_{(H^∞)^*} = max_j |c_j|` for linear `f`.
pub fn sup_norm_dual_linear(f: &LinearPolynomial) -> f64 {
    f.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PointEvaluation {
    pub dual_norm: f64,
    pub hp_norm: f64,
    pub dual_expansion_error: f64,
    pub hp_expansion_error: f64,
}

/// Norms attached to evaluation at `w = ε` on the disc: the dual norm
/// `(1 − ε²)^{-1/r}` of the functional and `‖(1 − εz)^{-p/2}‖₂^{2/p}` of its
/// extremal function, each compared with its quadratic expansion.
pub fn point_evaluation_check(eps: f64, r: f64, p: f64) -> Result<PointEvaluation> {
    if !(0.0..0.5).contains(&eps) {
        return Err(Error::Domain(format!("eps must lie in [0, 1/2), got {eps}")));
    }
    if !(r >= 1.0) || !(p >= 1.0) || !p.is_finite() || !r.is_finite() {
        return Err(Error::Domain(format!("need finite r, p >= 1, got r = {r}, p = {p}")));
    }
    let dual_norm = (1.0 - eps * eps).powf(-1.0 / r);
    // (1 − εz)^{-s} = Σ (s)_n/n! εⁿ zⁿ with s = p/2
    let s = 0.5 * p;
    let (mut a, mut sum) = (1.0f64, 1.0f64);
    let mut n = 0.0;
    loop {
        a *= (s + n) / (n + 1.0) * eps;
        n += 1.0;
        sum += a * a;
        if a * a < 1e-16 * sum || n > 10_000.0 {
            break;
        }
    }
    let hp_norm = sum.powf(1.0 / p);
    Ok(PointEvaluation {
        dual_norm,
        hp_norm,
        dual_expansion_error: (dual_norm - (1.0 + eps * eps / r)).abs(),
        hp_expansion_error: (hp_norm - (1.0 + eps * eps * p / 4.0)).abs(),
    })
}
