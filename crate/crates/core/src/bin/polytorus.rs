use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use polytorus::certify::{amplification_demo, certify_unbounded, critical_table, Status};
use polytorus::duality::{dual_norm_linear_with, sup_norm_dual_linear};
use polytorus::lift::{build_lift, minimal_norm_identity, verify_projection};
use polytorus::norms::{
    bessel_norm, grid_norm, monte_carlo_norm, multinomial_norm, two_term_norm, LinearNorm, Method, NormEstimate,
};
use polytorus::special::{
    critical_curve, khintchine_constants, legacy_curve, ln_gamma, solve_critical_p, MARZO_SEIP_BOUND,
};
use polytorus::{Config, Exponent, FourierSeries, LinearPolynomial};

/// Numerical checks around the Riesz projection on the polytorus.
#[derive(Parser)]
#[command(name = "polytorus", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Global {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Flat key=value configuration file.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Critical exponent and Khintchine constants.
    Constants {
        /// Exponents for the Khintchine table.
        #[arg(long, value_delimiter = ',', default_values_t = vec![1.0, 1.5, 3.0, 4.0])]
        p: Vec<f64>,
    },
    /// The critical curve p(q), sampled uniformly in 1/q.
    Curve {
        #[arg(long, default_value = "2")]
        qmin: Exponent,
        #[arg(long, default_value = "inf")]
        qmax: Exponent,
        #[arg(long, default_value_t = 16)]
        steps: usize,
    },
    /// L^p norm of a linear polynomial or of a series file.
    Norm {
        /// Linear coefficients, e.g. "1,0.5" or "1+2i,-i".
        #[arg(long, required_unless_present = "series_file")]
        coeffs: Option<String>,
        /// Series JSON ({"dim":..,"terms":[..]}); normed on grids.
        #[arg(long, conflicts_with = "coeffs")]
        series_file: Option<PathBuf>,
        #[arg(long)]
        p: Exponent,
        /// auto, multinomial, montecarlo, bessel, reduction1d or grid.
        #[arg(long, default_value = "auto")]
        method: String,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Dual norm of a linear symbol against H^p.
    Dual {
        #[arg(long)]
        coeffs: String,
        #[arg(long)]
        p: Exponent,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Minimal L^q preimage of z_1 + ... + z_d under the Riesz projection.
    Lift {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: Exponent,
        #[arg(long = "grid-n")]
        grid_n: Option<usize>,
        #[arg(long)]
        max_deg: Option<usize>,
        /// Include the extracted coefficient table.
        #[arg(long)]
        emit_coeffs: bool,
    },
    /// Certify unboundedness of the projection from L^q to L^p.
    Certify {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: Exponent,
        #[arg(long, default_value_t = 12)]
        dmax: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Critical-exponent table for a list of q.
    Table {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,6,10,inf")]
        q_list: Vec<Exponent>,
    },
    /// Amplification ratio of a series and of its tensor double.
    Amplify {
        #[arg(long)]
        series_file: PathBuf,
        #[arg(long)]
        p: Exponent,
        #[arg(long)]
        q: Exponent,
        #[arg(long = "grid-n", default_value_t = 32)]
        grid_n: usize,
    },
}

#[derive(Clone, Copy, PartialEq)]
enum Format {
    Text,
    Json,
    Csv,
}

struct Output {
    json: Value,
    csv: String,
    text: String,
    code: u8,
}

impl Output {
    fn new(json: Value, csv: String, text: String) -> Self {
        Output { json, csv, text, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => ExitCode::from(out),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let mut cfg = match &cli.global.config {
        Some(path) => Config::from_file(path)?,
        None => Config::default(),
    };
    if let Ok(v) = std::env::var("POLYTORUS_THREADS") {
        cfg.threads = Some(v.trim().parse().context("POLYTORUS_THREADS must be a positive integer")?);
    }
    init_threads(cfg.threads)?;
    let format = if cli.global.json {
        Format::Json
    } else if cli.global.csv {
        Format::Csv
    } else {
        Format::Text
    };
    let out = match cli.cmd {
        Command::Constants { p } => constants(&p)?,
        Command::Curve { qmin, qmax, steps } => curve(qmin, qmax, steps)?,
        Command::Norm { coeffs, series_file, p, method, seed } => {
            norm(coeffs, series_file, p, &method, seed.unwrap_or(cfg.seed), &cfg)?
        }
        Command::Dual { coeffs, p, restarts, seed } => dual(
            &coeffs,
            p,
            restarts.unwrap_or(cfg.dual_restarts),
            seed.unwrap_or(cfg.seed),
            &cfg,
        )?,
        Command::Lift { d, q, grid_n, max_deg, emit_coeffs } => lift(
            d,
            q,
            grid_n.unwrap_or(cfg.lift_n(d)),
            max_deg.unwrap_or(cfg.lift_max_deg),
            emit_coeffs,
        )?,
        Command::Certify { p, q, dmax, seed } => certify(p, q, dmax, seed.unwrap_or(cfg.seed), &cfg)?,
        Command::Table { q_list } => table(&q_list)?,
        Command::Amplify { series_file, p, q, grid_n } => amplify(&series_file, p, q, grid_n)?,
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out.json)?),
        Format::Csv => print!("{}", out.csv),
        Format::Text => print!("{}", out.text),
    }
    Ok(out.code)
}

#[cfg(feature = "parallel")]
fn init_threads(threads: Option<usize>) -> Result<()> {
    if let Some(n) = threads {
        if n == 0 {
            bail!("thread count must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn init_threads(_: Option<usize>) -> Result<()> {
    Ok(())
}

fn constants(ps: &[f64]) -> Result<Output> {
    let p_star = solve_critical_p()?;
    let residual = ln_gamma(1.0 + 0.5 * p_star) / p_star - (2.0 / std::f64::consts::PI.sqrt()).ln();
    let mut rows = Vec::new();
    let mut csv = String::from("p,a_p,b_p\n");
    let mut text = format!(
        "critical p (q = inf)  {p_star:.12}\nresidual              {residual:.3e}\nMarzo-Seip bound      {MARZO_SEIP_BOUND}\n\n   p        a_p          b_p\n"
    );
    for &p in ps {
        let k = khintchine_constants(p)?;
        rows.push(json!({"p": p, "a_p": k.a, "b_p": k.b}));
        writeln!(csv, "{p},{},{}", k.a, k.b)?;
        writeln!(text, "{p:>5}  {:.10}  {:.10}", k.a, k.b)?;
    }
    let json = json!({
        "critical_p": p_star,
        "residual": residual,
        "marzo_seip_bound": MARZO_SEIP_BOUND,
        "khintchine": rows,
    });
    Ok(Output::new(json, csv, text))
}

fn curve(qmin: Exponent, qmax: Exponent, steps: usize) -> Result<Output> {
    if steps == 0 {
        bail!("steps must be positive");
    }
    let (a, b) = (qmin.reciprocal(), qmax.reciprocal());
    if !(a <= 0.5 && b <= a) {
        bail!("need 2 <= qmin <= qmax");
    }
    let mut rows = Vec::new();
    let mut csv = String::from("q,critical_p,legacy_p\n");
    let mut text = String::from("        q    critical_p      legacy_p\n");
    for k in 0..=steps {
        let inv = a + (b - a) * k as f64 / steps as f64;
        let q = if inv == 0.0 { Exponent::Infinite } else { Exponent::Finite(1.0 / inv) };
        let (p3, pl) = (critical_curve(q)?, legacy_curve(q)?);
        rows.push(json!({"q": q.to_string(), "critical_p": p3, "legacy_p": pl}));
        writeln!(csv, "{q},{p3},{pl}")?;
        writeln!(text, "{:>9}  {p3:>12.8}  {pl:>12.8}", fmt_exp(q))?;
    }
    Ok(Output::new(Value::Array(rows), csv, text))
}

fn fmt_exp(e: Exponent) -> String {
    match e {
        Exponent::Infinite => "inf".into(),
        Exponent::Finite(v) => format!("{v:.4}"),
    }
}

fn finite(p: Exponent, what: &str) -> Result<f64> {
    p.finite().with_context(|| format!("{what} must be finite here"))
}

fn estimate_output(e: &NormEstimate) -> Result<Output> {
    let json = serde_json::to_value(e)?;
    let method = serde_json::to_value(e.method)?;
    let method = method.as_str().unwrap_or_default();
    let csv = format!(
        "value,method,error_bound,samples,std_error\n{},{method},{},{},{}\n",
        e.value, e.error_bound, e.samples, e.std_error
    );
    let mut text = format!("{:.12}  ± {:.2e}  ({method}", e.value, e.error_bound);
    if e.samples > 0 {
        write!(text, ", {} samples", e.samples)?;
    }
    text.push_str(if e.converged { ")\n" } else { ", not converged)\n" });
    Ok(Output::new(json, csv, text))
}

fn read_series(path: &PathBuf) -> Result<FourierSeries> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(FourierSeries::from_json_str(&text)?)
}

fn norm(
    coeffs: Option<String>,
    series_file: Option<PathBuf>,
    p: Exponent,
    method: &str,
    seed: u64,
    cfg: &Config,
) -> Result<Output> {
    if let Some(path) = series_file {
        let f = read_series(&path)?;
        let e = match p {
            Exponent::Infinite => {
                let n = (2 * f.max_abs_exponent() as usize + 1).max(cfg.grid_start_n) * 8;
                let v = polytorus::norms::grid_norm_at(&f, p, n)?;
                NormEstimate { value: v, method: Method::Grid, error_bound: f64::INFINITY, samples: 0, std_error: 0.0, converged: false }
            }
            Exponent::Finite(pv) => {
                let n = (2 * f.max_abs_exponent() as usize + 1).max(cfg.grid_start_n).max(4);
                grid_norm(&f, pv, n, cfg)?
            }
        };
        return estimate_output(&e);
    }
    let f = LinearPolynomial::parse(coeffs.as_deref().unwrap_or_default())?;
    let e = match p {
        Exponent::Infinite => NormEstimate::exact(f.norm_sup(), Method::Multinomial, 0),
        Exponent::Finite(pv) => {
            let method = method.to_ascii_lowercase();
            if method == "auto" {
                LinearNorm::from_config(cfg).norm(&f, pv)?
            } else {
                match method.parse::<Method>()? {
                    Method::Multinomial => multinomial_norm(&f, pv)?,
                    Method::Montecarlo => monte_carlo_norm(&f, pv, cfg.mc_samples, seed, cfg.mc_confidence)?,
                    Method::Bessel => bessel_norm(&f, pv, cfg.bessel_tol)?,
                    Method::Reduction1d => {
                        if f.dim() != 2 {
                            bail!("reduction1d needs exactly two coefficients");
                        }
                        two_term_norm(f.coeffs[0], f.coeffs[1], pv, cfg.quad_tol)?
                    }
                    Method::Grid => grid_norm(&f.to_series(), pv, cfg.grid_start_n.max(4), cfg)?,
                    Method::CltLimit => bail!("clt is a limit, not a norm of a given polynomial"),
                }
            }
        }
    };
    estimate_output(&e)
}

fn dual(coeffs: &str, p: Exponent, restarts: usize, seed: u64, cfg: &Config) -> Result<Output> {
    let f = LinearPolynomial::parse(coeffs)?;
    if p.is_infinite() {
        let v = sup_norm_dual_linear(&f);
        let json = json!({"value": v, "lower_certificate": v, "upper_certificate": v});
        return Ok(Output::new(json, format!("value\n{v}\n"), format!("{v:.12}  (exact, H^inf)\n")));
    }
    let r = dual_norm_linear_with(&f, finite(p, "p")?, restarts, seed, cfg)?;
    let json = serde_json::to_value(&r)?;
    let moduli: Vec<String> = r.maximizer.coeffs.iter().map(|c| format!("{:.8}", c.re)).collect();
    let csv = format!(
        "value,lower_certificate,upper_certificate,maximizer\n{},{},{},\"{}\"\n",
        r.value,
        r.lower_certificate,
        r.upper_certificate,
        moduli.join(",")
    );
    let text = format!(
        "dual norm   >= {:.10}\nat f        = ({})\ncertificates   [{:.10}, {:.10}]\n",
        r.value,
        moduli.join(", "),
        r.lower_certificate,
        r.upper_certificate
    );
    Ok(Output::new(json, csv, text))
}

fn lift(d: usize, q: Exponent, n: usize, max_deg: usize, emit_coeffs: bool) -> Result<Output> {
    let l = build_lift(d, q, n)?;
    let report = verify_projection(&l, max_deg)?;
    let (lhs, rhs) = minimal_norm_identity(&l)?;
    let mut json = json!({
        "d": d,
        "q": q.to_string(),
        "p": l.p,
        "grid_n": n,
        "C": l.normalizer,
        "norm_lhs": lhs,
        "norm_rhs": rhs,
        "max_violation": report.max_violation,
        "worst_alpha": report.worst_alpha,
        "tolerance": report.tol,
        "passed": report.passed(),
        "dominant_non_analytic": report.dominant_non_analytic,
    });
    if emit_coeffs {
        json["coefficient_table"] = serde_json::to_value(&report.coefficients)?;
    }
    let mut csv = String::from("alpha,re,im\n");
    for t in report.coefficients.to_json().terms {
        let a: Vec<String> = t.alpha.iter().map(|v| v.to_string()).collect();
        writeln!(csv, "\"{}\",{},{}", a.join(","), t.re, t.im)?;
    }
    let mut text = format!(
        "d = {d}, q = {q}, p = {:.6}, N = {n}\nC              {:.12}\n||psi||_q      {lhs:.12}\nd/||phi||_p    {rhs:.12}\nmax violation  {:.3e} at {:?} (tol {:.0e}) {}\n",
        l.p,
        l.normalizer,
        report.max_violation,
        report.worst_alpha,
        report.tol,
        if report.passed() { "ok" } else { "FAILED" }
    );
    if emit_coeffs {
        text.push('\n');
        for t in report.coefficients.to_json().terms {
            writeln!(text, "{:?}  {:+.12} {:+.12}i", t.alpha, t.re, t.im)?;
        }
    }
    let mut out = Output::new(json, csv, text);
    if !report.passed() {
        out.code = 1;
    }
    Ok(out)
}

fn certify(p: f64, q: Exponent, dmax: usize, seed: u64, cfg: &Config) -> Result<Output> {
    let o = certify_unbounded(p, q, dmax, seed, cfg)?;
    let json = serde_json::to_value(&o)?;
    let mut csv = String::from("d,norm_p,norm_r,product,product_lower_bound,consistent\n");
    for e in &o.scan {
        writeln!(
            csv,
            "{},{},{},{},{},{}",
            e.d,
            e.norm_p.estimate.value,
            e.norm_r.estimate.value,
            e.product,
            e.product_lower_bound,
            e.norm_p.consistent && e.norm_r.consistent
        )?;
    }
    let mut text = format!("p = {p}, q = {q}\nlimit product  {:.10}\n", o.clt_product);
    for e in &o.scan {
        writeln!(text, "d = {:>2}  product {:.10}  lower bound {:.10}", e.d, e.product, e.product_lower_bound)?;
    }
    match (&o.status, &o.certificate) {
        (Status::Certified, Some(c)) => writeln!(
            text,
            "certified unbounded at d = {} (product >= {:.10}, margin {:.3e})",
            c.d, c.product_lower_bound, c.margin
        )?,
        (Status::Unsatisfied, _) => writeln!(text, "condition not satisfied: limit product <= 1")?,
        _ => writeln!(text, "inconclusive up to d = {dmax} (best margin {:.3e} at d = {})", o.best_margin, o.best_d)?,
    }
    let mut out = Output::new(json, csv, text);
    out.code = o.status.exit_code() as u8;
    Ok(out)
}

fn table(qs: &[Exponent]) -> Result<Output> {
    let rows = critical_table(qs)?;
    let json = serde_json::to_value(&rows)?;
    let csv = polytorus::certify::emit_critical_table(qs)?;
    let mut text = String::from("       q    theorem3_p      legacy_p   marzo_seip\n");
    for r in &rows {
        let ms = r.marzo_seip_reference.map(|v| format!("{v}")).unwrap_or_else(|| "-".into());
        writeln!(text, "{:>8}  {:>12.8}  {:>12.8}   {ms}", r.q, r.theorem3_p, r.legacy_p)?;
    }
    Ok(Output::new(json, csv, text))
}

fn amplify(path: &PathBuf, p: Exponent, q: Exponent, n: usize) -> Result<Output> {
    let f = read_series(path)?;
    let (r, r2) = amplification_demo(&f, p, q, n)?;
    let json = json!({"ratio": r, "ratio_doubled": r2, "squaring_defect": r2 - r * r});
    let csv = format!("ratio,ratio_doubled\n{r},{r2}\n");
    let text = format!("ratio          {r:.12}\nratio doubled  {r2:.12}\nratio^2        {:.12}\n", r * r);
    Ok(Output::new(json, csv, text))
}
