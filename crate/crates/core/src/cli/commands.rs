use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::output::{manifest_path, write_json, write_text, RunManifest, Table};
use crate::analytic::{
    complexity, finite_n_real_density_d1, global_density_real, lemma_rhs_log,
    mean_fixed_points_asymptotic_log, mean_fixed_points_exact_1_1, Regime,
};
use crate::ensemble::{
    estimate_abs_det_expectation, estimate_real_density_at, ks_radial_test, spectral_histogram,
    McConfig, Part,
};
use crate::fieldsim::{
    default_dx, estimate_composed_mean_count, estimate_field_mean_count, fixed_point_abscissas,
    sample_field_1d, KernelSpec,
};
use crate::{Error, ModelSpec, Result};

// Seed offset separating the right-hand-side samples of the lemma check
// from the left-hand side.
const LEMMA_RHS_SEED_OFFSET: u64 = 0x632b_e59b_d9b4_e019;

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub manifest: RunManifest,
    /// Verdict of a verification command.
    pub pass: Option<bool>,
}

fn manifest<P: Serialize>(
    name: &str,
    params: &P,
    seed: u64,
    n_samples: usize,
    workers: usize,
    start: Instant,
    summary: Option<serde_json::Value>,
) -> Result<RunManifest> {
    Ok(RunManifest {
        subcommand: name.to_string(),
        params: serde_json::to_value(params)?,
        seed,
        n_samples,
        workers,
        version: env!("CARGO_PKG_VERSION").to_string(),
        duration_seconds: start.elapsed().as_secs_f64(),
        summary,
    })
}

fn write_csv_output(out: &Path, table: &Table, manifest: RunManifest) -> Result<Outcome> {
    write_text(out, &table.to_csv())?;
    write_json(&manifest_path(out), &serde_json::to_value(&manifest)?)?;
    Ok(Outcome { manifest, pass: None })
}

fn write_json_output<I: Serialize>(
    out: &Path,
    manifest: RunManifest,
    inputs: &I,
    results: serde_json::Value,
    pass: bool,
) -> Result<Outcome> {
    let doc = json!({
        "manifest": manifest,
        "inputs": inputs,
        "results": results,
        "pass": pass,
    });
    write_json(out, &doc)?;
    Ok(Outcome { manifest, pass: Some(pass) })
}

fn layer_sigmas(depth: usize, sigmas: &[f64]) -> Result<Vec<f64>> {
    match sigmas.len() {
        0 => Ok(vec![1.0; depth]),
        1 => Ok(vec![sigmas[0]; depth]),
        n if n == depth => Ok(sigmas.to_vec()),
        n => Err(Error::InvalidParameter(format!("got {n} sigmas for depth {depth}"))),
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("sigma-hat grid is empty".into()));
    }
    if let Some(s) = grid.iter().find(|s| !(**s > 0.0) || !s.is_finite()) {
        return Err(Error::InvalidParameter(format!("sigma-hat values must be positive, got {s}")));
    }
    Ok(())
}

/// `ND(log σ̂ + ½(1/σ̂² − 1))` without the threshold cut.
fn leading_exponent(n: usize, depth: usize, sigma_hat: f64) -> f64 {
    (n * depth) as f64 * (sigma_hat.ln() + 0.5 * (1.0 / (sigma_hat * sigma_hat) - 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetCurveArgs {
    pub depth: usize,
    pub dim: usize,
    pub nus: Vec<usize>,
    pub sigma_hats: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
}

/// `(1/N) log E|det(J_1⋯J_D − I)|` by Monte Carlo against the large-N
/// prediction over a grid of `σ̂`.
///
/// Columns: `sigma_hat, mc_log_mean_over_n, mc_rel_stderr,
/// analytic_log_over_n, complexity, near_critical`.
pub fn cmd_det_curve(args: &DetCurveArgs, out: &Path) -> Result<Outcome> {
    let start = Instant::now();
    check_grid(&args.sigma_hats)?;
    let mc = McConfig::new(args.samples, args.seed, args.workers);
    let mut table = Table::new(&[
        "sigma_hat",
        "mc_log_mean_over_n",
        "mc_rel_stderr",
        "analytic_log_over_n",
        "complexity",
        "near_critical",
    ]);
    let n = args.dim as f64;
    for &s in &args.sigma_hats {
        let spec = ModelSpec::from_sigma_hat(args.dim, args.nus.clone(), s)?;
        let est = estimate_abs_det_expectation(&spec, &mc)?;
        let pred = mean_fixed_points_asymptotic_log(&spec);
        table.push(vec![
            s.into(),
            (est.log_mean / n).into(),
            est.rel_stderr.into(),
            (pred.log_value / n).into(),
            complexity(s, args.depth)?.into(),
            pred.near_critical.into(),
        ]);
    }
    let m = manifest("det-curve", args, args.seed, args.samples, args.workers, start, None)?;
    write_csv_output(out, &table, m)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubleadingArgs {
    pub dim: usize,
    pub nu_grid: Vec<usize>,
    pub sigma_hats: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
}

/// Two layers: `log E − ND(log σ̂ + ½(1/σ̂² − 1))` against
/// `½ log 2 + ν log σ̂`.
///
/// Columns: `nu, sigma_hat, mc_log_mean, mc_rel_stderr, mc_subleading,
/// predicted_subleading, z_score, applicable`. Rows below or near the
/// threshold have `applicable = 0` and no z-score.
pub fn cmd_subleading(args: &SubleadingArgs, out: &Path) -> Result<Outcome> {
    let start = Instant::now();
    check_grid(&args.sigma_hats)?;
    if args.nu_grid.is_empty() {
        return Err(Error::InvalidParameter("nu grid is empty".into()));
    }
    let mc = McConfig::new(args.samples, args.seed, args.workers);
    let mut table = Table::new(&[
        "nu",
        "sigma_hat",
        "mc_log_mean",
        "mc_rel_stderr",
        "mc_subleading",
        "predicted_subleading",
        "z_score",
        "applicable",
    ]);
    for &nu in &args.nu_grid {
        for &s in &args.sigma_hats {
            let spec = ModelSpec::from_sigma_hat(args.dim, vec![nu], s)?;
            let est = estimate_abs_det_expectation(&spec, &mc)?;
            let pred = mean_fixed_points_asymptotic_log(&spec);
            let applicable = pred.regime == Regime::AboveThreshold && !pred.near_critical;
            let sub = est.log_mean - leading_exponent(args.dim, 2, s);
            let predicted = 0.5 * std::f64::consts::LN_2 + nu as f64 * s.ln();
            let z = applicable.then(|| (sub - predicted) / est.rel_stderr);
            table.push(vec![
                nu.into(),
                s.into(),
                est.log_mean.into(),
                est.rel_stderr.into(),
                sub.into(),
                predicted.into(),
                z.into(),
                applicable.into(),
            ]);
        }
    }
    let m = manifest("subleading", args, args.seed, args.samples, args.workers, start, None)?;
    write_csv_output(out, &table, m)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityArgs {
    pub part: Part,
    pub depth: usize,
    pub dim: usize,
    pub nus: Vec<usize>,
    pub sigmas: Vec<f64>,
    pub scaled: bool,
    pub bins: usize,
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
}

/// Per-matrix eigenvalue intensity with limiting-law overlays.
///
/// Columns: `bin_lo, bin_hi, center, count, intensity, intensity_stderr,
/// global_scaled, global_overlay, finite_n_overlay`. `global_scaled` is the
/// intensity divided by `√N` (real) or `N` (modulus) and is comparable to
/// `global_overlay`; `finite_n_overlay` is the exact one-layer real density
/// in intensity units. For the complex modulus the KS comparison with the
/// radial law goes to the manifest summary.
pub fn cmd_density(args: &DensityArgs, out: &Path) -> Result<Outcome> {
    let start = Instant::now();
    let spec = ModelSpec::new(args.dim, args.nus.clone(), layer_sigmas(args.depth, &args.sigmas)?)?;
    let mc = McConfig::new(args.samples, args.seed, args.workers);
    let d = args.depth as f64;
    let n = args.dim as f64;
    let spread = (d * spec.log_sigma_bar() + 0.5 * d * n.ln()).exp();
    let half = if args.scaled { 1.5 } else { 1.5 * spread * (3.0 / n.sqrt()).max(1.0) };
    let range = match args.part {
        Part::Real => (-half, half),
        Part::ComplexModulus => (0.0, half),
    };
    let hist = spectral_histogram(&spec, args.part, args.scaled, args.bins, range, &mc)?;
    let global = hist.global_scaled();
    let stderr = hist.poisson_stderr();
    let mut table = Table::new(&[
        "bin_lo",
        "bin_hi",
        "center",
        "count",
        "intensity",
        "intensity_stderr",
        "global_scaled",
        "global_overlay",
        "finite_n_overlay",
    ]);
    let unit = if args.scaled { spread } else { 1.0 };
    for (b, c) in hist.centers().into_iter().enumerate() {
        let overlay = if args.scaled {
            match args.part {
                Part::Real => Some(global_density_real(c, args.depth)?),
                Part::ComplexModulus => {
                    Some(if c < 1.0 { 2.0 / d * c.powf(2.0 / d - 1.0) } else { 0.0 })
                }
            }
        } else {
            None
        };
        let finite = if args.depth == 1 && args.dim >= 2 && args.part == Part::Real {
            let s = spec.sigmas()[0];
            Some(finite_n_real_density_d1(args.dim - 1, c * unit / s)? * unit / s)
        } else {
            None
        };
        table.push(vec![
            hist.edges[b].into(),
            hist.edges[b + 1].into(),
            c.into(),
            (hist.raw_counts[b] as usize).into(),
            hist.counts[b].into(),
            stderr[b].into(),
            args.scaled.then_some(global[b]).into(),
            overlay.into(),
            finite.into(),
        ]);
    }
    let summary = if args.part == Part::ComplexModulus {
        let ks = ks_radial_test(&spec, &mc)?;
        Some(json!({ "ks": ks, "n_matrices": hist.n_matrices }))
    } else {
        Some(json!({ "n_matrices": hist.n_matrices, "mean_count_in_range": hist.integral() }))
    };
    let m = manifest("density", args, args.seed, args.samples, args.workers, start, summary)?;
    write_csv_output(out, &table, m)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyTheoremArgs {
    /// One value for a single layer, two for `f₁ ∘ f₂`.
    pub sigmas: Vec<f64>,
    pub fields: usize,
    pub matrix_samples: usize,
    pub half_width: f64,
    pub dx: Option<f64>,
    pub seed: u64,
    pub workers: usize,
}

fn within(a: (f64, f64), b: (f64, f64), k: f64) -> bool {
    (a.0 - b.0).abs() <= k * (a.1 * a.1 + b.1 * b.1).sqrt()
}

/// Mean fixed-point count of one-dimensional fields against
/// `E|det(J_1⋯J_D − 1)|` for `1×1` matrices, and the exact value for one
/// layer. Pass when every available pair agrees within 3 combined standard
/// errors.
pub fn cmd_verify_theorem(args: &VerifyTheoremArgs, out: &Path) -> Result<Outcome> {
    let start = Instant::now();
    let depth = args.sigmas.len();
    if !(1..=2).contains(&depth) {
        return Err(Error::InvalidParameter("verify-theorem takes one or two sigmas".into()));
    }
    let dx = match args.dx {
        Some(dx) => dx,
        None => args.sigmas.iter().map(|&s| default_dx(s)).fold(f64::INFINITY, f64::min),
    };
    let fmc = McConfig::new(args.fields, args.seed, args.workers);
    let field = if depth == 1 {
        let kernel = KernelSpec::squared_exponential(args.sigmas[0])?;
        estimate_field_mean_count(kernel, args.half_width, dx, &fmc)?
    } else {
        estimate_composed_mean_count(args.sigmas[0], args.sigmas[1], args.half_width, dx, &fmc)?
    };
    let spec = ModelSpec::new(1, vec![0; depth - 1], args.sigmas.clone())?;
    let mmc = McConfig::new(args.matrix_samples, args.seed, args.workers);
    let det = estimate_abs_det_expectation(&spec, &mmc)?;
    let matrix_mean = det.log_mean.exp();
    let matrix = (matrix_mean, matrix_mean * det.rel_stderr);
    let f = (field.mean, field.stderr);
    let exact = if depth == 1 { Some(mean_fixed_points_exact_1_1(args.sigmas[0])?) } else { None };
    let mut pass = within(f, matrix, 3.0);
    if let Some(e) = exact {
        pass &= within(f, (e, 0.0), 3.0) && within(matrix, (e, 0.0), 3.0);
    }
    let results = json!({
        "field": { "mean": field.mean, "stderr": field.stderr, "n": field.n_fields, "dx": dx,
                   "distribution": field.distribution },
        "matrix": { "mean": matrix.0, "stderr": matrix.1, "n": args.matrix_samples },
        "analytic": exact,
    });
    let m = manifest("verify-theorem", args, args.seed, args.fields, args.workers, start, None)?;
    write_json_output(out, m, args, results, pass)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyLemmaArgs {
    pub depth: usize,
    pub dim: usize,
    pub nus: Vec<usize>,
    pub sigmas: Vec<f64>,
    /// Default `0.05/σ̄^D`.
    pub bandwidth: Option<f64>,
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
}

/// Default kernel half-width for the density at `1/σ̄^D`: `0.05/σ̄^D`.
pub fn lemma_bandwidth(spec: &ModelSpec) -> f64 {
    0.05 * (-(spec.depth() as f64) * spec.log_sigma_bar()).exp()
}

/// `E|det(J_1⋯J_D − I_N)|` against the real density of the unit-variance
/// `(N+1)`-dimensional product at `1/σ̄^D`, both by Monte Carlo. The
/// right-hand side uses an independent seed. Pass when the log values
/// agree within 3 combined relative standard errors plus the relative
/// smoothing-bias estimate.
pub fn cmd_verify_lemma(args: &VerifyLemmaArgs, out: &Path) -> Result<Outcome> {
    let start = Instant::now();
    if !(1..=2).contains(&args.depth) {
        return Err(Error::InvalidParameter("verify-lemma needs depth 1 or 2".into()));
    }
    let spec = ModelSpec::new(args.dim, args.nus.clone(), layer_sigmas(args.depth, &args.sigmas)?)?;
    let lhs = estimate_abs_det_expectation(&spec, &McConfig::new(args.samples, args.seed, args.workers))?;
    let point = (-(args.depth as f64) * spec.log_sigma_bar()).exp();
    let h = args.bandwidth.unwrap_or_else(|| lemma_bandwidth(&spec));
    let big = spec.standardized().with_base_dim(args.dim + 1)?;
    let rhs_mc = McConfig::new(args.samples, args.seed.wrapping_add(LEMMA_RHS_SEED_OFFSET), args.workers);
    let dens = estimate_real_density_at(&big, point, h, &rhs_mc)?;
    let rhs_log = lemma_rhs_log(&spec, dens.density)?;
    let rhs_rel = dens.stderr / dens.density;
    let bias_rel = dens.bias.abs() / dens.density;
    let diff = lhs.log_mean - rhs_log;
    let tol = 3.0 * (lhs.rel_stderr.powi(2) + rhs_rel.powi(2)).sqrt() + bias_rel;
    let pass = diff.abs() <= tol;
    let results = json!({
        "lhs": { "log_value": lhs.log_mean, "value": lhs.log_mean.exp(), "rel_stderr": lhs.rel_stderr },
        "rhs": { "log_value": rhs_log, "value": rhs_log.exp(), "rel_stderr": rhs_rel,
                 "density": dens.density, "density_stderr": dens.stderr,
                 "density_bias": dens.bias, "bandwidth": h, "point": point },
        "log_difference": diff,
        "tolerance": tol,
    });
    let m = manifest("verify-lemma", args, args.seed, args.samples, args.workers, start, None)?;
    write_json_output(out, m, args, results, pass)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldGalleryArgs {
    pub sigmas: Vec<f64>,
    pub half_width: f64,
    pub dx: Option<f64>,
    pub seed: u64,
}

/// One sampled path per `σ` with the diagonal.
///
/// Columns: `sigma, x, f, diagonal, fixed_point`. `fixed_point` holds the
/// interpolated abscissa of a counted fixed point on the row whose cell
/// `[x_i, x_{i+1})` contains it, and is empty otherwise.
pub fn cmd_field_gallery(args: &FieldGalleryArgs, out: &Path) -> Result<Outcome> {
    let start = Instant::now();
    if args.sigmas.is_empty() {
        return Err(Error::InvalidParameter("need at least one sigma".into()));
    }
    let mut table = Table::new(&["sigma", "x", "f", "diagonal", "fixed_point"]);
    let mut counts = Vec::new();
    for &s in &args.sigmas {
        let dx = args.dx.unwrap_or_else(|| default_dx(s));
        let grid = sample_field_1d(KernelSpec::squared_exponential(s)?, args.half_width, dx, args.seed)?;
        let roots = fixed_point_abscissas(&grid);
        counts.push(json!({ "sigma": s, "fixed_points": roots.len(), "abscissas": roots }));
        let x = &grid.points;
        for i in 0..x.len() {
            let upper = x.get(i + 1).copied().unwrap_or(f64::INFINITY);
            let marker = roots.iter().copied().find(|&r| r >= x[i] && r < upper);
            table.push(vec![s.into(), x[i].into(), grid.values[i].into(), x[i].into(), marker.into()]);
        }
    }
    let summary = Some(json!({ "paths": counts }));
    let m = manifest("field-gallery", args, args.seed, args.sigmas.len(), 1, start, summary)?;
    write_csv_output(out, &table, m)
}

/// Re-runs the command recorded in a manifest, writing to `out`.
pub fn replay(manifest: &RunManifest, out: &Path) -> Result<Outcome> {
    let p = manifest.params.clone();
    match manifest.subcommand.as_str() {
        "det-curve" => cmd_det_curve(&serde_json::from_value(p)?, out),
        "subleading" => cmd_subleading(&serde_json::from_value(p)?, out),
        "density" => cmd_density(&serde_json::from_value(p)?, out),
        "verify-theorem" => cmd_verify_theorem(&serde_json::from_value(p)?, out),
        "verify-lemma" => cmd_verify_lemma(&serde_json::from_value(p)?, out),
        "field-gallery" => cmd_field_gallery(&serde_json::from_value(p)?, out),
        other => Err(Error::InvalidParameter(format!("unknown subcommand {other:?} in manifest"))),
    }
}
