//! wasm-bindgen surface for the browser demo: density curves, the mean/median
//! efficiency curve, and a seeded sample-and-refit experiment.
//!
//! Build for the web with `wasm-pack build --target web` (see the workspace
//! README); the same functions compile and test natively.

// Negated comparisons reject NaN arguments as well as out-of-range ones.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use wasm_bindgen::prelude::*;

use mwright::{
    are_cutoff_root, are_mean_median, fit, sample_mwright, FitOptions, MWrightParams, RngStream,
    Variant,
};

fn parse_variant(s: &str) -> Result<Variant, String> {
    match s {
        "one-sided" => Ok(Variant::OneSided),
        "symmetric" => Ok(Variant::Symmetric),
        other => Err(format!(
            "unknown variant '{other}' (expected one-sided or symmetric)"
        )),
    }
}

fn to_msg<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Density curve as interleaved `[x0, y0, x1, y1, ...]`. Points where the
/// series leaves its supported domain come back as NaN so the plot can gap.
#[wasm_bindgen]
pub fn density_curve(
    variant: &str,
    alpha: f64,
    rho: f64,
    mu: f64,
    from: f64,
    to: f64,
    points: usize,
) -> Result<Vec<f64>, String> {
    if points < 2 || !(to > from) {
        return Err("need points >= 2 and to > from".to_string());
    }
    let params = MWrightParams::new(alpha, rho, mu, parse_variant(variant)?).map_err(to_msg)?;
    let mut out = Vec::with_capacity(2 * points);
    for i in 0..points {
        let x = from + (to - from) * i as f64 / (points - 1) as f64;
        out.push(x);
        out.push(params.pdf(x).unwrap_or(f64::NAN));
    }
    Ok(out)
}

/// Mean-vs-median asymptotic relative efficiency over a fractional-parameter
/// grid, interleaved `[alpha0, are0, ...]`.
#[wasm_bindgen]
pub fn are_curve(from: f64, to: f64, points: usize) -> Result<Vec<f64>, String> {
    if points < 2 || !(to > from) || from <= 0.0 || to >= 1.0 {
        return Err("need points >= 2 and 0 < from < to < 1".to_string());
    }
    let mut out = Vec::with_capacity(2 * points);
    for i in 0..points {
        let a = from + (to - from) * i as f64 / (points - 1) as f64;
        out.push(a);
        out.push(are_mean_median(a).map_err(to_msg)?);
    }
    Ok(out)
}

/// The fractional parameter where the mean and median tie in efficiency.
#[wasm_bindgen]
pub fn are_cutoff() -> f64 {
    are_cutoff_root()
}

/// Draw `n` seeded samples, histogram them, refit the parameters, and return
/// everything as a JSON string:
/// `{"histogram": {"edges": [...], "density": [...]}, "fit": {...},
///   "curve": [x0, y0, ...], "n": n, "seed": seed}`.
#[wasm_bindgen]
pub fn sample_and_fit(
    variant: &str,
    alpha: f64,
    rho: f64,
    mu: f64,
    n: usize,
    seed: u32,
    bins: usize,
) -> Result<String, String> {
    if n < 10 || bins < 2 {
        return Err("need n >= 10 and bins >= 2".to_string());
    }
    let v = parse_variant(variant)?;
    let params = MWrightParams::new(alpha, rho, mu, v).map_err(to_msg)?;
    let draws = sample_mwright(&params, RngStream::new(seed as u64, 0), n).map_err(to_msg)?;

    // Histogram over a percentile-trimmed range so a heavy tail cannot
    // flatten the plot.
    let mut sorted = draws.clone();
    sorted.sort_unstable_by(f64::total_cmp);
    let lo = sorted[(n as f64 * 0.001) as usize];
    let hi = sorted[((n as f64 * 0.995) as usize).min(n - 1)];
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    let mut kept = 0usize;
    for &x in &draws {
        if x >= lo && x < hi {
            counts[(((x - lo) / width) as usize).min(bins - 1)] += 1;
            kept += 1;
        }
    }
    let edges: Vec<f64> = (0..=bins).map(|i| lo + width * i as f64).collect();
    let density: Vec<f64> = counts
        .iter()
        .map(|&c| c as f64 / (kept as f64 * width))
        .collect();

    let options = FitOptions {
        mc_quantile_m: 50_000,
        alpha_hint: None,
    };
    let fitted = fit(&draws, v, 0.95, RngStream::new(seed as u64, 1), &options).map_err(to_msg)?;

    let mut curve = Vec::with_capacity(2 * 200);
    for i in 0..200 {
        let x = lo + (hi - lo) * i as f64 / 199.0;
        curve.push(x);
        curve.push(fitted.params.pdf(x).unwrap_or(f64::NAN));
    }

    let payload = serde_json::json!({
        "histogram": {"edges": edges, "density": density},
        "fit": {
            "alpha": fitted.params.alpha(),
            "rho": fitted.params.rho(),
            "mu": fitted.params.mu(),
            "ci_alpha": [fitted.ci_alpha.lower, fitted.ci_alpha.upper],
            "ci_rho": [fitted.ci_rho.lower, fitted.ci_rho.upper],
            "ci_mu": [fitted.ci_mu.lower, fitted.ci_mu.upper],
            "corr_alpha_rho": fitted.corr_alpha_rho,
            "location_estimator": format!("{:?}", fitted.location_estimator).to_lowercase(),
        },
        "curve": curve,
        "n": n,
        "seed": seed,
    });
    Ok(payload.to_string())
}
