//! Order statistics and test machinery: the type-8 quantile, percent bias and
//! percent MAD aggregates, and the two-sample Kolmogorov-Smirnov test with the
//! simulated-fit goodness-of-fit wrapper.

use rayon::prelude::*;
use serde::Serialize;

use crate::dist::MWrightParams;
use crate::error::{Error, Result};
use crate::sampling::{sample_mwright, RngStream};
use crate::specfun::kolmogorov_tail;

/// Two-sample Kolmogorov-Smirnov result.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KsResult {
    pub d_stat: f64,
    pub p_value: f64,
    pub n1: usize,
    pub n2: usize,
}

/// Type-8 (median-unbiased) quantile: plotting position
/// `h = (n + 1/3) p + 1/3`, linearly interpolated between the flanking order
/// statistics and clamped to the sample range.
///
/// Runs in O(n) via selection; the input order never matters.
pub fn quantile_type8(data: &[f64], p: f64) -> Result<f64> {
    let n = data.len();
    if n == 0 {
        return Err(Error::InsufficientData { need: 1, have: 0 });
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "quantile probability must lie in (0, 1), got {p}"
        )));
    }
    let h = (n as f64 + 1.0 / 3.0) * p + 1.0 / 3.0;
    let mut scratch: Vec<f64> = data.to_vec();
    if h <= 1.0 {
        let m = scratch.iter().cloned().fold(f64::INFINITY, f64::min);
        return Ok(m);
    }
    if h >= n as f64 {
        let m = scratch.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        return Ok(m);
    }
    let j = h.floor() as usize; // 1-based lower order statistic, 1 <= j < n
    let frac = h - j as f64;
    let (left, x1, _) = scratch.select_nth_unstable_by(j, f64::total_cmp);
    let x1 = *x1;
    let x0 = left.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(x0 + frac * (x1 - x0))
}

/// Sample median (type-8 interpolation).
pub fn median(data: &[f64]) -> Result<f64> {
    quantile_type8(data, 0.5)
}

/// Mean over replicates of `100 |estimate - truth| / |truth|`.
pub fn pct_bias(estimates: &[f64], truth: f64) -> Result<f64> {
    if truth == 0.0 {
        return Err(Error::Domain("percent bias undefined at truth = 0".into()));
    }
    if estimates.is_empty() {
        return Err(Error::InsufficientData { need: 1, have: 0 });
    }
    let s: f64 = estimates.iter().map(|e| (e - truth).abs()).sum();
    Ok(100.0 * s / (estimates.len() as f64 * truth.abs()))
}

/// `100 median_r |estimate_r - truth| / |truth|`: dispersion measured about
/// the true parameter.
pub fn pct_mad(estimates: &[f64], truth: f64) -> Result<f64> {
    if truth == 0.0 {
        return Err(Error::Domain("percent MAD undefined at truth = 0".into()));
    }
    if estimates.is_empty() {
        return Err(Error::InsufficientData { need: 1, have: 0 });
    }
    let dev: Vec<f64> = estimates.iter().map(|e| (e - truth).abs()).collect();
    Ok(100.0 * median(&dev)? / truth.abs())
}

/// Two-sample Kolmogorov-Smirnov test.
///
/// `D` is the sup-distance between the two empirical CDFs over the pooled
/// points; the p-value uses the asymptotic Kolmogorov tail with the
/// small-sample correction `lambda = (sqrt(ne) + 0.12 + 0.11/sqrt(ne)) D`,
/// `ne = n1 n2 / (n1 + n2)`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsResult> {
    let (n1, n2) = (a.len(), b.len());
    if n1 == 0 || n2 == 0 {
        return Err(Error::InsufficientData {
            need: 1,
            have: n1.min(n2),
        });
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_unstable_by(f64::total_cmp);
    ys.sort_unstable_by(f64::total_cmp);

    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < n1 && j < n2 {
        let t = xs[i].min(ys[j]);
        while i < n1 && xs[i] <= t {
            i += 1;
        }
        while j < n2 && ys[j] <= t {
            j += 1;
        }
        let diff = (i as f64 / n1 as f64 - j as f64 / n2 as f64).abs();
        if diff > d {
            d = diff;
        }
    }
    let ne = (n1 as f64 * n2 as f64) / (n1 + n2) as f64;
    let lambda = (ne.sqrt() + 0.12 + 0.11 / ne.sqrt()) * d;
    Ok(KsResult {
        d_stat: d,
        p_value: kolmogorov_tail(lambda),
        n1,
        n2,
    })
}

/// Goodness of fit by simulation: draw `sims` datasets of the observed size
/// from the fitted model, KS-test each against the observed data, and return
/// the mean p-value.
pub fn gof_simulated(
    data: &[f64],
    fitted: &MWrightParams,
    sims: usize,
    stream: RngStream,
) -> Result<f64> {
    if sims == 0 {
        return Err(Error::Domain("sims must be at least 1".into()));
    }
    if data.is_empty() {
        return Err(Error::InsufficientData { need: 1, have: 0 });
    }
    let n = data.len();
    let ps: Vec<f64> = (0..sims as u64)
        .into_par_iter()
        .map(|i| {
            let sim = sample_mwright(fitted, stream.substream(i), n)?;
            Ok(ks_two_sample(&sim, data)?.p_value)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(ps.iter().sum::<f64>() / sims as f64)
}
