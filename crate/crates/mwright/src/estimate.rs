//! Log-moment point estimation of `(alpha, rho, mu)` for both M-Wright
//! families, the asymptotic covariance of `(alpha_hat, rho_hat)`, delta-method
//! and order-statistic confidence intervals, the mean/median location rule
//! with its efficiency cutoff, bootstrap percentile comparators, and the full
//! fit pipelines.

use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dist::{MWrightParams, Variant};
use crate::error::{Error, Result};
use crate::sampling::{stable_draw_ln, RngStream};
use crate::specfun::{EULER_GAMMA, ZETA_3};
use crate::stats::{median, quantile_type8};

/// Clamp width for the fractional-parameter estimator at its boundaries.
const ALPHA_CLAMP: f64 = 1e-6;

/// Efficiency cutoff for the symmetric location rule: the sample mean is used
/// above it, the sample median below.
pub const ARE_CUTOFF: f64 = 0.39106;

/// Sample mean and divide-by-n variance of `X' = log|X|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogMomentStats {
    pub n: usize,
    pub mean_xp: f64,
    pub var_xp: f64,
}

/// The asymptotic covariance of `sqrt(n) (alpha_hat - alpha, rho_hat - rho)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CovMatrix2 {
    pub s_aa: f64,
    pub s_ar: f64,
    pub s_rr: f64,
}

impl CovMatrix2 {
    pub fn correlation(&self) -> f64 {
        self.s_ar / (self.s_aa * self.s_rr).sqrt()
    }
}

/// How a confidence interval was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CiMethod {
    DeltaMethod,
    OrderStatistic,
    MeanClt,
    MedianClt,
    BootstrapPercentile,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfidenceInterval {
    pub lower: f64,
    pub upper: f64,
    pub level: f64,
    pub method: CiMethod,
}

impl ConfidenceInterval {
    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Location estimator actually used by a fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocationEstimator {
    Min,
    Mean,
    Median,
}

/// Which statistic a bootstrap comparator tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BootStat {
    Alpha,
    Rho,
    Mu,
}

/// Which estimation pipeline applies to a dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitCase {
    /// One-sided data with known location zero: the raw log-moment path.
    OneSidedMuZero,
    /// One-sided data with unknown shift: minimum subtraction first.
    OneSidedShifted,
    /// Symmetric data: mean/median centering, then absolute values.
    Symmetric,
}

impl FitCase {
    pub fn variant(&self) -> Variant {
        match self {
            FitCase::Symmetric => Variant::Symmetric,
            _ => Variant::OneSided,
        }
    }
}

/// Full output of a fit.
#[derive(Debug, Clone, Serialize)]
pub struct FitResult {
    pub params: MWrightParams,
    pub ci_alpha: ConfidenceInterval,
    pub ci_rho: ConfidenceInterval,
    pub ci_mu: ConfidenceInterval,
    pub corr_alpha_rho: f64,
    pub location_estimator: LocationEstimator,
    pub diagnostics: Vec<String>,
}

/// Tunables for [`fit`].
#[derive(Debug, Clone, Copy)]
pub struct FitOptions {
    /// Monte Carlo draws backing the shift-parameter quantile.
    pub mc_quantile_m: usize,
    /// Pre-supplied fractional parameter for the symmetric location rule,
    /// replacing the first estimation pass.
    pub alpha_hint: Option<f64>,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            mc_quantile_m: 1_000_000,
            alpha_hint: None,
        }
    }
}

/// Log-moment sufficient statistics of a sample.
///
/// `X'_i = log |x_i|`; the variance uses divisor n. With
/// `exclude_nonpositive` set, observations `<= 0` are dropped before the
/// transform; otherwise a zero observation is an error.
pub fn log_stats(data: &[f64], exclude_nonpositive: bool) -> Result<LogMomentStats> {
    let mut xp = Vec::with_capacity(data.len());
    for (i, &x) in data.iter().enumerate() {
        if exclude_nonpositive && x <= 0.0 {
            continue;
        }
        if x == 0.0 {
            return Err(Error::ZeroObservation(i));
        }
        xp.push(x.abs().ln());
    }
    if xp.len() < 2 {
        return Err(Error::InsufficientData {
            need: 2,
            have: xp.len(),
        });
    }
    let n = xp.len() as f64;
    let mean = xp.iter().sum::<f64>() / n;
    let var = xp.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    Ok(LogMomentStats {
        n: xp.len(),
        mean_xp: mean,
        var_xp: var,
    })
}

/// Point estimators `alpha_hat = sqrt(1 - 6 var/pi^2)` and
/// `rho_hat = exp(mean + gamma (1 - alpha_hat))`.
///
/// Out-of-range variances clamp `alpha_hat` just inside (0, 1) and set the
/// returned flag instead of failing.
pub fn estimate_alpha_rho(s: &LogMomentStats) -> (f64, f64, bool) {
    let pi2_6 = PI * PI / 6.0;
    let (alpha, clamped) = if s.var_xp >= pi2_6 {
        (ALPHA_CLAMP, true)
    } else if s.var_xp <= 0.0 {
        (1.0 - ALPHA_CLAMP, true)
    } else {
        ((1.0 - 6.0 * s.var_xp / (PI * PI)).sqrt(), false)
    };
    let rho = (s.mean_xp + EULER_GAMMA * (1.0 - alpha)).exp();
    (alpha, rho, clamped)
}

/// Asymptotic covariance of `sqrt(n)(alpha_hat - alpha, rho_hat - rho)`,
/// evaluated at the supplied values.
///
/// The off-diagonal entry carries the scale as an overall factor, which is
/// forced by equivariance: `alpha_hat` is scale-invariant and `rho_hat`
/// scale-equivariant, so the covariance must be linear in `rho`.
pub fn asymptotic_cov(alpha_hat: f64, rho_hat: f64) -> Result<CovMatrix2> {
    if !(alpha_hat > 0.0 && alpha_hat <= 1.0) {
        return Err(Error::Domain(format!(
            "covariance requires alpha in (0, 1], got {alpha_hat}"
        )));
    }
    if !(rho_hat > 0.0) {
        return Err(Error::Domain(format!(
            "covariance requires positive scale, got {rho_hat}"
        )));
    }
    let a = alpha_hat;
    let r = rho_hat;
    let a2 = a * a;
    let a3 = a2 * a;
    let a4 = a2 * a2;
    let pi2 = PI * PI;
    let g = EULER_GAMMA;
    let z3 = ZETA_3;

    let s_aa = (11.0 - a4) / (10.0 * a2) - 1.0;
    let s_ar = r * ((10.0 * a2 - 11.0 + a4) * g - 60.0 * a * (a3 - 1.0) * z3 / pi2) / (10.0 * a2);
    let s_rr = r
        * r
        * (360.0 * a * (a3 - 1.0) * g * z3
            - (a2 - 1.0) * pi2 * (3.0 * (11.0 + a2) * g * g + 5.0 * a2 * pi2))
        / (30.0 * a2 * pi2);
    Ok(CovMatrix2 { s_aa, s_ar, s_rr })
}

/// Standard normal quantile, `Phi^{-1}(p)`.
///
/// Hastings-style initial guess polished by three Newton steps against the
/// erfc-based CDF; accurate to well under 1e-9 across (0, 1).
pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "normal quantile requires p in (0, 1), got {p}"
        )));
    }
    let tail = p.min(1.0 - p);
    let t = (-2.0 * tail.ln()).sqrt();
    let guess = t - (2.30753 + 0.27061 * t) / (1.0 + 0.99229 * t + 0.04481 * t * t);
    let mut z = if p < 0.5 { -guess } else { guess };
    for _ in 0..3 {
        let cdf = 0.5 * libm::erfc(-z / std::f64::consts::SQRT_2);
        let pdf = (-0.5 * z * z).exp() / (2.0 * PI).sqrt();
        z -= (cdf - p) / pdf;
    }
    Ok(z)
}

/// Delta-method confidence intervals for `alpha` and `rho`, with the
/// covariance plugged in at the estimates. The alpha interval is intersected
/// with [0, 1]; the rho lower endpoint is floored at 0.
pub fn ci_alpha_rho(
    alpha_hat: f64,
    rho_hat: f64,
    n: usize,
    level: f64,
) -> Result<(ConfidenceInterval, ConfidenceInterval)> {
    if n < 2 {
        return Err(Error::InsufficientData { need: 2, have: n });
    }
    check_level(level)?;
    let cov = asymptotic_cov(alpha_hat, rho_hat)?;
    let z = normal_quantile(1.0 - (1.0 - level) / 2.0)?;
    let nf = n as f64;
    let ha = z * (cov.s_aa / nf).sqrt();
    let hr = z * (cov.s_rr / nf).sqrt();
    let ci_a = ConfidenceInterval {
        lower: (alpha_hat - ha).max(0.0),
        upper: (alpha_hat + ha).min(1.0),
        level,
        method: CiMethod::DeltaMethod,
    };
    let ci_r = ConfidenceInterval {
        lower: (rho_hat - hr).max(0.0),
        upper: rho_hat + hr,
        level,
        method: CiMethod::DeltaMethod,
    };
    Ok((ci_a, ci_r))
}

fn check_level(level: f64) -> Result<()> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Domain(format!(
            "confidence level must lie in (0, 1), got {level}"
        )));
    }
    Ok(())
}

/// Shift estimator for the one-sided family: the sample minimum.
pub fn estimate_mu_onesided(data: &[f64]) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::InsufficientData { need: 1, have: 0 });
    }
    Ok(data.iter().cloned().fold(f64::INFINITY, f64::min))
}

/// Monte Carlo type-8 quantile of the unit one-sided M-Wright law
/// `M_{alpha,1,0}` at probability `p`, from `m` simulated variates.
pub fn mc_quantile_m(alpha: f64, p: f64, stream: RngStream, m: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "fractional parameter must lie in (0, 1), got {alpha}"
        )));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "quantile probability must lie in (0, 1), got {p}"
        )));
    }
    if m == 0 {
        return Err(Error::Domain(
            "quantile sample size must be positive".into(),
        ));
    }
    let mut rng = stream.rng();
    let draws: Vec<f64> = (0..m)
        .map(|_| (-alpha * stable_draw_ln(&mut rng, alpha)).exp())
        .collect();
    quantile_type8(&draws, p)
}

/// One-sided interval for the shift parameter: `(mu_hat - q rho_hat, mu_hat]`
/// where `q` is the `(1 - nu^(1/n))`-th quantile of `M_{alpha_hat,1,0}`,
/// estimated from `m` Monte Carlo variates.
pub fn ci_mu_onesided(
    mu_hat: f64,
    rho_hat: f64,
    alpha_hat: f64,
    n: usize,
    level: f64,
    stream: RngStream,
    m: usize,
) -> Result<ConfidenceInterval> {
    if n == 0 {
        return Err(Error::InsufficientData { need: 1, have: 0 });
    }
    check_level(level)?;
    let nu = 1.0 - level;
    let p = 1.0 - nu.powf(1.0 / n as f64);
    let q = mc_quantile_m(alpha_hat, p, stream, m)?;
    Ok(ConfidenceInterval {
        lower: mu_hat - q * rho_hat,
        upper: mu_hat,
        level,
        method: CiMethod::OrderStatistic,
    })
}

/// Asymptotic relative efficiency of the sample mean to the sample median as
/// location estimators: `(alpha Gamma(2 alpha) Gamma(1 - alpha)^2)^(-1)`.
/// Values above 1 favor the median, below 1 the mean.
pub fn are_mean_median(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "fractional parameter must lie in (0, 1), got {alpha}"
        )));
    }
    let ln = alpha.ln() + libm::lgamma(2.0 * alpha) + 2.0 * libm::lgamma(1.0 - alpha);
    Ok((-ln).exp())
}

/// Root of `ARE(alpha) = 1` by bisection; the crossover of the mean/median
/// location rule.
pub fn are_cutoff_root() -> f64 {
    let f = |a: f64| are_mean_median(a).expect("bisection stays inside (0,1)") - 1.0;
    let (mut lo, mut hi) = (0.2, 0.6);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(lo) * f(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    0.5 * (lo + hi)
}

fn sample_mean(data: &[f64]) -> f64 {
    data.iter().sum::<f64>() / data.len() as f64
}

/// Location estimate for the symmetric family.
///
/// With no hint, a first pass centers at the median and estimates alpha; if
/// that estimate exceeds the efficiency cutoff the location is re-estimated
/// with the mean. A hint skips the first pass.
pub fn estimate_mu_symmetric(
    data: &[f64],
    alpha_hint: Option<f64>,
) -> Result<(f64, LocationEstimator)> {
    if data.len() < 2 {
        return Err(Error::InsufficientData {
            need: 2,
            have: data.len(),
        });
    }
    if let Some(a) = alpha_hint {
        return Ok(if a > ARE_CUTOFF {
            (sample_mean(data), LocationEstimator::Mean)
        } else {
            (median(data)?, LocationEstimator::Median)
        });
    }
    let med = median(data)?;
    let centered: Vec<f64> = data.iter().map(|x| (x - med).abs()).collect();
    let alpha_pass1 = match log_stats(&centered, true) {
        Ok(s) => estimate_alpha_rho(&s).0,
        // Degenerate (near-constant) data: both location estimators coincide.
        Err(_) => return Ok((med, LocationEstimator::Median)),
    };
    Ok(if alpha_pass1 > ARE_CUTOFF {
        (sample_mean(data), LocationEstimator::Mean)
    } else {
        (med, LocationEstimator::Median)
    })
}

/// CLT interval for the symmetric location parameter using the requested
/// estimator's asymptotic variance: `rho^2/(alpha Gamma(2 alpha))` for the
/// mean, `rho^2 Gamma(1 - alpha)^2` for the median.
pub fn ci_mu_symmetric(
    mu_hat: f64,
    alpha_hat: f64,
    rho_hat: f64,
    n: usize,
    level: f64,
    which: LocationEstimator,
) -> Result<ConfidenceInterval> {
    if n < 2 {
        return Err(Error::InsufficientData { need: 2, have: n });
    }
    check_level(level)?;
    if !(alpha_hat > 0.0 && alpha_hat < 1.0) {
        return Err(Error::Domain(format!(
            "fractional parameter must lie in (0, 1), got {alpha_hat}"
        )));
    }
    let z = normal_quantile(1.0 - (1.0 - level) / 2.0)?;
    let nf = n as f64;
    let (half, method) = match which {
        LocationEstimator::Mean => (
            z * rho_hat / (alpha_hat * nf * libm::tgamma(2.0 * alpha_hat)).sqrt(),
            CiMethod::MeanClt,
        ),
        LocationEstimator::Median => (
            z * rho_hat * libm::tgamma(1.0 - alpha_hat) / nf.sqrt(),
            CiMethod::MedianClt,
        ),
        LocationEstimator::Min => {
            return Err(Error::Domain(
                "symmetric location interval needs the mean or median estimator".into(),
            ))
        }
    };
    Ok(ConfidenceInterval {
        lower: mu_hat - half,
        upper: mu_hat + half,
        level,
        method,
    })
}

/// Point estimates `(alpha_hat, rho_hat, mu_hat, location, dropped_zeros)`
/// along one case's pipeline. Shared by the fit, the bootstrap, and the
/// simulation harness so every consumer re-runs the identical path.
pub(crate) fn point_estimates(
    data: &[f64],
    case: FitCase,
    alpha_hint: Option<f64>,
) -> Result<(f64, f64, f64, LocationEstimator, usize)> {
    match case {
        FitCase::OneSidedMuZero => {
            let s = log_stats(data, false)?;
            let (a, r, _) = estimate_alpha_rho(&s);
            Ok((a, r, 0.0, LocationEstimator::Min, 0))
        }
        FitCase::OneSidedShifted => {
            let mu = estimate_mu_onesided(data)?;
            let shifted: Vec<f64> = data.iter().map(|x| x - mu).collect();
            let zeros = shifted.iter().filter(|&&x| x <= 0.0).count();
            let s = log_stats(&shifted, true)?;
            let (a, r, _) = estimate_alpha_rho(&s);
            Ok((a, r, mu, LocationEstimator::Min, zeros))
        }
        FitCase::Symmetric => {
            let (mu, which) = estimate_mu_symmetric(data, alpha_hint)?;
            let centered: Vec<f64> = data.iter().map(|x| (x - mu).abs()).collect();
            let zeros = centered.iter().filter(|&&x| x <= 0.0).count();
            let s = log_stats(&centered, true)?;
            let (a, r, _) = estimate_alpha_rho(&s);
            Ok((a, r, mu, which, zeros))
        }
    }
}

/// Fit a three-parameter M-Wright model to data.
///
/// One-sided: location by the sample minimum, the minimum observation dropped
/// from the log sample, order-statistic interval for the shift. Symmetric:
/// location by the mean/median rule, CLT interval for the location. Both
/// variants share the log-moment estimators and delta-method intervals for
/// `(alpha, rho)`.
pub fn fit(
    data: &[f64],
    variant: Variant,
    level: f64,
    stream: RngStream,
    options: &FitOptions,
) -> Result<FitResult> {
    if data.len() < 10 {
        return Err(Error::InsufficientData {
            need: 10,
            have: data.len(),
        });
    }
    check_level(level)?;
    let case = match variant {
        Variant::OneSided => FitCase::OneSidedShifted,
        Variant::Symmetric => FitCase::Symmetric,
    };
    let mut diagnostics = Vec::new();

    let (alpha, rho, mu, location, zeros) = point_estimates(data, case, options.alpha_hint)?;
    if zeros > 0 {
        diagnostics.push(format!(
            "dropped {zeros} zero observation(s) after centering at the location estimate"
        ));
    }
    let n_log = data.len() - zeros;
    let s = match case {
        FitCase::OneSidedShifted => {
            let shifted: Vec<f64> = data.iter().map(|x| x - mu).collect();
            log_stats(&shifted, true)?
        }
        FitCase::Symmetric => {
            let centered: Vec<f64> = data.iter().map(|x| (x - mu).abs()).collect();
            log_stats(&centered, true)?
        }
        FitCase::OneSidedMuZero => log_stats(data, false)?,
    };
    let (_, _, clamped) = estimate_alpha_rho(&s);
    if clamped {
        diagnostics.push(format!(
            "alpha estimate clamped to the boundary (log variance {:.6e})",
            s.var_xp
        ));
    }

    let (ci_alpha, ci_rho) = ci_alpha_rho(alpha, rho, n_log, level)?;
    let cov = asymptotic_cov(alpha, rho)?;
    let ci_mu = match variant {
        Variant::OneSided => ci_mu_onesided(
            mu,
            rho,
            alpha,
            data.len(),
            level,
            stream.substream(u64::MAX),
            options.mc_quantile_m,
        )?,
        Variant::Symmetric => ci_mu_symmetric(mu, alpha, rho, data.len(), level, location)?,
    };

    Ok(FitResult {
        params: MWrightParams::new(alpha, rho, mu, variant)?,
        ci_alpha,
        ci_rho,
        ci_mu,
        corr_alpha_rho: cov.correlation(),
        location_estimator: location,
        diagnostics,
    })
}

/// Percentile bootstrap interval for one statistic of one case's point
/// estimator: `b` resamples with replacement, the point path re-run on each,
/// endpoints at the type-8 `(nu/2, 1 - nu/2)` quantiles of the replicate
/// estimates.
pub fn bootstrap_percentile_ci(
    data: &[f64],
    case: FitCase,
    statistic: BootStat,
    level: f64,
    b: usize,
    stream: RngStream,
) -> Result<ConfidenceInterval> {
    if b < 100 {
        return Err(Error::Domain(format!(
            "bootstrap needs at least 100 resamples, got {b}"
        )));
    }
    check_level(level)?;
    if data.len() < 2 {
        return Err(Error::InsufficientData {
            need: 2,
            have: data.len(),
        });
    }
    let n = data.len();
    let estimates: Vec<f64> = (0..b as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream.substream(i).rng();
            let resample: Vec<f64> = (0..n).map(|_| data[rng.random_range(0..n)]).collect();
            if case != FitCase::OneSidedShifted || statistic != BootStat::Mu {
                let (a, r, mu, _, _) = point_estimates(&resample, case, None)?;
                Ok(match statistic {
                    BootStat::Alpha => a,
                    BootStat::Rho => r,
                    BootStat::Mu => mu,
                })
            } else {
                // Minimum-only replicate: skip the log-moment stage, which a
                // degenerate resample could not support.
                estimate_mu_onesided(&resample)
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    let nu = 1.0 - level;
    let lower = quantile_type8(&estimates, nu / 2.0)?;
    let upper = quantile_type8(&estimates, 1.0 - nu / 2.0)?;
    Ok(ConfidenceInterval {
        lower,
        upper,
        level,
        method: CiMethod::BootstrapPercentile,
    })
}
