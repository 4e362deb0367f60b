//! Monte Carlo study harness: percent-bias/percent-MAD tables and coverage
//! tables over configurable parameter combos, sample sizes, and replicate
//! counts, with machine-readable JSON and flat-CSV reports.

use rayon::prelude::*;
use serde::Serialize;

use crate::dist::MWrightParams;
use crate::error::{Error, Result};
use crate::estimate::{
    bootstrap_percentile_ci, ci_alpha_rho, ci_mu_onesided, ci_mu_symmetric, point_estimates,
    BootStat, FitCase,
};
use crate::sampling::{sample_mwright, RngStream};
use crate::stats::{pct_bias, pct_mad};

/// Offset separating the quantile substream family from bootstrap substreams
/// within one replicate.
const QUANTILE_SUBSTREAM: u64 = 1 << 32;

/// One simulation study: every combo crossed with every sample size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimPlan {
    pub combos: Vec<(MWrightParams, FitCase)>,
    pub sample_sizes: Vec<usize>,
    pub replicates: usize,
    pub level: f64,
    pub bootstrap_b: usize,
    pub seed: u64,
    /// Monte Carlo draws behind each shift-parameter quantile.
    pub mc_quantile_m: usize,
}

impl SimPlan {
    pub fn new(combos: Vec<(MWrightParams, FitCase)>, sample_sizes: Vec<usize>, seed: u64) -> Self {
        Self {
            combos,
            sample_sizes,
            replicates: 1000,
            level: 0.95,
            bootstrap_b: 1000,
            seed,
            mc_quantile_m: 1_000_000,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.combos.is_empty() || self.sample_sizes.is_empty() {
            return Err(Error::Domain(
                "plan needs at least one combo and size".into(),
            ));
        }
        if self.replicates == 0 {
            return Err(Error::Domain("replicates must be at least 1".into()));
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(Error::Domain("level must lie in (0, 1)".into()));
        }
        for (p, case) in &self.combos {
            if p.variant() != case.variant() {
                return Err(Error::Domain(format!(
                    "combo variant {:?} does not match case {case:?}",
                    p.variant()
                )));
            }
        }
        Ok(())
    }
}

/// One (combo, n, parameter) cell of a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimCell {
    pub case: FitCase,
    pub alpha: f64,
    pub rho: f64,
    pub mu: f64,
    pub n: usize,
    pub parameter: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pct_bias: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pct_mad: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coverage: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coverage_bootstrap: Option<f64>,
}

/// Machine-readable study report. Identical plans (including the seed)
/// produce identical reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub seed: u64,
    pub level: f64,
    pub replicates: usize,
    pub cells: Vec<SimCell>,
}

fn case_tag(case: FitCase) -> &'static str {
    match case {
        FitCase::OneSidedMuZero => "one-sided-mu-zero",
        FitCase::OneSidedShifted => "one-sided-shifted",
        FitCase::Symmetric => "symmetric",
    }
}

impl SimReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Flat CSV: one row per combo x n x parameter x metric.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("case,alpha,rho,mu,n,parameter,metric,value\n");
        for c in &self.cells {
            let mut push = |metric: &str, value: f64| {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    case_tag(c.case),
                    c.alpha,
                    c.rho,
                    c.mu,
                    c.n,
                    c.parameter,
                    metric,
                    value
                ));
            };
            if let Some(v) = c.pct_bias {
                push("pct_bias", v);
            }
            if let Some(v) = c.pct_mad {
                push("pct_mad", v);
            }
            if let Some(v) = c.coverage {
                push("coverage", v);
            }
            if let Some(v) = c.coverage_bootstrap {
                push("coverage_bootstrap", v);
            }
        }
        out
    }
}

fn combo_label(p: &MWrightParams, case: FitCase) -> String {
    format!(
        "(alpha={}, rho={}, mu={}, case={case:?})",
        p.alpha(),
        p.rho(),
        p.mu()
    )
}

fn replicate_err(p: &MWrightParams, case: FitCase, n: usize, stream_id: u64, e: Error) -> Error {
    Error::Replicate {
        combo: combo_label(p, case),
        n,
        stream_id,
        source: Box::new(e),
    }
}

fn truth_parameters(p: &MWrightParams) -> (f64, f64, f64) {
    (p.alpha(), p.rho(), p.mu())
}

/// Percent bias and percent MAD of the point estimators, per Table-style cell.
pub fn run_bias_mad(plan: &SimPlan) -> Result<SimReport> {
    plan.validate()?;
    let mut cells = Vec::new();
    for (params, case) in &plan.combos {
        let (alpha_t, rho_t, mu_t) = truth_parameters(params);
        for &n in &plan.sample_sizes {
            let estimates: Vec<(f64, f64, f64)> = (0..plan.replicates as u64)
                .into_par_iter()
                .map(|r| {
                    let stream = RngStream::new(plan.seed, r);
                    let data = sample_mwright(params, stream, n)
                        .map_err(|e| replicate_err(params, *case, n, r, e))?;
                    let (a, rho, mu, _, _) = point_estimates(&data, *case, None)
                        .map_err(|e| replicate_err(params, *case, n, r, e))?;
                    Ok((a, rho, mu))
                })
                .collect::<Result<_>>()?;
            let alphas: Vec<f64> = estimates.iter().map(|e| e.0).collect();
            let rhos: Vec<f64> = estimates.iter().map(|e| e.1).collect();
            push_bias_cell(&mut cells, params, *case, n, "alpha", &alphas, alpha_t)?;
            push_bias_cell(&mut cells, params, *case, n, "rho", &rhos, rho_t)?;
            if *case != FitCase::OneSidedMuZero {
                let mus: Vec<f64> = estimates.iter().map(|e| e.2).collect();
                push_bias_cell(&mut cells, params, *case, n, "mu", &mus, mu_t)?;
            }
        }
    }
    Ok(SimReport {
        seed: plan.seed,
        level: plan.level,
        replicates: plan.replicates,
        cells,
    })
}

fn push_bias_cell(
    cells: &mut Vec<SimCell>,
    params: &MWrightParams,
    case: FitCase,
    n: usize,
    parameter: &'static str,
    estimates: &[f64],
    truth: f64,
) -> Result<()> {
    cells.push(SimCell {
        case,
        alpha: params.alpha(),
        rho: params.rho(),
        mu: params.mu(),
        n,
        parameter,
        pct_bias: Some(pct_bias(estimates, truth)?),
        pct_mad: Some(pct_mad(estimates, truth)?),
        coverage: None,
        coverage_bootstrap: None,
    });
    Ok(())
}

struct CoverageHits {
    alpha: bool,
    rho: bool,
    mu: Option<bool>,
    alpha_boot: Option<bool>,
    rho_boot: Option<bool>,
    mu_boot: Option<bool>,
}

/// Coverage of the 100*level % interval estimators; bootstrap percentile
/// comparators are added when requested.
pub fn run_coverage(plan: &SimPlan, include_bootstrap: bool) -> Result<SimReport> {
    plan.validate()?;
    let mut cells = Vec::new();
    for (params, case) in &plan.combos {
        for &n in &plan.sample_sizes {
            let hits: Vec<CoverageHits> = (0..plan.replicates as u64)
                .into_par_iter()
                .map(|r| {
                    let stream = RngStream::new(plan.seed, r);
                    replicate_coverage(params, *case, n, plan, include_bootstrap, stream)
                        .map_err(|e| replicate_err(params, *case, n, r, e))
                })
                .collect::<Result<_>>()?;
            let frac = |f: &dyn Fn(&CoverageHits) -> Option<bool>| -> Option<f64> {
                let total = hits.iter().filter(|h| f(h).is_some()).count();
                if total == 0 {
                    return None;
                }
                Some(hits.iter().filter(|h| f(h) == Some(true)).count() as f64 / total as f64)
            };
            cells.push(coverage_cell(
                params,
                *case,
                n,
                "alpha",
                frac(&|h| Some(h.alpha)),
                frac(&|h| h.alpha_boot),
            ));
            cells.push(coverage_cell(
                params,
                *case,
                n,
                "rho",
                frac(&|h| Some(h.rho)),
                frac(&|h| h.rho_boot),
            ));
            if *case != FitCase::OneSidedMuZero {
                cells.push(coverage_cell(
                    params,
                    *case,
                    n,
                    "mu",
                    frac(&|h| h.mu),
                    frac(&|h| h.mu_boot),
                ));
            }
        }
    }
    Ok(SimReport {
        seed: plan.seed,
        level: plan.level,
        replicates: plan.replicates,
        cells,
    })
}

fn coverage_cell(
    params: &MWrightParams,
    case: FitCase,
    n: usize,
    parameter: &'static str,
    coverage: Option<f64>,
    coverage_bootstrap: Option<f64>,
) -> SimCell {
    SimCell {
        case,
        alpha: params.alpha(),
        rho: params.rho(),
        mu: params.mu(),
        n,
        parameter,
        pct_bias: None,
        pct_mad: None,
        coverage,
        coverage_bootstrap,
    }
}

fn replicate_coverage(
    params: &MWrightParams,
    case: FitCase,
    n: usize,
    plan: &SimPlan,
    include_bootstrap: bool,
    stream: RngStream,
) -> Result<CoverageHits> {
    let (alpha_t, rho_t, mu_t) = truth_parameters(params);
    let data = sample_mwright(params, stream, n)?;
    let (a_hat, r_hat, mu_hat, location, zeros) = point_estimates(&data, case, None)?;
    let n_log = if case == FitCase::OneSidedMuZero {
        n
    } else {
        n - zeros
    };
    let (ci_a, ci_r) = ci_alpha_rho(a_hat, r_hat, n_log, plan.level)?;

    let mu_hit = match case {
        FitCase::OneSidedMuZero => None,
        FitCase::OneSidedShifted => {
            let ci = ci_mu_onesided(
                mu_hat,
                r_hat,
                a_hat,
                n,
                plan.level,
                stream.substream(QUANTILE_SUBSTREAM),
                plan.mc_quantile_m,
            )?;
            Some(ci.contains(mu_t))
        }
        FitCase::Symmetric => {
            let ci = ci_mu_symmetric(mu_hat, a_hat, r_hat, n, plan.level, location)?;
            Some(ci.contains(mu_t))
        }
    };

    let (mut alpha_boot, mut rho_boot, mut mu_boot) = (None, None, None);
    if include_bootstrap {
        let boot = |stat: BootStat, offset: u64| -> Result<bool> {
            let ci = bootstrap_percentile_ci(
                &data,
                case,
                stat,
                plan.level,
                plan.bootstrap_b,
                stream.substream(2 * QUANTILE_SUBSTREAM + offset),
            )?;
            Ok(ci.contains(match stat {
                BootStat::Alpha => alpha_t,
                BootStat::Rho => rho_t,
                BootStat::Mu => mu_t,
            }))
        };
        alpha_boot = Some(boot(BootStat::Alpha, 0)?);
        rho_boot = Some(boot(BootStat::Rho, 1)?);
        if case != FitCase::OneSidedMuZero {
            mu_boot = Some(boot(BootStat::Mu, 2)?);
        }
    }

    Ok(CoverageHits {
        alpha: ci_a.contains(alpha_t),
        rho: ci_r.contains(rho_t),
        mu: mu_hit,
        alpha_boot,
        rho_boot,
        mu_boot,
    })
}
