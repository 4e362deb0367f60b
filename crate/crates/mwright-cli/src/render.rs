//! Output rendering: 6-significant-digit human text, full-precision JSON and
//! RFC-4180 CSV.

use mwright::{CiMethod, ConfidenceInterval, FitResult, LocationEstimator, Variant};
use serde_json::json;

/// Format with six significant digits for human-facing tables.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&mag) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn method_tag(m: CiMethod) -> &'static str {
    match m {
        CiMethod::DeltaMethod => "delta-method",
        CiMethod::OrderStatistic => "order-statistic",
        CiMethod::MeanClt => "mean-clt",
        CiMethod::MedianClt => "median-clt",
        CiMethod::BootstrapPercentile => "bootstrap-percentile",
    }
}

pub fn variant_tag(v: Variant) -> &'static str {
    match v {
        Variant::OneSided => "one-sided",
        Variant::Symmetric => "symmetric",
    }
}

pub fn location_tag(l: LocationEstimator) -> &'static str {
    match l {
        LocationEstimator::Min => "min",
        LocationEstimator::Mean => "mean",
        LocationEstimator::Median => "median",
    }
}

fn ci_cells(ci: &ConfidenceInterval) -> String {
    format!(
        "({}, {})  [{}]",
        sig6(ci.lower),
        sig6(ci.upper),
        method_tag(ci.method)
    )
}

pub fn fit_human(r: &FitResult, n: usize, level: f64) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "M-Wright fit ({}), n = {n}, level = {}%\n",
        variant_tag(r.params.variant()),
        sig6(level * 100.0)
    ));
    out.push_str(&format!(
        "  mu     {:<12} {}\n",
        sig6(r.params.mu()),
        ci_cells(&r.ci_mu)
    ));
    out.push_str(&format!(
        "  alpha  {:<12} {}\n",
        sig6(r.params.alpha()),
        ci_cells(&r.ci_alpha)
    ));
    out.push_str(&format!(
        "  rho    {:<12} {}\n",
        sig6(r.params.rho()),
        ci_cells(&r.ci_rho)
    ));
    out.push_str(&format!(
        "  corr(alpha, rho) = {}\n  location estimator: {}\n",
        sig6(r.corr_alpha_rho),
        location_tag(r.location_estimator)
    ));
    for d in &r.diagnostics {
        out.push_str(&format!("  note: {d}\n"));
    }
    out
}

/// The stable JSON schema for fit results.
pub fn fit_json(r: &FitResult, seed: u64) -> serde_json::Value {
    json!({
        "params": {
            "alpha": r.params.alpha(),
            "rho": r.params.rho(),
            "mu": r.params.mu(),
            "variant": variant_tag(r.params.variant()),
        },
        "ci": {
            "alpha": [r.ci_alpha.lower, r.ci_alpha.upper],
            "rho": [r.ci_rho.lower, r.ci_rho.upper],
            "mu": [r.ci_mu.lower, r.ci_mu.upper],
        },
        "corr_alpha_rho": r.corr_alpha_rho,
        "location_estimator": location_tag(r.location_estimator),
        "diagnostics": r.diagnostics,
        "seed": seed,
    })
}

pub fn fit_csv(r: &FitResult, seed: u64) -> String {
    let mut out = String::from("key,value\n");
    let mut kv = |k: &str, v: String| out.push_str(&format!("{k},{v}\n"));
    kv("variant", variant_tag(r.params.variant()).into());
    kv("alpha", format!("{}", r.params.alpha()));
    kv("rho", format!("{}", r.params.rho()));
    kv("mu", format!("{}", r.params.mu()));
    kv("alpha_ci_lower", format!("{}", r.ci_alpha.lower));
    kv("alpha_ci_upper", format!("{}", r.ci_alpha.upper));
    kv("rho_ci_lower", format!("{}", r.ci_rho.lower));
    kv("rho_ci_upper", format!("{}", r.ci_rho.upper));
    kv("mu_ci_lower", format!("{}", r.ci_mu.lower));
    kv("mu_ci_upper", format!("{}", r.ci_mu.upper));
    kv("corr_alpha_rho", format!("{}", r.corr_alpha_rho));
    kv(
        "location_estimator",
        location_tag(r.location_estimator).into(),
    );
    kv("seed", format!("{seed}"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig6_ranges() {
        assert_eq!(sig6(25.020), "25.0200");
        assert_eq!(sig6(0.473), "0.473000");
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(1234567.0), "1.23457e6");
        assert_eq!(sig6(-0.0001234567), "-0.000123457");
    }
}
