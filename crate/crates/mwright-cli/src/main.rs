//! `mwright` command-line tool: dataset fitting, sampling, density-curve
//! emission, simulated goodness-of-fit, and Monte Carlo simulation tables.
//!
//! Exit codes: 0 success, 1 internal error, 2 input error, 3 estimation
//! error.

// Negated comparisons reject NaN flag values as well as out-of-range ones.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod input;
mod render;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mwright::{
    are_mean_median, fit, gof_simulated, run_bias_mad, run_coverage, sample_mwright, FitCase,
    FitOptions, MWrightParams, RngStream, SimPlan, SimReport, Variant,
};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Estimation(String),
    Internal(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Estimation(m) => write!(f, "estimation error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<mwright::Error> for CliError {
    fn from(e: mwright::Error) -> Self {
        CliError::Estimation(e.to_string())
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Internal(_) => 1,
            CliError::Input(_) => 2,
            CliError::Estimation(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "mwright",
    about = "Fitting, sampling, and simulation for one-sided and symmetric M-Wright distributions",
    version
)]
struct Cli {
    /// Upper bound on worker threads for parallel sections.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    OneSided,
    Symmetric,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::OneSided => Variant::OneSided,
            VariantArg::Symmetric => Variant::Symmetric,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CurveKind {
    Pdf,
    Are,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Metric {
    Bias,
    Coverage,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Preset {
    Table1,
    Table2,
    Table3,
    Table4,
    Table5,
    Table6,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CaseArg {
    OneSidedMuZero,
    OneSidedShifted,
    Symmetric,
}

impl From<CaseArg> for FitCase {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::OneSidedMuZero => FitCase::OneSidedMuZero,
            CaseArg::OneSidedShifted => FitCase::OneSidedShifted,
            CaseArg::Symmetric => FitCase::Symmetric,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Fit a three-parameter M-Wright model to a CSV column.
    Fit(FitArgs),
    /// Draw seeded samples from an M-Wright distribution.
    Sample(SampleArgs),
    /// Emit a density curve (or the mean/median ARE curve) as plot data.
    Density(DensityArgs),
    /// Goodness of fit: mean KS p-value over datasets simulated from the fit.
    Gof(GofArgs),
    /// Reproduce bias/MAD and coverage simulation tables.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct FitArgs {
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[arg(long)]
    input: PathBuf,
    /// Column name or 0-based index.
    #[arg(long, default_value = "0")]
    column: String,
    #[arg(long, default_value_t = 0.95)]
    level: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Monte Carlo draws behind the shift-parameter quantile.
    #[arg(long = "mc-m", default_value_t = 1_000_000)]
    mc_m: usize,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    rho: f64,
    #[arg(long, default_value_t = 0.0)]
    mu: f64,
    #[arg(short, long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DensityArgs {
    /// pdf: density of the given parameters; are: mean/median asymptotic
    /// relative efficiency over a fractional-parameter grid.
    #[arg(long, value_enum, default_value_t = CurveKind::Pdf)]
    curve: CurveKind,
    #[arg(long, value_enum, default_value_t = VariantArg::OneSided)]
    variant: VariantArg,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    rho: f64,
    #[arg(long, default_value_t = 0.0)]
    mu: f64,
    #[arg(long, allow_hyphen_values = true)]
    from: f64,
    #[arg(long, allow_hyphen_values = true)]
    to: f64,
    #[arg(long, default_value_t = 200)]
    points: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GofArgs {
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "0")]
    column: String,
    #[arg(long, default_value_t = 100)]
    sims: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.95)]
    level: f64,
    #[arg(long = "mc-m", default_value_t = 1_000_000)]
    mc_m: usize,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// bias: percent bias and percent MAD of the point estimators;
    /// coverage: coverage probabilities of the interval estimators.
    #[arg(value_enum)]
    metric: Metric,
    /// Parameter combos of the published study tables.
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Custom combo `alpha,rho,mu,case`; repeatable.
    #[arg(long = "combo")]
    combos: Vec<String>,
    /// Comma-separated sample sizes.
    #[arg(long, default_value = "100,1000,10000")]
    sizes: String,
    #[arg(long, default_value_t = 1000)]
    replicates: usize,
    #[arg(long, default_value_t = 0.95)]
    level: f64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Also compute bootstrap percentile coverage (the starred rows).
    #[arg(long)]
    bootstrap: bool,
    #[arg(long = "bootstrap-b", default_value_t = 1000)]
    bootstrap_b: usize,
    #[arg(long = "mc-m", default_value_t = 1_000_000)]
    mc_m: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("input error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        // Ignore failure: the global pool can already be initialized in tests.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Fit(a) => cmd_fit(a),
        Command::Sample(a) => cmd_sample(a),
        Command::Density(a) => cmd_density(a),
        Command::Gof(a) => cmd_gof(a),
        Command::Simulate(a) => cmd_simulate(a),
    }
}

fn emit(output: Option<&Path>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_fit(a: FitArgs) -> Result<(), CliError> {
    let data = input::read_column(&a.input, &a.column)?;
    let options = FitOptions {
        mc_quantile_m: a.mc_m,
        alpha_hint: None,
    };
    let result = fit(
        &data,
        a.variant.into(),
        a.level,
        RngStream::new(a.seed, 0),
        &options,
    )?;
    let content = match a.format {
        Format::Human => render::fit_human(&result, data.len(), a.level),
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&render::fit_json(&result, a.seed))
                .map_err(|e| CliError::Internal(e.to_string()))?
        ),
        Format::Csv => render::fit_csv(&result, a.seed),
    };
    emit(a.output.as_deref(), &content)
}

fn cmd_sample(a: SampleArgs) -> Result<(), CliError> {
    let params = MWrightParams::new(a.alpha, a.rho, a.mu, a.variant.into())?;
    let draws = sample_mwright(&params, RngStream::new(a.seed, 0), a.n)?;
    let content = match a.format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({
                "seed": a.seed,
                "params": {
                    "alpha": a.alpha, "rho": a.rho, "mu": a.mu,
                    "variant": render::variant_tag(params.variant()),
                },
                "draws": draws,
            }))
            .map_err(|e| CliError::Internal(e.to_string()))?
        ),
        _ => {
            let mut out = String::from("value\n");
            for d in &draws {
                out.push_str(&format!("{d}\n"));
            }
            out
        }
    };
    emit(a.output.as_deref(), &content)
}

fn cmd_density(a: DensityArgs) -> Result<(), CliError> {
    if a.points < 2 {
        return Err(CliError::Input("--points must be at least 2".into()));
    }
    if !(a.to > a.from) {
        return Err(CliError::Input("--to must exceed --from".into()));
    }
    let (header, rows) = match a.curve {
        CurveKind::Pdf => {
            let params = MWrightParams::new(a.alpha, a.rho, a.mu, a.variant.into())?;
            let mut rows = Vec::with_capacity(a.points);
            for i in 0..a.points {
                let x = a.from + (a.to - a.from) * i as f64 / (a.points - 1) as f64;
                let y = params
                    .pdf(x)
                    .map_err(|e| CliError::Estimation(format!("density at x = {x}: {e}")))?;
                rows.push((x, y));
            }
            ("x,pdf", rows)
        }
        CurveKind::Are => {
            let mut rows = Vec::with_capacity(a.points);
            for i in 0..a.points {
                let alpha = a.from + (a.to - a.from) * i as f64 / (a.points - 1) as f64;
                let y = are_mean_median(alpha)
                    .map_err(|e| CliError::Estimation(format!("ARE at alpha = {alpha}: {e}")))?;
                rows.push((alpha, y));
            }
            ("alpha,are", rows)
        }
    };
    let content = match a.format {
        Format::Json => {
            let (xs, ys): (Vec<f64>, Vec<f64>) = rows.into_iter().unzip();
            let (xname, yname) = header.split_once(',').unwrap();
            format!(
                "{}\n",
                serde_json::to_string_pretty(&json!({ xname: xs, yname: ys }))
                    .map_err(|e| CliError::Internal(e.to_string()))?
            )
        }
        _ => {
            let mut out = format!("{header}\n");
            for (x, y) in rows {
                out.push_str(&format!("{x},{y}\n"));
            }
            out
        }
    };
    emit(a.output.as_deref(), &content)
}

fn cmd_gof(a: GofArgs) -> Result<(), CliError> {
    let data = input::read_column(&a.input, &a.column)?;
    let options = FitOptions {
        mc_quantile_m: a.mc_m,
        alpha_hint: None,
    };
    let result = fit(
        &data,
        a.variant.into(),
        a.level,
        RngStream::new(a.seed, 0),
        &options,
    )?;
    let mean_p = gof_simulated(&data, &result.params, a.sims, RngStream::new(a.seed, 1))?;
    let content = match a.format {
        Format::Human => format!(
            "mean KS p-value over {} simulated datasets: {}\n",
            a.sims,
            render::sig6(mean_p)
        ),
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({
                "mean_p": mean_p,
                "sims": a.sims,
                "fit": render::fit_json(&result, a.seed),
            }))
            .map_err(|e| CliError::Internal(e.to_string()))?
        ),
        Format::Csv => format!("key,value\nmean_p,{mean_p}\nsims,{}\n", a.sims),
    };
    emit(a.output.as_deref(), &content)
}

fn preset_combos(preset: Preset) -> Vec<(MWrightParams, FitCase)> {
    let zero: &[(f64, f64, f64)] = &[
        (0.4, 150.0, 0.0),
        (0.6, 8.77, 0.0),
        (0.8, 375.0, 0.0),
        (0.95, 1000.0, 0.0),
    ];
    let shifted: &[(f64, f64, f64)] = &[
        (0.4, 150.0, -78.0),
        (0.6, 8.77, 25.2),
        (0.8, 375.0, 375.0),
        (0.95, 1000.0, 500.0),
    ];
    let (rows, case) = match preset {
        Preset::Table1 | Preset::Table2 => (zero, FitCase::OneSidedMuZero),
        Preset::Table3 | Preset::Table4 => (shifted, FitCase::OneSidedShifted),
        Preset::Table5 | Preset::Table6 => (shifted, FitCase::Symmetric),
    };
    rows.iter()
        .map(|&(alpha, rho, mu)| {
            let params = MWrightParams::new(alpha, rho, mu, case.variant())
                .expect("preset parameters are valid");
            (params, case)
        })
        .collect()
}

fn parse_combo(spec: &str) -> Result<(MWrightParams, FitCase), CliError> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(CliError::Input(format!(
            "--combo '{spec}': expected alpha,rho,mu,case"
        )));
    }
    let num = |s: &str, what: &str| -> Result<f64, CliError> {
        s.parse::<f64>()
            .map_err(|_| CliError::Input(format!("--combo '{spec}': bad {what} '{s}'")))
    };
    let alpha = num(parts[0], "alpha")?;
    let rho = num(parts[1], "rho")?;
    let mu = num(parts[2], "mu")?;
    let case: FitCase = CaseArg::from_str(parts[3], true)
        .map_err(|_| {
            CliError::Input(format!(
                "--combo '{spec}': case must be one-sided-mu-zero, one-sided-shifted, or symmetric"
            ))
        })?
        .into();
    let params = MWrightParams::new(alpha, rho, mu, case.variant())?;
    Ok((params, case))
}

fn cmd_simulate(a: SimulateArgs) -> Result<(), CliError> {
    let mut combos = Vec::new();
    if let Some(p) = a.preset {
        combos.extend(preset_combos(p));
    }
    for spec in &a.combos {
        combos.push(parse_combo(spec)?);
    }
    if combos.is_empty() {
        return Err(CliError::Input(
            "simulate needs --preset or at least one --combo".into(),
        ));
    }
    let sizes: Vec<usize> = a
        .sizes
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Input(format!("--sizes: bad count '{s}'")))
        })
        .collect::<Result<_, _>>()?;

    let mut plan = SimPlan::new(combos, sizes, a.seed);
    plan.replicates = a.replicates;
    plan.level = a.level;
    plan.bootstrap_b = a.bootstrap_b;
    plan.mc_quantile_m = a.mc_m;

    let report: SimReport = match a.metric {
        Metric::Bias => run_bias_mad(&plan)?,
        Metric::Coverage => run_coverage(&plan, a.bootstrap)?,
    };
    let content = match a.format {
        Format::Json => format!("{}\n", report.to_json()),
        _ => report.to_csv(),
    };
    emit(a.output.as_deref(), &content)
}
