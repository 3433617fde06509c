//! Command-line front end: argument parsing, experiment execution and JSON reporting.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::approx_svd::{fast_frobenius_svd, fast_spectral_svd, srht_lowrank, srht_lowrank_size};
use crate::bounds::{Bound, Guarantee};
use crate::cx::{
    cssp, cx_frobenius, cx_spectral, interpolative_decomposition, lower_bound_instance, lower_bound_ratio, CsspMode,
    CxResult, FrobeniusMode, NormKind, SpectralMode,
};
use crate::error::{Error, Result};
use crate::io::{load_matrix, MatrixFormat};
use crate::kmeans::{kmeans_cost, lloyd, reduce_features, ClusterAssignment, FeatureMethod};
use crate::linalg::{residual_after_projection, select_columns, singular_values, spectral_norm, svd, Matrix, Vector};
use crate::regression::{build_coreset, evaluate_coreset, Constraint, CoresetMethod, CoresetOptions, RegressionProblem};
use crate::report::{error_json, BenchReport, InputDescriptor, Parameters, SeedTag};
use crate::rng::derive_seed;
use crate::synthetic::{blobs, SyntheticSpec};
use crate::WidthPolicy;

#[derive(Debug, Parser)]
#[command(name = "matsketch", version, about = "Column and row sampling experiments with JSON reports")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Input selection, seeding and output shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Read the input matrix from a file.
    #[arg(long = "in", value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Format of `--in`.
    #[arg(long, value_enum, default_value = "auto")]
    pub format: MatrixFormat,
    /// Generate the input: lowrank:m,n,k,noise | blobs:m,n,k,sep | lowerbound:n,alpha | regression:m,n,noise.
    #[arg(long, conflicts_with = "input", value_name = "SPEC")]
    pub synthetic: Option<String>,
    /// Seed of the randomized algorithm. Trial t > 0 uses a seed derived from it.
    #[arg(long, env = "MATSKETCH_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Seed of the synthetic generator.
    #[arg(long, default_value_t = 1)]
    pub data_seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// CX approximation with r > k sampled columns.
    Cx(CxArgs),
    /// Column subset selection with exactly k columns.
    Cssp(CsspArgs),
    /// Interpolative decomposition A ≈ CX.
    Id(IdArgs),
    /// Regression coreset; the last input column is the response b.
    Coreset(CoresetArgs),
    /// Dimension reduction for k-means.
    Kmeans(KmeansArgs),
    /// Randomized approximate SVD.
    SketchSvd(SketchSvdArgs),
    /// Worst-case instance for column sampling.
    Lowerbound(LowerboundArgs),
    /// Run a fixed set of small experiments and emit all reports.
    BenchSuite(BenchArgs),
}

/// Algorithm variant for `cx`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CxMode {
    Deterministic,
    Fast,
    Relative,
}

#[derive(Debug, Args)]
pub struct CxArgs {
    /// Norm of the guarantee.
    #[arg(value_enum)]
    pub norm: NormKind,
    #[arg(long, value_enum, default_value = "deterministic")]
    pub mode: CxMode,
    #[arg(short)]
    pub k: usize,
    #[arg(short)]
    pub r: usize,
    /// Independent runs of a randomized mode.
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CsspArgs {
    #[arg(long, value_enum, default_value = "spectral")]
    pub mode: CsspMode,
    #[arg(short)]
    pub k: usize,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct IdArgs {
    #[arg(short)]
    pub k: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CoresetArgs {
    #[arg(long, value_enum, default_value = "barrier")]
    pub method: CoresetMethod,
    #[arg(long, default_value_t = 0.5)]
    pub eps: f64,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, value_enum, default_value = "none")]
    pub constraint: Constraint,
    /// Accept coreset sizes larger than the number of rows.
    #[arg(long)]
    pub allow_wider: bool,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct KmeansArgs {
    #[arg(long, value_enum, default_value = "svd")]
    pub method: FeatureMethod,
    #[arg(short)]
    pub k: usize,
    #[arg(long, default_value_t = 1.0 / 3.0)]
    pub eps: f64,
    /// Multiplier of the reduced dimension for select and rp.
    #[arg(long, default_value_t = 4.0)]
    pub c0: f64,
    /// Lloyd restarts per clustering.
    #[arg(long, default_value_t = 5)]
    pub restarts: usize,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[command(flatten)]
    pub common: Common,
}

/// Algorithm variant for `sketch-svd`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SketchSvdMode {
    Frobenius,
    Spectral,
    Srht,
}

#[derive(Debug, Args)]
pub struct SketchSvdArgs {
    #[arg(long, value_enum, default_value = "frobenius")]
    pub mode: SketchSvdMode,
    #[arg(short)]
    pub k: usize,
    #[arg(long, default_value_t = 0.5)]
    pub eps: f64,
    /// Accept SRHT sketches wider than the input.
    #[arg(long)]
    pub allow_wider: bool,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct LowerboundArgs {
    #[arg(short)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(short)]
    pub r: usize,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, env = "MATSKETCH_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

/// What a run of the front end produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse `args` (including the program name), run the command and render its output.
///
/// Exit codes: 0 success, 2 argument or precondition failure, 3 numeric failure, 4 I/O or parse failure.
pub fn run_cli<I, S>(args: I) -> CliOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    CliOutput { code: 0, stdout: e.to_string(), stderr: String::new() }
                }
                _ => {
                    let err = Error::Argument(e.to_string().trim().to_string());
                    CliOutput { code: err.exit_code(), stdout: String::new(), stderr: error_json(&err) }
                }
            };
        }
    };
    let out = output_path(&cli.command);
    let rendered = match &cli.command {
        Command::BenchSuite(b) => bench_suite(b).map(|reports| {
            serde_json::to_string_pretty(&reports).expect("reports serialize")
        }),
        cmd => execute(cmd).map(|r| r.to_json()),
    };
    let written = rendered.and_then(|text| match out {
        Some(path) => {
            std::fs::write(path, format!("{text}\n"))?;
            Ok(String::new())
        }
        None => Ok(format!("{text}\n")),
    });
    match written {
        Ok(stdout) => CliOutput { code: 0, stdout, stderr: String::new() },
        Err(err) => CliOutput { code: err.exit_code(), stdout: String::new(), stderr: error_json(&err) },
    }
}

fn output_path(cmd: &Command) -> Option<&PathBuf> {
    match cmd {
        Command::Cx(a) => a.common.out.as_ref(),
        Command::Cssp(a) => a.common.out.as_ref(),
        Command::Id(a) => a.common.out.as_ref(),
        Command::Coreset(a) => a.common.out.as_ref(),
        Command::Kmeans(a) => a.common.out.as_ref(),
        Command::SketchSvd(a) => a.common.out.as_ref(),
        Command::Lowerbound(a) => a.out.as_ref(),
        Command::BenchSuite(a) => a.out.as_ref(),
    }
}

/// Run one experiment subcommand.
pub fn execute(cmd: &Command) -> Result<BenchReport> {
    let report = match cmd {
        Command::Cx(a) => run_cx(a),
        Command::Cssp(a) => run_cssp(a),
        Command::Id(a) => run_id(a),
        Command::Coreset(a) => run_coreset(a),
        Command::Kmeans(a) => run_kmeans(a),
        Command::SketchSvd(a) => run_sketch_svd(a),
        Command::Lowerbound(a) => run_lowerbound(a),
        Command::BenchSuite(_) => Err(Error::arg("bench-suite produces several reports; use run_cli")),
    }?;
    Ok(report.seal())
}

const SUITE: &[&str] = &[
    "cx frobenius --mode deterministic -k 2 -r 8",
    "cx spectral --mode deterministic -k 2 -r 8",
    "cx frobenius --mode relative -k 2 -r 40",
    "cssp --mode spectral -k 2 --synthetic lowrank:60,12,2,0.1",
    "cssp --mode frobenius -k 2 --synthetic lowrank:60,12,2,0.1",
    "id -k 3 --synthetic lowrank:60,40,3,0.01",
    "coreset --method barrier --eps 0.5",
    "kmeans --method svd -k 3",
    "sketch-svd --mode frobenius -k 3",
    "sketch-svd --mode spectral -k 2 --eps 1",
    "lowerbound -n 5 --alpha 1 -r 2",
];

/// Run the fixed experiment list; reports are sorted by experiment id.
pub fn bench_suite(args: &BenchArgs) -> Result<Vec<BenchReport>> {
    let mut reports = Vec::new();
    for (i, line) in SUITE.iter().enumerate() {
        let mut argv: Vec<String> = vec!["matsketch".into()];
        argv.extend(line.split_whitespace().map(String::from));
        if !line.starts_with("lowerbound") {
            argv.extend(["--seed".into(), derive_seed(args.seed, i as u64).to_string()]);
        }
        if ["cx frobenius --mode relative", "cssp", "sketch-svd", "kmeans"].iter().any(|p| line.starts_with(p)) {
            argv.extend(["--trials".into(), args.trials.to_string()]);
        }
        let cli = Cli::try_parse_from(&argv).map_err(|e| Error::Internal(format!("suite entry {line:?}: {e}")))?;
        reports.push(execute(&cli.command)?);
    }
    reports.sort_by(|a, b| a.experiment.cmp(&b.experiment));
    Ok(reports)
}

fn trial_seed(seed: u64, t: usize) -> u64 {
    if t == 0 {
        seed
    } else {
        derive_seed(seed, t as u64)
    }
}

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(Error::arg("trials must be at least 1"));
    }
    Ok(())
}

fn load_input(common: &Common, default: &str) -> Result<(Matrix, InputDescriptor, Option<SyntheticSpec>)> {
    if let Some(path) = &common.input {
        let a = load_matrix(path, common.format)?;
        let input = InputDescriptor { source: format!("file:{}", path.display()), rows: a.nrows(), cols: a.ncols(), seed: None };
        return Ok((a, input, None));
    }
    let spec: SyntheticSpec = common.synthetic.as_deref().unwrap_or(default).parse()?;
    let a = spec.generate(common.data_seed)?;
    let input = InputDescriptor {
        source: format!("synthetic:{spec}"),
        rows: a.nrows(),
        cols: a.ncols(),
        seed: spec.is_random().then_some(common.data_seed),
    };
    Ok((a, input, Some(spec)))
}

/// Whether a set of measurements (squared when the bound is) respects the bound.
fn judge(bound: &Bound, measured: &[f64]) -> bool {
    match bound.guarantee {
        Guarantee::PerInstance => measured.iter().all(|&m| bound.admits(m)),
        Guarantee::Expectation => bound.admits(mean(measured)),
        Guarantee::Probability { probability } => {
            let hits = measured.iter().filter(|&&m| bound.admits(m)).count();
            hits as f64 >= probability * measured.len() as f64
        }
    }
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn cx_report(
    experiment: String,
    algorithm: &str,
    input: InputDescriptor,
    seed: SeedTag,
    parameters: Parameters,
    results: Vec<CxResult>,
    seconds: f64,
) -> BenchReport {
    let first = &results[0];
    let mut report = BenchReport::new(experiment, algorithm, input, seed);
    report.parameters = parameters;
    report
        .measure("error", first.error())
        .measure("baseline", first.baseline)
        .measure("rank_k_error_spectral", first.rank_k_error_spectral)
        .measure("rank_k_error_frobenius", first.rank_k_error_frobenius)
        .measure("columns", first.plan.len() as f64)
        .measure("distinct_columns", first.plan.distinct() as f64)
        .ratio("error", first.ratio())
        .time("total", seconds);
    let measured: Vec<f64> = results
        .iter()
        .map(|r| if r.bound.squared { r.error().powi(2) } else { r.error() })
        .collect();
    if results.len() > 1 {
        let ratios: Vec<f64> = results.iter().map(CxResult::ratio).collect();
        report
            .measure("mean_error", mean(&results.iter().map(CxResult::error).collect::<Vec<_>>()))
            .measure("mean_measured", mean(&measured))
            .ratio("mean_error", mean(&ratios))
            .ratio("mean_squared_error", mean(&ratios.iter().map(|r| r * r).collect::<Vec<_>>()));
    }
    report.satisfied = Some(judge(&first.bound, &measured));
    report.bound = Some(first.bound.clone());
    report.selection = Some(first.plan.indices());
    report.warnings = first.warnings.clone();
    if first.bound.estimator_slack != 1.0 {
        report.notes.push(format!(
            "the rank-k projection is Frobenius-optimal; the spectral check allows a factor {} on top of the bound",
            first.bound.estimator_slack
        ));
    }
    report
}

fn run_cx(args: &CxArgs) -> Result<BenchReport> {
    check_trials(args.trials)?;
    let (a, input, _) = load_input(&args.common, "lowrank:100,80,2,0.1")?;
    let randomized = args.mode != CxMode::Deterministic;
    let trials = if randomized { args.trials } else { 1 };
    let mode_name = format!("{:?}", args.mode).to_lowercase();
    let norm_name = format!("{:?}", args.norm).to_lowercase();
    let start = Instant::now();
    let mut results = Vec::with_capacity(trials);
    for t in 0..trials {
        let seed = trial_seed(args.common.seed, t);
        results.push(match (args.norm, args.mode) {
            (NormKind::Spectral, CxMode::Deterministic) => cx_spectral(&a, args.k, args.r, SpectralMode::Deterministic, seed)?,
            (NormKind::Spectral, CxMode::Fast) => cx_spectral(&a, args.k, args.r, SpectralMode::Fast, seed)?,
            (NormKind::Spectral, CxMode::Relative) => {
                return Err(Error::arg("relative mode exists only for the Frobenius norm"))
            }
            (NormKind::Frobenius, CxMode::Deterministic) => {
                cx_frobenius(&a, args.k, args.r, FrobeniusMode::Deterministic, seed)?
            }
            (NormKind::Frobenius, CxMode::Fast) => cx_frobenius(&a, args.k, args.r, FrobeniusMode::Fast, seed)?,
            (NormKind::Frobenius, CxMode::Relative) => {
                cx_frobenius(&a, args.k, args.r, FrobeniusMode::Relative, seed)?
            }
        });
    }
    let seconds = start.elapsed().as_secs_f64();
    let params = Parameters {
        k: Some(args.k),
        r: Some(args.r),
        trials: Some(trials),
        mode: Some(mode_name.clone()),
        ..Parameters::default()
    };
    let seed = if randomized { SeedTag::Seed(args.common.seed) } else { SeedTag::Deterministic };
    Ok(cx_report(
        format!("cx-{norm_name}-{mode_name}"),
        &format!("cx_{norm_name}/{mode_name}"),
        input,
        seed,
        params,
        results,
        seconds,
    ))
}

fn run_cssp(args: &CsspArgs) -> Result<BenchReport> {
    check_trials(args.trials)?;
    let (a, input, _) = load_input(&args.common, "lowrank:60,12,2,0.1")?;
    let mode_name = match args.mode {
        CsspMode::Spectral => "spectral",
        CsspMode::Frobenius => "frobenius",
        CsspMode::TwoStage => "two_stage",
    };
    let start = Instant::now();
    let results = (0..args.trials)
        .map(|t| cssp(&a, args.k, args.mode, args.delta, trial_seed(args.common.seed, t)))
        .collect::<Result<Vec<_>>>()?;
    let seconds = start.elapsed().as_secs_f64();
    let params = Parameters {
        k: Some(args.k),
        delta: (args.mode == CsspMode::TwoStage).then_some(args.delta),
        trials: Some(args.trials),
        mode: Some(mode_name.into()),
        ..Parameters::default()
    };
    let mut report = cx_report(
        format!("cssp-{mode_name}"),
        &format!("cssp/{mode_name}"),
        input,
        SeedTag::Seed(args.common.seed),
        params,
        results,
        seconds,
    );
    report.notes.push("errors are ‖A − CC⁺A‖ for the k selected columns".into());
    Ok(report)
}

fn run_id(args: &IdArgs) -> Result<BenchReport> {
    let (a, input, _) = load_input(&args.common, "lowrank:60,40,3,0.01")?;
    let start = Instant::now();
    let id = interpolative_decomposition(&a, args.k, args.common.seed)?;
    let seconds = start.elapsed().as_secs_f64();
    let resid = &a - &id.c * &id.x;
    let f = svd(&a)?;
    let sx = singular_values(&id.x)?;
    let sigma_min = sx.get(args.k - 1).copied().unwrap_or(0.0);
    let max_abs = id.x.amax();
    let mut report = BenchReport::new("id", "interpolative_decomposition", input, SeedTag::Seed(args.common.seed));
    report.parameters = Parameters { k: Some(args.k), ..Parameters::default() };
    report
        .measure("error_spectral", spectral_norm(&resid)?)
        .measure("error_frobenius", resid.norm())
        .measure("baseline_spectral", f.sigma(args.k))
        .measure("baseline_frobenius", f.tail_frobenius(args.k))
        .measure("max_abs_x", max_abs)
        .measure("sigma_min_x", sigma_min)
        .ratio("error_spectral", crate::cx::ratio(spectral_norm(&resid)?, f.sigma(args.k)))
        .time("total", seconds);
    let tol = 1e-9;
    report.satisfied = Some(max_abs <= 2.0 + tol && sigma_min >= 1.0 - tol);
    report.notes.push("satisfied means max |X_ij| <= 2 and sigma_min(X) >= 1".into());
    report.selection = Some(id.indices);
    Ok(report)
}

fn split_regression(ab: &Matrix) -> Result<(Matrix, Vector)> {
    if ab.ncols() < 2 {
        return Err(Error::arg("regression input needs at least two columns: [A | b]"));
    }
    let n = ab.ncols() - 1;
    Ok((ab.columns(0, n).into_owned(), ab.column(n).into_owned()))
}

fn run_coreset(args: &CoresetArgs) -> Result<BenchReport> {
    check_trials(args.trials)?;
    let (ab, input, _) = load_input(&args.common, "regression:6000,3,0.5")?;
    let (a, b) = split_regression(&ab)?;
    let problem = RegressionProblem::new(a, b, args.constraint)?;
    let randomized = args.method != CoresetMethod::Barrier;
    let trials = if randomized { args.trials } else { 1 };
    let width = if args.allow_wider { WidthPolicy::AllowWider } else { WidthPolicy::Strict };
    let method_name = format!("{:?}", args.method).to_lowercase();
    let start = Instant::now();
    let mut evals = Vec::with_capacity(trials);
    let mut first = None;
    for t in 0..trials {
        let opts = CoresetOptions::new(args.method, args.eps)
            .delta(args.delta)
            .seed(trial_seed(args.common.seed, t))
            .width(width);
        let core = build_coreset(&problem, opts)?;
        evals.push(evaluate_coreset(&problem, &core)?);
        first.get_or_insert(core);
    }
    let seconds = start.elapsed().as_secs_f64();
    let core = first.expect("at least one trial");
    let guarantee = match args.method {
        CoresetMethod::Barrier => Guarantee::PerInstance,
        CoresetMethod::Subspace => Guarantee::Probability { probability: 1.0 - args.delta },
        CoresetMethod::Srht => Guarantee::Probability { probability: 0.95 - args.delta },
    };
    let e0 = &evals[0];
    let bound = Bound::new("1 + eps", 1.0 + args.eps, e0.full_residual_sq, guarantee);
    let ratios: Vec<f64> = evals.iter().map(|e| e.ratio).collect();
    let mut report = BenchReport::new(
        format!("coreset-{method_name}"),
        format!("build_coreset/{method_name}"),
        input,
        if randomized { SeedTag::Seed(args.common.seed) } else { SeedTag::Deterministic },
    );
    report.parameters = Parameters {
        eps: Some(args.eps),
        delta: randomized.then_some(args.delta),
        r: Some(core.r),
        trials: Some(trials),
        method: Some(method_name),
        mode: Some(format!("{:?}", args.constraint).to_lowercase()),
        ..Parameters::default()
    };
    report
        .measure("full_residual_sq", e0.full_residual_sq)
        .measure("coreset_residual_sq", e0.coreset_residual_sq)
        .measure("rows", e0.rows as f64)
        .measure("distinct_rows", e0.distinct_rows as f64)
        .measure("rank_y", core.rank_y as f64)
        .ratio("residual_sq", e0.ratio)
        .time("total", seconds)
        .time("full_solve", e0.full_seconds)
        .time("coreset_solve", e0.coreset_seconds);
    if trials > 1 {
        let hits = ratios.iter().filter(|&&r| r <= 1.0 + args.eps).count();
        report.measure("successes", hits as f64).ratio("max_residual_sq", ratios.iter().cloned().fold(0.0, f64::max));
    }
    report.satisfied = Some(match guarantee {
        Guarantee::PerInstance => ratios.iter().all(|&r| r <= (1.0 + args.eps) * (1.0 + 1e-9)),
        _ => {
            let hits = ratios.iter().filter(|&&r| r <= (1.0 + args.eps) * (1.0 + 1e-9)).count();
            hits as f64 >= guarantee_probability(guarantee) * trials as f64
        }
    });
    report.bound = Some(bound);
    report.selection = Some(core.plan.indices());
    report.warnings = core.warnings;
    Ok(report)
}

fn guarantee_probability(g: Guarantee) -> f64 {
    match g {
        Guarantee::Probability { probability } => probability,
        _ => 1.0,
    }
}

fn run_kmeans(args: &KmeansArgs) -> Result<BenchReport> {
    check_trials(args.trials)?;
    let (a, input, spec) = load_input(&args.common, "blobs:300,100,3,10")?;
    let planted = match spec {
        Some(SyntheticSpec::Blobs { m, n, k, sep }) => Some(blobs(m, n, k, sep, args.common.data_seed)?.labels),
        _ => None,
    };
    let method_name = format!("{:?}", args.method).to_lowercase();
    let start = Instant::now();
    let full = lloyd(&a, args.k, args.restarts, args.common.seed)?;
    let full_cost = kmeans_cost(&a, &full)?;
    let mut ratios = Vec::with_capacity(args.trials);
    let mut recovered = 0;
    let mut first = None;
    for t in 0..args.trials {
        let seed = trial_seed(args.common.seed, t);
        let red = reduce_features(&a, args.k, args.eps, args.method, args.c0, seed)?;
        let labels = lloyd(&red.c, args.k, args.restarts, seed)?;
        let cost = kmeans_cost(&a, &labels)?;
        ratios.push(crate::cx::ratio(cost, full_cost));
        if let Some(p) = &planted {
            if labels.same_partition(&ClusterAssignment::new(p.clone(), args.k)?) {
                recovered += 1;
            }
        }
        first.get_or_insert(red);
    }
    let seconds = start.elapsed().as_secs_f64();
    let red = first.expect("at least one trial");
    let mut report = BenchReport::new(
        format!("kmeans-{method_name}"),
        format!("reduce_features/{method_name}"),
        input,
        SeedTag::Seed(args.common.seed),
    );
    report.parameters = Parameters {
        k: Some(args.k),
        r: Some(red.r),
        eps: Some(args.eps),
        c0: (args.method != FeatureMethod::Svd).then_some(args.c0),
        trials: Some(args.trials),
        method: Some(method_name),
        ..Parameters::default()
    };
    let at_most_4 = ratios.iter().filter(|&&r| r <= 4.0).count();
    report
        .measure("full_cost", full_cost)
        .measure("reduced_dimension", red.r as f64)
        .measure("fraction_ratio_at_most_4", at_most_4 as f64 / ratios.len() as f64)
        .ratio("cost", ratios[0])
        .ratio("mean_cost", mean(&ratios))
        .time("total", seconds);
    if planted.is_some() {
        report.measure("planted_recovery_fraction", recovered as f64 / args.trials as f64);
    }
    report.notes.push(
        "the clusterer is Lloyd with k-means++ seeding; its approximation factor is not certified, so no theorem bound is checked"
            .into(),
    );
    report.selection = red.plan.as_ref().map(|p| p.indices());
    report.warnings = red.warnings;
    Ok(report)
}

fn run_sketch_svd(args: &SketchSvdArgs) -> Result<BenchReport> {
    check_trials(args.trials)?;
    let (a, input, _) = load_input(&args.common, "lowrank:100,80,3,0.1")?;
    let f = svd(&a)?;
    let width = if args.allow_wider { WidthPolicy::AllowWider } else { WidthPolicy::Strict };
    let k = args.k;
    let start = Instant::now();
    let mut measured = Vec::with_capacity(args.trials);
    let mut extra = None;
    for t in 0..args.trials {
        let seed = trial_seed(args.common.seed, t);
        let value = match args.mode {
            SketchSvdMode::Frobenius => {
                let basis = fast_frobenius_svd(&a, k, args.eps, seed)?;
                extra.get_or_insert((basis.oversampling, basis.power));
                basis.residual(&a).norm_squared()
            }
            SketchSvdMode::Spectral => {
                let basis = fast_spectral_svd(&a, k, args.eps, seed)?;
                extra.get_or_insert((basis.oversampling, basis.power));
                spectral_norm(&basis.residual(&a))?
            }
            SketchSvdMode::Srht => {
                let approx = srht_lowrank(&a, k, args.eps, seed, width)?;
                extra.get_or_insert((srht_lowrank_size(k, a.ncols(), args.eps), 0));
                (&a - approx).norm_squared()
            }
        };
        measured.push(value);
    }
    let seconds = start.elapsed().as_secs_f64();
    let bound = match args.mode {
        SketchSvdMode::Frobenius => {
            Bound::squared("1 + eps", 1.0 + args.eps, f.tail_frobenius(k), Guarantee::Expectation)
        }
        SketchSvdMode::Spectral => Bound::new(
            "sqrt(2) + eps",
            std::f64::consts::SQRT_2 + args.eps,
            f.sigma(k),
            Guarantee::Expectation,
        ),
        SketchSvdMode::Srht => Bound::squared(
            "1 + eps",
            1.0 + args.eps,
            f.tail_frobenius(k),
            Guarantee::Probability { probability: 0.7 },
        ),
    };
    let baseline = match args.mode {
        SketchSvdMode::Spectral => f.sigma(k),
        _ => f.tail_frobenius(k).powi(2),
    };
    let mode_name = format!("{:?}", args.mode).to_lowercase();
    let mut report = BenchReport::new(
        format!("sketch-svd-{mode_name}"),
        format!("sketch_svd/{mode_name}"),
        input,
        SeedTag::Seed(args.common.seed),
    );
    report.parameters = Parameters {
        k: Some(k),
        eps: Some(args.eps),
        trials: Some(args.trials),
        mode: Some(mode_name),
        ..Parameters::default()
    };
    let (p, q) = extra.unwrap_or((0, 0));
    let key = if args.mode == SketchSvdMode::Spectral { "residual_spectral" } else { "residual_frobenius_sq" };
    report
        .measure(key, measured[0])
        .measure(&format!("mean_{key}"), mean(&measured))
        .measure("baseline", baseline)
        .measure(if args.mode == SketchSvdMode::Srht { "sketch_size" } else { "oversampling" }, p as f64)
        .measure("power", q as f64)
        .ratio("residual", crate::cx::ratio(measured[0], baseline))
        .ratio("mean_residual", crate::cx::ratio(mean(&measured), baseline))
        .time("total", seconds);
    report.satisfied = Some(judge(&bound, &measured));
    report.bound = Some(bound);
    Ok(report)
}

fn run_lowerbound(args: &LowerboundArgs) -> Result<BenchReport> {
    if args.r == 0 || args.r >= args.n {
        return Err(Error::arg(format!("need 1 <= r < n = {}, got r = {}", args.n, args.r)));
    }
    let a = lower_bound_instance(args.n, args.alpha)?;
    let start = Instant::now();
    let idx: Vec<usize> = (0..args.r).collect();
    let resid = residual_after_projection(&a, &select_columns(&a, &idx))?;
    let err = spectral_norm(&resid)?;
    let tail = svd(&a)?.sigma(1);
    let seconds = start.elapsed().as_secs_f64();
    let expected = lower_bound_ratio(args.n, args.r, args.alpha);
    let measured = (err / tail).powi(2);
    let input = InputDescriptor {
        source: format!("synthetic:{}", SyntheticSpec::LowerBound { n: args.n, alpha: args.alpha }),
        rows: a.nrows(),
        cols: a.ncols(),
        seed: None,
    };
    let mut report = BenchReport::new("lowerbound", "lower_bound_instance", input, SeedTag::Deterministic);
    report.parameters = Parameters {
        k: Some(1),
        n: Some(args.n),
        r: Some(args.r),
        alpha: Some(args.alpha),
        ..Parameters::default()
    };
    report
        .measure("error_spectral", err)
        .measure("baseline", tail)
        .measure("expected_ratio_sq", expected)
        .ratio("error_spectral_sq", measured)
        .time("total", seconds);
    report.satisfied = Some((measured - expected).abs() <= 1e-9 * expected);
    report.notes.push("every r-column subset attains the same ratio; the first r columns are used".into());
    report.selection = Some(idx);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(line: &str) -> CliOutput {
        run_cli(std::iter::once("matsketch").chain(line.split_whitespace()))
    }

    #[test]
    fn lowerbound_ratio_two() {
        let out = run("lowerbound -n 5 --alpha 1 -r 2");
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert!((v["ratios"]["error_spectral_sq"].as_f64().unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(v["seed"], "deterministic");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run("cx frobenius -k 2").code, 2);
        assert_eq!(run("cx spectral --mode relative -k 2 -r 8").code, 2);
        assert_eq!(run("id -k 3 --in /nonexistent/matrix.mtx").code, 4);
        assert_eq!(run("--help").code, 0);
        let err: serde_json::Value = serde_json::from_str(&run("lowerbound -n 5 -r 9").stderr).unwrap();
        assert_eq!(err["error"]["kind"], "argument");
    }
}
