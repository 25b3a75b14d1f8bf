//! Command-line front end: CSV in, low-rank/sparse decomposition out, plus
//! benchmark generation, anomaly flagging, and error reporting.

mod csv_io;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use hankel_rpca::eval::{flag_anomalies, masked_errors, FlagParams};
use hankel_rpca::hankel::hankelize;
use hankel_rpca::solvers::{
    default_gamma, ht_rmc, ht_rpca, rpca, DecompositionResult, ObservationMask, SolverConfig,
};
use hankel_rpca::synth::{gen_mask, gen_synthetic, SynthConfig};
use hankel_rpca::tensor::tnn;
use hankel_rpca::BoolMatrix;

use csv_io::{read_matrix_csv, write_bool_csv, write_index_csv, write_matrix_csv};
use report::RunReport;

#[derive(Parser)]
#[command(
    name = "hankel-rpca",
    version,
    about = "Robust low-rank + sparse decomposition of multivariate time series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic corrupted benchmark dataset as CSV files.
    Synth(SynthArgs),
    /// Decompose a CSV matrix into low-rank and sparse-anomaly components.
    Detect(DetectArgs),
    /// Flag cells deviating from their day-over-day mean by more than
    /// xi standard deviations.
    Flag(FlagArgs),
    /// Masked MAE/RMSE between a truth CSV and an estimate CSV.
    Eval(EvalArgs),
    /// Run the synthetic benchmark over several seeds and print a table.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SynthArgs {
    /// Number of series (rows).
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Number of timestamps (columns).
    #[arg(long, default_value_t = 1200)]
    t: usize,
    /// True rank of the clean component.
    #[arg(long, default_value_t = 4)]
    rank: usize,
    #[arg(long, default_value_t = 20.0)]
    sigma_u: f64,
    #[arg(long, default_value_t = 40.0)]
    sigma_s: f64,
    #[arg(long, default_value_t = 0.1)]
    sigma_noise: f64,
    /// Fraction of cells carrying an anomaly.
    #[arg(long, default_value_t = 0.1)]
    anomaly_ratio: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SolverKind {
    Rpca,
    HtRpca,
    HtRmc,
}

impl SolverKind {
    fn name(self) -> &'static str {
        match self {
            SolverKind::Rpca => "rpca",
            SolverKind::HtRpca => "ht-rpca",
            SolverKind::HtRmc => "ht-rmc",
        }
    }
}

#[derive(Args)]
struct DetectArgs {
    /// Input CSV (rows = sensors, columns = timestamps; empty cell or NaN =
    /// missing).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    solver: SolverKind,
    /// Delay embedding length; required for ht-rpca and ht-rmc, ignored by
    /// rpca.
    #[arg(long)]
    tau: Option<usize>,
    /// Sparsity trade-off; defaults to 1/sqrt(max(N, T)).
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long, default_value_t = 5e-5)]
    rho0: f64,
    #[arg(long, default_value_t = 1.1)]
    beta: f64,
    #[arg(long, default_value_t = 1e6)]
    rho_max: f64,
    #[arg(long, default_value_t = 1e-5)]
    tol: f64,
    #[arg(long, default_value_t = 500)]
    max_iter: usize,
    /// Additionally drop this fraction of observed entries at random
    /// (ht-rmc only).
    #[arg(long)]
    missing: Option<f64>,
    /// Seed for --missing.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Skip the first CSV line.
    #[arg(long)]
    header: bool,
    /// Std-deviation multiplier for flags.csv.
    #[arg(long, default_value_t = 2.0)]
    xi: f64,
    /// Timestamps per day; with --days, also writes flags.csv.
    #[arg(long)]
    period: Option<usize>,
    /// Number of days.
    #[arg(long)]
    days: Option<usize>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct FlagArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 2.0)]
    xi: f64,
    #[arg(long)]
    period: usize,
    #[arg(long)]
    days: usize,
    #[arg(long)]
    header: bool,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct EvalArgs {
    /// Ground-truth CSV.
    #[arg(long)]
    truth: PathBuf,
    /// Estimate CSV.
    #[arg(long)]
    estimate: PathBuf,
    /// Optional CSV whose missing cells define the unobserved set.
    #[arg(long)]
    mask: Option<PathBuf>,
    #[arg(long)]
    header: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Run the built-in synthetic benchmark (N=100, T=1200, rank 4,
    /// 10% anomalies).
    #[arg(long)]
    paper_synthetic: bool,
    /// Number of seeds (0, 1, ..., seeds-1).
    #[arg(long, default_value_t = 5)]
    seeds: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Synth(args) => run_synth(args),
        Command::Detect(args) => run_detect(args),
        Command::Flag(args) => run_flag(args),
        Command::Eval(args) => run_eval(args),
        Command::Bench(args) => run_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run_synth(args: SynthArgs) -> Result<()> {
    let cfg = SynthConfig {
        n: args.n,
        t: args.t,
        r: args.rank,
        sigma_u: args.sigma_u,
        sigma_s: args.sigma_s,
        sigma_noise: args.sigma_noise,
        anomaly_ratio: args.anomaly_ratio,
        seed: args.seed,
    };
    let data = gen_synthetic(&cfg)?;
    std::fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;
    write_matrix_csv(&args.out_dir.join("corrupted.csv"), &data.corrupted, None)?;
    write_matrix_csv(&args.out_dir.join("low_rank.csv"), &data.low_rank, None)?;
    write_matrix_csv(&args.out_dir.join("sparse.csv"), &data.sparse, None)?;
    write_index_csv(&args.out_dir.join("anomaly_index.csv"), &data.anomaly_index)?;
    eprintln!(
        "wrote corrupted.csv, low_rank.csv, sparse.csv, anomaly_index.csv to {}",
        args.out_dir.display()
    );
    Ok(())
}

fn run_detect(args: DetectArgs) -> Result<()> {
    let (matrix, csv_mask) = read_matrix_csv(&args.input, args.header)?;
    let (n, t) = matrix.dims();

    if args.missing.is_some() && args.solver != SolverKind::HtRmc {
        bail!("--missing is only valid with --solver ht-rmc");
    }
    if args.solver != SolverKind::HtRmc && !csv_mask.is_full() {
        bail!(
            "{} has missing entries; use --solver ht-rmc",
            args.input.display()
        );
    }

    let gamma = args.gamma.unwrap_or_else(|| default_gamma(n, t));
    let tau = match args.solver {
        SolverKind::Rpca => 1,
        _ => args.tau.context("--tau is required for ht-rpca and ht-rmc")?,
    };
    let mut cfg = SolverConfig::new(tau, gamma);
    cfg.rho0 = args.rho0;
    cfg.beta = args.beta;
    cfg.rho_max = args.rho_max;
    cfg.tol = args.tol;
    cfg.max_iter = args.max_iter;

    let started = Instant::now();
    let result = match args.solver {
        SolverKind::Rpca => rpca(&matrix, &cfg)?,
        SolverKind::HtRpca => ht_rpca(&matrix, &cfg)?,
        SolverKind::HtRmc => {
            let mask = match args.missing {
                None => csv_mask,
                Some(ratio) => {
                    let dropped = gen_mask(n, t, ratio, args.seed)?;
                    let combined = BoolMatrix::from_fn(n, t, |i, j| {
                        csv_mask.is_observed(i, j) && dropped.is_observed(i, j)
                    });
                    ObservationMask::new(combined)
                        .context("no observed entries left after --missing drop")?
                }
            };
            ht_rmc(&matrix, &mask, &cfg)?
        }
    };
    let wall_time_ms = started.elapsed().as_millis() as u64;

    std::fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;
    write_matrix_csv(&args.out_dir.join("L.csv"), &result.low_rank, None)?;
    write_matrix_csv(&args.out_dir.join("S.csv"), &result.sparse, None)?;
    if let Some(completed) = &result.completed {
        write_matrix_csv(&args.out_dir.join("completed.csv"), completed, None)?;
    }

    match (args.period, args.days) {
        (Some(period), Some(days)) => {
            // Flag the complete observation matrix (the completed estimate
            // for ht-rmc).
            let target = result.completed.as_ref().unwrap_or(&matrix);
            let flags = flag_anomalies(target, &FlagParams { xi: args.xi, period, days })?;
            write_bool_csv(&args.out_dir.join("flags.csv"), &flags)?;
        }
        (None, None) => {}
        _ => bail!("--period and --days must be given together"),
    }

    let report = build_report(args.solver.name(), &cfg, &result, wall_time_ms)?;
    std::fs::write(args.out_dir.join("report.json"), report.to_json())
        .with_context(|| format!("writing {}", args.out_dir.join("report.json").display()))?;
    eprintln!(
        "{}: {} iterations, converged = {}, wrote results to {}",
        args.solver.name(),
        result.iterations,
        result.converged,
        args.out_dir.display()
    );
    Ok(())
}

fn build_report(
    solver: &str,
    cfg: &SolverConfig<f64>,
    result: &DecompositionResult<f64>,
    wall_time_ms: u64,
) -> Result<RunReport> {
    let (n, t) = result.sparse.dims();
    let nonzero = result.sparse.as_slice().iter().filter(|v| v.abs() > 1e-12).count();
    let lifted = hankelize(&result.low_rank, cfg.tau)?;
    Ok(RunReport {
        solver: solver.to_string(),
        tau: cfg.tau,
        gamma: cfg.gamma,
        rho0: cfg.rho0,
        beta: cfg.beta,
        rho_max: cfg.rho_max,
        tol: cfg.tol,
        max_iter: cfg.max_iter,
        iterations: result.iterations,
        converged: result.converged,
        final_residual: result.residual_history.last().copied().unwrap_or(f64::NAN),
        tnn_final: tnn(&lifted),
        sparse_nonzero_ratio: nonzero as f64 / (n * t) as f64,
        wall_time_ms,
        residual_history: result.residual_history.clone(),
    })
}

fn run_flag(args: FlagArgs) -> Result<()> {
    let (matrix, mask) = read_matrix_csv(&args.input, args.header)?;
    if !mask.is_full() {
        bail!("{} has missing entries; flagging needs a complete matrix", args.input.display());
    }
    let flags = flag_anomalies(&matrix, &FlagParams { xi: args.xi, period: args.period, days: args.days })?;
    std::fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;
    write_bool_csv(&args.out_dir.join("flags.csv"), &flags)?;
    eprintln!("flagged {} cells, wrote flags.csv to {}", flags.count_true(), args.out_dir.display());
    Ok(())
}

fn run_eval(args: EvalArgs) -> Result<()> {
    let (truth, truth_mask) = read_matrix_csv(&args.truth, args.header)?;
    let (estimate, est_mask) = read_matrix_csv(&args.estimate, args.header)?;
    if truth.dims() != estimate.dims() {
        bail!("truth is {:?} but estimate is {:?}", truth.dims(), estimate.dims());
    }
    let (n, t) = truth.dims();
    let file_mask = match &args.mask {
        Some(path) => Some(read_matrix_csv(path, args.header)?.1),
        None => None,
    };
    let combined = BoolMatrix::from_fn(n, t, |i, j| {
        truth_mask.is_observed(i, j)
            && est_mask.is_observed(i, j)
            && file_mask.as_ref().is_none_or(|m| m.is_observed(i, j))
    });
    let mask = ObservationMask::new(combined).context("no jointly observed entries")?;
    let report = masked_errors(&truth, &estimate, &mask)?;
    println!(
        "{{\"mae\": {}, \"rmse\": {}, \"observed_count\": {}}}",
        report.mae, report.rmse, report.observed_count
    );
    Ok(())
}

fn run_bench(args: BenchArgs) -> Result<()> {
    if !args.paper_synthetic {
        bail!("nothing to benchmark: pass --paper-synthetic");
    }
    if args.seeds == 0 {
        bail!("--seeds must be >= 1");
    }
    let mut rows: Vec<(&str, Vec<f64>, Vec<f64>)> =
        vec![("rpca", Vec::new(), Vec::new()), ("ht-rpca", Vec::new(), Vec::new())];
    for seed in 0..args.seeds {
        let data = gen_synthetic(&SynthConfig::<f64>::benchmark(seed))?;
        let full = ObservationMask::full(100, 1200);

        let cfg = SolverConfig::new(1, default_gamma(100, 1200));
        let r = rpca(&data.corrupted, &cfg)?;
        let err = masked_errors(&data.sparse, &r.sparse, &full)?;
        eprintln!("seed {seed} rpca: rmse {:.4} mae {:.4} ({} iterations)", err.rmse, err.mae, r.iterations);
        rows[0].1.push(err.rmse);
        rows[0].2.push(err.mae);

        let cfg = SolverConfig::new(80, 0.002);
        let r = ht_rpca(&data.corrupted, &cfg)?;
        let err = masked_errors(&data.sparse, &r.sparse, &full)?;
        eprintln!("seed {seed} ht-rpca: rmse {:.4} mae {:.4} ({} iterations)", err.rmse, err.mae, r.iterations);
        rows[1].1.push(err.rmse);
        rows[1].2.push(err.mae);
    }

    println!("synthetic benchmark over {} seed(s): N=100 T=1200 rank=4 anomalies=10%", args.seeds);
    println!("{:<10} {:>20} {:>20}", "solver", "rmse (mean +- std)", "mae (mean +- std)");
    for (name, rmses, maes) in &rows {
        let (rm, rs) = mean_std(rmses);
        let (mm, ms) = mean_std(maes);
        println!("{name:<10} {:>20} {:>20}", format!("{rm:.4} +- {rs:.4}"), format!("{mm:.4} +- {ms:.4}"));
    }
    Ok(())
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}
