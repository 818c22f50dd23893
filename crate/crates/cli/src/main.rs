//! `polescore` command line: Monte Carlo power experiments, one-shot location
//! tests, series simulation, Padé parameter extraction and the pole
//! universality diagnostic.
//!
//! Exit codes: 0 success, 2 usage/configuration error, 3 numerical error.

use std::io::Read as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use polescore::pade::{extract_pade_parameters, ComplexObservationSeries, PoolRule};
use polescore::radial::ScoreFunction;
use polescore::rank_test::{hotelling_test, location_test, BivariateSample, CosineMode};
use polescore::rng::substream;
use polescore::sim::{
    csv_string, emit_csv, emit_svg, ks_uniformity_check, run_power_experiment,
    ExperimentConfig, StatisticChoice, TestChoice, SIGMA,
};
use polescore::stable_noise::{sample_series, SignalNoiseModel};
use polescore::{Error, Result};

#[derive(Parser)]
#[command(name = "polescore", version, about = "Rank-based location tests on Padé parameters of noisy complex series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by the experiment-driven subcommands. All are optional;
/// values resolve as defaults < config file < command line.
#[derive(Args, Default, Clone)]
struct ExperimentArgs {
    /// Flat key=value configuration file, overridden by flags
    #[arg(long)]
    config: Option<PathBuf>,
    /// Stable index in (0, 2]
    #[arg(long)]
    alpha: Option<f64>,
    /// Comma-separated SNR values
    #[arg(long, value_name = "RHO,RHO,...")]
    snr_grid: Option<String>,
    /// Sample size per replicate
    #[arg(long)]
    m: Option<usize>,
    /// Monte Carlo replicates per SNR point
    #[arg(long)]
    reps: Option<usize>,
    /// Significance level in (0, 1)
    #[arg(long)]
    beta: Option<f64>,
    /// RNG seed
    #[arg(long)]
    seed: Option<u64>,
    /// Padé order
    #[arg(long)]
    p: Option<usize>,
    /// pole|zero|res_pole|res_zero|original
    #[arg(long)]
    statistic: Option<String>,
    /// vdw|pole_score|hotelling
    #[arg(long)]
    test: Option<String>,
    /// interdirection|sign_cosine
    #[arg(long)]
    mode: Option<String>,
    /// largest_modulus|first
    #[arg(long)]
    pool_rule: Option<String>,
    /// Argument of the unit-modulus signal pole xi (radians)
    #[arg(long)]
    xi_arg: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a power experiment over the SNR grid and emit CSV (and optional SVG)
    Power {
        #[command(flatten)]
        args: ExperimentArgs,
        /// CSV output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// SVG power-curve output path
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run one location test on a CSV of re,im rows
    Test {
        #[command(flatten)]
        args: ExperimentArgs,
        /// Input path (stdin when omitted)
        input: Option<PathBuf>,
    },
    /// Emit simulated observation series as CSV k,re,im,replicate
    Sample {
        #[command(flatten)]
        args: ExperimentArgs,
        /// CSV output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the Padé parameters of an input series (CSV re,im rows)
    Pade {
        /// Input path (stdin when omitted)
        input: Option<PathBuf>,
    },
    /// Kolmogorov-Smirnov check that H0 pole moduli follow the universal law
    DensityCheck {
        #[command(flatten)]
        args: ExperimentArgs,
        /// Noise scale
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap prints help/version on stdout with success; real usage
            // errors land on stderr with code 2
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => {}
        Err(e @ Error::Config(_)) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(3);
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Power { args, out, svg } => {
            let cfg = resolve_config(&args)?;
            let rows = run_power_experiment(&cfg)?;
            match out {
                Some(path) => emit_csv(&rows, &path)?,
                None => print!("{}", csv_string(&rows)),
            }
            if let Some(path) = svg {
                emit_svg(&rows, &path)?;
            }
            Ok(())
        }
        Command::Test { args, input } => {
            let cfg = resolve_config(&args)?;
            let points = read_points(input.as_deref())?;
            let sample = BivariateSample::new(points)?;
            let result = match cfg.test {
                TestChoice::Hotelling => hotelling_test(&sample, cfg.beta)?,
                TestChoice::VanDerWaerden => {
                    location_test(&sample, ScoreFunction::VanDerWaerden, cfg.beta, cfg.mode)?
                }
                TestChoice::PoleScore => {
                    location_test(&sample, ScoreFunction::PoleScore, cfg.beta, cfg.mode)?
                }
            };
            println!("test: {}", result.test_label);
            if !result.score_label.is_empty() {
                println!("score: {}", result.score_label);
            }
            println!("statistic: {}", result.statistic);
            println!("threshold: {}", result.threshold);
            println!("p_value: {}", result.p_value);
            println!("reject: {}", result.reject);
            Ok(())
        }
        Command::Sample { args, out } => {
            let cfg = resolve_config(&args)?;
            let rho = cfg.snr_grid[0];
            let model = SignalNoiseModel::from_snr(cfg.alpha, SIGMA, rho, cfg.xi, 2 * cfg.p)?;
            let mut csv = String::from("k,re,im,replicate\n");
            for rep in 0..cfg.reps {
                let mut rng = substream(cfg.seed, &[0, rep as u64, 0]);
                let series = sample_series(&model, &mut rng)?;
                for (k, a) in series.coeffs().iter().enumerate() {
                    csv.push_str(&format!("{k},{},{},{rep}\n", a.re, a.im));
                }
            }
            match out {
                Some(path) => std::fs::write(path, csv)?,
                None => print!("{csv}"),
            }
            Ok(())
        }
        Command::Pade { input } => {
            let pts = read_points(input.as_deref())?;
            let series = ComplexObservationSeries::new(
                pts.iter().map(|p| Complex64::new(p[0], p[1])).collect(),
            )?;
            let params = extract_pade_parameters(&series)?;
            let dump = |name: &str, v: &[Complex64]| {
                for (i, z) in v.iter().enumerate() {
                    println!("{name}[{i}]: {} {}", z.re, z.im);
                }
            };
            dump("pole", &params.poles);
            dump("zero", &params.zeros);
            dump("residual", &params.residuals);
            dump("zero_residual", &params.zero_residuals);
            dump("normalized_residual", &params.normalized_residuals);
            dump("normalized_zero_residual", &params.normalized_zero_residuals);
            Ok(())
        }
        Command::DensityCheck { args, sigma } => {
            let cfg = resolve_config(&args)?;
            let reps = if cfg.reps >= 1000 { cfg.reps } else { 20_000 };
            let (d, p) = ks_uniformity_check(cfg.alpha, sigma, reps, cfg.seed)?;
            println!("ks_statistic: {d}");
            println!("p_value: {p}");
            println!("reps: {reps}");
            if p <= 0.01 {
                return Err(Error::Numerical(format!(
                    "uniformity rejected at p = {p}"
                )));
            }
            Ok(())
        }
    }
}

/// Merge defaults, config file and flags into an [`ExperimentConfig`].
fn resolve_config(args: &ExperimentArgs) -> Result<ExperimentConfig> {
    let mut file = ExperimentArgs::default();
    if let Some(path) = &args.config {
        file = parse_config_file(path)?;
    }
    let pick = |flag: &Option<String>, from_file: &Option<String>| -> Option<String> {
        flag.clone().or_else(|| from_file.clone())
    };
    let mut cfg = ExperimentConfig::default();
    if let Some(v) = args.alpha.or(file.alpha) {
        cfg.alpha = v;
    }
    if let Some(v) = pick(&args.snr_grid, &file.snr_grid) {
        cfg.snr_grid = parse_snr_grid(&v)?;
    }
    if let Some(v) = args.m.or(file.m) {
        cfg.m = v;
    }
    if let Some(v) = args.reps.or(file.reps) {
        cfg.reps = v;
    }
    if let Some(v) = args.beta.or(file.beta) {
        cfg.beta = v;
    }
    if let Some(v) = args.seed.or(file.seed) {
        cfg.seed = v;
    }
    if let Some(v) = args.p.or(file.p) {
        cfg.p = v;
    }
    if let Some(v) = pick(&args.statistic, &file.statistic) {
        cfg.statistic = StatisticChoice::from_str(&v)?;
    }
    if let Some(v) = pick(&args.test, &file.test) {
        cfg.test = TestChoice::from_str(&v)?;
    }
    if let Some(v) = pick(&args.mode, &file.mode) {
        cfg.mode = CosineMode::from_str(&v)?;
    }
    if let Some(v) = pick(&args.pool_rule, &file.pool_rule) {
        cfg.pool_rule = PoolRule::from_str(&v)?;
    }
    if let Some(v) = args.xi_arg.or(file.xi_arg) {
        cfg.xi = Complex64::from_polar(1.0, v);
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Flat key=value file; keys mirror the flag names (hyphen or underscore),
/// blank lines and '#' comments allowed; unknown keys rejected.
fn parse_config_file(path: &std::path::Path) -> Result<ExperimentArgs> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read config file {}: {e}", path.display())))?;
    let mut args = ExperimentArgs::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("config line {}: expected key=value, got '{line}'", lineno + 1))
        })?;
        let key = key.trim().replace('-', "_");
        let value = value.trim().to_string();
        let bad = |e: String| Error::Config(format!("config key '{key}': {e}"));
        match key.as_str() {
            "alpha" => args.alpha = Some(value.parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?),
            "snr_grid" => args.snr_grid = Some(value),
            "m" => args.m = Some(value.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?),
            "reps" => args.reps = Some(value.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?),
            "beta" => args.beta = Some(value.parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?),
            "seed" => args.seed = Some(value.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?),
            "p" => args.p = Some(value.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?),
            "statistic" => args.statistic = Some(value),
            "test" => args.test = Some(value),
            "mode" => args.mode = Some(value),
            "pool_rule" => args.pool_rule = Some(value),
            "xi_arg" => args.xi_arg = Some(value.parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?),
            _ => return Err(Error::Config(format!("unknown config key '{key}'"))),
        }
    }
    Ok(args)
}

fn parse_snr_grid(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Error::Config(format!("bad SNR value '{t}': {e}")))
        })
        .collect()
}

/// Read `re,im` rows (optional header) from a file or stdin.
fn read_points(path: Option<&std::path::Path>) -> Result<Vec<[f64; 2]>> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let mut pts = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if lineno == 0 && fields.iter().any(|f| f.parse::<f64>().is_err()) {
            continue; // header row
        }
        if fields.len() != 2 {
            return Err(Error::Config(format!(
                "line {}: expected 're,im', got '{line}'",
                lineno + 1
            )));
        }
        let re = fields[0]
            .parse::<f64>()
            .map_err(|e| Error::Config(format!("line {}: {e}", lineno + 1)))?;
        let im = fields[1]
            .parse::<f64>()
            .map_err(|e| Error::Config(format!("line {}: {e}", lineno + 1)))?;
        pts.push([re, im]);
    }
    if pts.is_empty() {
        return Err(Error::Config("no data rows in input".into()));
    }
    Ok(pts)
}
