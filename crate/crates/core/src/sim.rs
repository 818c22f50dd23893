//! Seeded Monte Carlo power harness: experiment configuration, parallel
//! replicate execution, the pole-universality diagnostic, and CSV/SVG output.
//!
//! Reproducibility contract: every replicate draws from a dedicated RNG
//! substream derived from (seed, snr index, replicate index, attempt) through
//! the avalanche mixer in [`crate::rng`], so results are bit-identical across
//! runs and parallel schedules.

use std::fmt;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::pade::{extract_pade_parameters, PoolRule, StatisticKind};
use crate::radial::ScoreFunction;
use crate::rank_test::{hotelling_test, location_test, BivariateSample, CosineMode};
use crate::rng::substream;
use crate::stable_noise::{sample_series, SignalNoiseModel};
use crate::stats::ks_one_sample;
use crate::{Error, Result};

/// Noise scale is fixed; SNR is swept through the signal amplitude.
pub const SIGMA: f64 = 1.0;

/// Maximum redraw attempts per replicate before giving up.
const MAX_ATTEMPTS: u64 = 100;

/// Which per-series bivariate point feeds the location test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatisticChoice {
    Pole,
    Zero,
    ResPole,
    ResZero,
    /// The raw observation a_0 (no Padé transform).
    Original,
}

impl StatisticChoice {
    fn pade_kind(&self) -> Option<StatisticKind> {
        match self {
            StatisticChoice::Pole => Some(StatisticKind::Pole),
            StatisticChoice::Zero => Some(StatisticKind::Zero),
            StatisticChoice::ResPole => Some(StatisticKind::ResPole),
            StatisticChoice::ResZero => Some(StatisticKind::ResZero),
            StatisticChoice::Original => None,
        }
    }
}

impl fmt::Display for StatisticChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StatisticChoice::Pole => "pole",
            StatisticChoice::Zero => "zero",
            StatisticChoice::ResPole => "res_pole",
            StatisticChoice::ResZero => "res_zero",
            StatisticChoice::Original => "original",
        })
    }
}

impl FromStr for StatisticChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pole" => Ok(StatisticChoice::Pole),
            "zero" => Ok(StatisticChoice::Zero),
            "res_pole" => Ok(StatisticChoice::ResPole),
            "res_zero" => Ok(StatisticChoice::ResZero),
            "original" => Ok(StatisticChoice::Original),
            _ => Err(Error::Config(format!(
                "unknown statistic '{s}' (expected pole|zero|res_pole|res_zero|original)"
            ))),
        }
    }
}

/// Which location test runs on the bivariate points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestChoice {
    VanDerWaerden,
    PoleScore,
    Hotelling,
}

impl fmt::Display for TestChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TestChoice::VanDerWaerden => "vdw",
            TestChoice::PoleScore => "pole_score",
            TestChoice::Hotelling => "hotelling",
        })
    }
}

impl FromStr for TestChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vdw" => Ok(TestChoice::VanDerWaerden),
            "pole_score" => Ok(TestChoice::PoleScore),
            "hotelling" => Ok(TestChoice::Hotelling),
            _ => Err(Error::Config(format!(
                "unknown test '{s}' (expected vdw|pole_score|hotelling)"
            ))),
        }
    }
}

impl fmt::Display for CosineMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CosineMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "interdirection" => Ok(CosineMode::Interdirection),
            "sign_cosine" => Ok(CosineMode::SignCosine),
            _ => Err(Error::Config(format!(
                "unknown mode '{s}' (expected interdirection|sign_cosine)"
            ))),
        }
    }
}

impl fmt::Display for PoolRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PoolRule::LargestModulus => "largest_modulus",
            PoolRule::First => "first",
        })
    }
}

impl FromStr for PoolRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "largest_modulus" => Ok(PoolRule::LargestModulus),
            "first" => Ok(PoolRule::First),
            _ => Err(Error::Config(format!(
                "unknown pool rule '{s}' (expected largest_modulus|first)"
            ))),
        }
    }
}

/// Full description of one power experiment.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub alpha: f64,
    pub snr_grid: Vec<f64>,
    pub xi: Complex64,
    pub m: usize,
    pub reps: usize,
    pub beta: f64,
    pub seed: u64,
    pub p: usize,
    pub statistic: StatisticChoice,
    pub test: TestChoice,
    pub mode: CosineMode,
    pub pool_rule: PoolRule,
}

/// Default SNR grid, log-spaced over the interesting power range.
pub fn default_snr_grid() -> Vec<f64> {
    vec![0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0]
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            alpha: 2.0,
            snr_grid: default_snr_grid(),
            xi: Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
            m: 100,
            reps: 200,
            beta: 0.05,
            seed: 0,
            p: 1,
            statistic: StatisticChoice::Pole,
            test: TestChoice::PoleScore,
            mode: CosineMode::Interdirection,
            pool_rule: PoolRule::LargestModulus,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 2.0) {
            return Err(Error::Config(format!("alpha = {} outside (0, 2]", self.alpha)));
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(Error::Config(format!("beta = {} outside (0, 1)", self.beta)));
        }
        if self.m < 3 {
            return Err(Error::Config(format!("m = {} below minimum 3", self.m)));
        }
        if self.reps < 1 {
            return Err(Error::Config("reps must be >= 1".into()));
        }
        if self.p < 1 {
            return Err(Error::Config("p must be >= 1".into()));
        }
        if self.snr_grid.is_empty() {
            return Err(Error::Config("snr_grid must be non-empty".into()));
        }
        if self.snr_grid.iter().any(|&r| !(r >= 0.0) || !r.is_finite()) {
            return Err(Error::Config("snr_grid entries must be finite and >= 0".into()));
        }
        if !self.xi.is_finite() || self.xi.norm() == 0.0 {
            return Err(Error::Config("xi must be finite and nonzero".into()));
        }
        if matches!(self.statistic, StatisticChoice::Zero | StatisticChoice::ResZero) && self.p < 2 {
            return Err(Error::Config(format!(
                "statistic '{}' needs p >= 2 (got p = {})",
                self.statistic, self.p
            )));
        }
        Ok(())
    }
}

/// One (config, SNR) power estimate.
#[derive(Debug, Clone)]
pub struct PowerRow {
    pub alpha: f64,
    pub snr: f64,
    pub xi_re: f64,
    pub xi_im: f64,
    pub m: usize,
    pub reps: usize,
    pub beta: f64,
    pub statistic: StatisticChoice,
    pub test: TestChoice,
    pub mode: CosineMode,
    pub power: f64,
    pub mc_stderr: f64,
    pub discarded: usize,
    pub seed: u64,
}

fn replicate_sample<R: rand::Rng + ?Sized>(
    cfg: &ExperimentConfig,
    rho: f64,
    rng: &mut R,
) -> Result<BivariateSample> {
    let model = SignalNoiseModel::from_snr(cfg.alpha, SIGMA, rho, cfg.xi, 2 * cfg.p)?;
    let kind = cfg.statistic.pade_kind();
    let mut pts = Vec::with_capacity(cfg.m);
    for _ in 0..cfg.m {
        let series = sample_series(&model, rng)?;
        let (x, y) = match kind {
            None => {
                let a0 = series.coeffs()[0];
                (a0.re, a0.im)
            }
            Some(kind) => {
                let params = extract_pade_parameters(&series)?;
                crate::pade::select_statistic(&params, kind, cfg.pool_rule)?
            }
        };
        pts.push([x, y]);
    }
    BivariateSample::new(pts)
}

/// Run one replicate, re-drawing from the next substream on probability-zero
/// degeneracies. Returns (reject, attempts discarded).
fn run_replicate(cfg: &ExperimentConfig, rho: f64, si: u64, rep: u64) -> Result<(bool, usize)> {
    let mut discarded = 0usize;
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = substream(cfg.seed, &[si, rep, attempt]);
        let outcome = replicate_sample(cfg, rho, &mut rng).and_then(|sample| match cfg.test {
            TestChoice::Hotelling => hotelling_test(&sample, cfg.beta),
            TestChoice::VanDerWaerden => {
                location_test(&sample, ScoreFunction::VanDerWaerden, cfg.beta, cfg.mode)
            }
            TestChoice::PoleScore => {
                location_test(&sample, ScoreFunction::PoleScore, cfg.beta, cfg.mode)
            }
        });
        match outcome {
            Ok(r) => return Ok((r.reject, discarded)),
            Err(e) if e.is_degenerate() => discarded += 1,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NonConvergence(format!(
        "replicate (snr index {si}, rep {rep}) degenerate {MAX_ATTEMPTS} times in a row"
    )))
}

/// Monte Carlo power over the SNR grid.
///
/// Replicates run in parallel; the rejection fractions are aggregated by
/// replicate index, so the output is independent of the schedule.
pub fn run_power_experiment(cfg: &ExperimentConfig) -> Result<Vec<PowerRow>> {
    cfg.validate()?;
    let mut rows = Vec::with_capacity(cfg.snr_grid.len());
    for (si, &rho) in cfg.snr_grid.iter().enumerate() {
        let outcomes: Vec<Result<(bool, usize)>> = (0..cfg.reps)
            .into_par_iter()
            .map(|rep| run_replicate(cfg, rho, si as u64, rep as u64))
            .collect();
        let mut rejects = 0usize;
        let mut discarded = 0usize;
        for o in outcomes {
            let (reject, d) = o?;
            rejects += reject as usize;
            discarded += d;
        }
        let power = rejects as f64 / cfg.reps as f64;
        rows.push(PowerRow {
            alpha: cfg.alpha,
            snr: rho,
            xi_re: cfg.xi.re,
            xi_im: cfg.xi.im,
            m: cfg.m,
            reps: cfg.reps,
            beta: cfg.beta,
            statistic: cfg.statistic,
            test: cfg.test,
            mode: cfg.mode,
            power,
            mc_stderr: (power * (1.0 - power) / cfg.reps as f64).sqrt(),
            discarded,
            seed: cfg.seed,
        });
    }
    Ok(rows)
}

/// Universality diagnostic: under H0 the pole transform
/// u = |pole|^2 / (1 + |pole|^2) is Uniform(0,1) for every (alpha, sigma).
/// Returns the one-sample KS statistic and p-value.
pub fn ks_uniformity_check(alpha: f64, sigma: f64, reps: usize, seed: u64) -> Result<(f64, f64)> {
    if reps < 1000 {
        return Err(Error::Config(format!("reps = {reps} below minimum 1000")));
    }
    if !(sigma > 0.0) {
        return Err(Error::Config(format!("sigma = {sigma} must be > 0")));
    }
    let xi = Complex64::new(1.0, 0.0); // irrelevant at rho = 0
    let model = SignalNoiseModel::from_snr(alpha, sigma, 0.0, xi, 2)?;
    let us: Vec<Result<f64>> = (0..reps)
        .into_par_iter()
        .map(|rep| {
            for attempt in 0..MAX_ATTEMPTS {
                let mut rng = substream(seed, &[rep as u64, attempt]);
                let u = sample_series(&model, &mut rng)
                    .and_then(|s| extract_pade_parameters(&s))
                    .map(|p| p.poles[0].norm_sqr())
                    .map(|r2| r2 / (1.0 + r2));
                match u {
                    Ok(u) => return Ok(u),
                    Err(e) if e.is_degenerate() => continue,
                    Err(e) => return Err(e),
                }
            }
            Err(Error::NonConvergence(format!("replicate {rep} degenerate {MAX_ATTEMPTS} times")))
        })
        .collect();
    let us: Vec<f64> = us.into_iter().collect::<Result<_>>()?;
    Ok(ks_one_sample(&us, |x| x.clamp(0.0, 1.0)))
}

/// CSV with the fixed header; numbers use shortest round-trip decimals.
pub fn csv_string(rows: &[PowerRow]) -> String {
    let mut out = String::from(
        "alpha,snr,xi_re,xi_im,m,reps,beta,statistic,test,mode,power,mc_stderr,discarded,seed\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.alpha,
            r.snr,
            r.xi_re,
            r.xi_im,
            r.m,
            r.reps,
            r.beta,
            r.statistic,
            r.test,
            r.mode,
            r.power,
            r.mc_stderr,
            r.discarded,
            r.seed
        ));
    }
    out
}

pub fn emit_csv(rows: &[PowerRow], path: &Path) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::Config("no rows to emit".into()));
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(csv_string(rows).as_bytes())?;
    Ok(())
}

const SVG_PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Power-curve plot: power (y, [0,1]) against SNR (x, log10 scale), one
/// polyline per (statistic, test) pair, with axes and a legend. Deterministic
/// byte-for-byte given identical rows.
pub fn svg_string(rows: &[PowerRow]) -> Result<String> {
    let pts: Vec<&PowerRow> = rows.iter().filter(|r| r.snr > 0.0).collect();
    if pts.is_empty() {
        return Err(Error::Config("no rows with snr > 0 to plot".into()));
    }
    let (w, h) = (640.0, 480.0);
    let (ml, mr, mt, mb) = (60.0, 160.0, 20.0, 50.0);
    let (pw, ph) = (w - ml - mr, h - mt - mb);
    let lx_min = pts.iter().map(|r| r.snr.log10()).fold(f64::INFINITY, f64::min);
    let lx_max = pts.iter().map(|r| r.snr.log10()).fold(f64::NEG_INFINITY, f64::max);
    let span = (lx_max - lx_min).max(1e-9);
    let x_of = |snr: f64| ml + (snr.log10() - lx_min) / span * pw;
    let y_of = |p: f64| mt + (1.0 - p) * ph;
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" \
         viewBox=\"0 0 {w} {h}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    svg.push_str(&format!(
        "<rect x=\"{ml}\" y=\"{mt}\" width=\"{pw}\" height=\"{ph}\" fill=\"none\" stroke=\"#000\"/>\n"
    ));
    // y ticks at 0, 0.25, ..., 1
    for i in 0..=4 {
        let p = i as f64 * 0.25;
        let y = y_of(p);
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{y}\" x2=\"{ml}\" y2=\"{y}\" stroke=\"#000\"/>\n",
            ml - 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{p}</text>\n",
            ml - 8.0,
            y + 4.0
        ));
    }
    // x ticks at the decades covered by the grid
    let d0 = lx_min.floor() as i64;
    let d1 = lx_max.ceil() as i64;
    for d in d0..=d1 {
        let v = 10f64.powi(d as i32);
        let lx = d as f64;
        if lx < lx_min - 1e-9 || lx > lx_max + 1e-9 {
            continue;
        }
        let x = ml + (lx - lx_min) / span * pw;
        let yb = mt + ph;
        svg.push_str(&format!(
            "<line x1=\"{x}\" y1=\"{yb}\" x2=\"{x}\" y2=\"{}\" stroke=\"#000\"/>\n",
            yb + 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{x}\" y=\"{}\" text-anchor=\"middle\">{v}</text>\n",
            yb + 18.0
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">SNR</text>\n",
        ml + pw / 2.0,
        h - 12.0
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">power</text>\n",
        mt + ph / 2.0,
        mt + ph / 2.0
    ));
    // series in first-appearance order
    let mut keys: Vec<(StatisticChoice, TestChoice)> = Vec::new();
    for r in &pts {
        if !keys.contains(&(r.statistic, r.test)) {
            keys.push((r.statistic, r.test));
        }
    }
    for (ki, key) in keys.iter().enumerate() {
        let color = SVG_PALETTE[ki % SVG_PALETTE.len()];
        let mut series: Vec<&&PowerRow> =
            pts.iter().filter(|r| (r.statistic, r.test) == *key).collect();
        series.sort_by(|a, b| a.snr.partial_cmp(&b.snr).unwrap());
        let path: Vec<String> = series
            .iter()
            .map(|r| format!("{:.2},{:.2}", x_of(r.snr), y_of(r.power)))
            .collect();
        svg.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
            path.join(" ")
        ));
        let ly = mt + 16.0 + 18.0 * ki as f64;
        let lx = ml + pw + 12.0;
        svg.push_str(&format!(
            "<line x1=\"{lx}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
            lx + 20.0
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\">{} / {}</text>\n",
            lx + 26.0,
            ly + 4.0,
            key.0,
            key.1
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn emit_svg(rows: &[PowerRow], path: &Path) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(svg_string(rows)?.as_bytes())?;
    Ok(())
}
