//! Small statistical toolbox used by the diagnostics and acceptance suites:
//! Kolmogorov–Smirnov tests, a chi-square independence test on a quantile
//! grid, the spatial median and simple least squares.

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::special::kolmogorov_sf;
use crate::{Error, Result};

fn sorted(xs: &[f64]) -> Vec<f64> {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

/// One-sample KS statistic and asymptotic p-value against a continuous CDF.
///
/// Uses the Stephens finite-sample correction
/// lambda = (sqrt(n) + 0.12 + 0.11/sqrt(n)) * D.
pub fn ks_one_sample<F: Fn(f64) -> f64>(xs: &[f64], cdf: F) -> (f64, f64) {
    let v = sorted(xs);
    let n = v.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in v.iter().enumerate() {
        let c = cdf(x);
        d = d.max((c - i as f64 / n).abs()).max(((i + 1) as f64 / n - c).abs());
    }
    let lambda = (n.sqrt() + 0.12 + 0.11 / n.sqrt()) * d;
    (d, kolmogorov_sf(lambda))
}

/// Two-sample KS statistic and asymptotic p-value.
pub fn ks_two_sample(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let a = sorted(xs);
    let b = sorted(ys);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let mut i = 0;
    let mut j = 0;
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let ne = (na * nb / (na + nb)).sqrt();
    let lambda = (ne + 0.12 + 0.11 / ne) * d;
    (d, kolmogorov_sf(lambda))
}

/// Chi-square independence test of (x, y) pairs binned into a k x k grid by
/// marginal quantiles. Returns (statistic, p-value) with (k-1)^2 df.
pub fn chi2_independence(xs: &[f64], ys: &[f64], k: usize) -> Result<(f64, f64)> {
    if xs.len() != ys.len() || xs.len() < k * k * 5 {
        return Err(Error::Domain(format!(
            "need matched samples with at least {} points for a {k}x{k} grid",
            k * k * 5
        )));
    }
    let n = xs.len();
    let edges = |v: &[f64]| -> Vec<f64> {
        let s = sorted(v);
        (1..k).map(|i| s[i * n / k]).collect()
    };
    let ex = edges(xs);
    let ey = edges(ys);
    let bin = |v: f64, e: &[f64]| e.iter().take_while(|&&t| v >= t).count();
    let mut counts = vec![vec![0.0f64; k]; k];
    for (&x, &y) in xs.iter().zip(ys) {
        counts[bin(x, &ex)][bin(y, &ey)] += 1.0;
    }
    let row: Vec<f64> = counts.iter().map(|r| r.iter().sum()).collect();
    let col: Vec<f64> = (0..k).map(|j| counts.iter().map(|r| r[j]).sum()).collect();
    let mut stat = 0.0;
    for i in 0..k {
        for j in 0..k {
            let expect = row[i] * col[j] / n as f64;
            if expect > 0.0 {
                let diff = counts[i][j] - expect;
                stat += diff * diff / expect;
            }
        }
    }
    let df = ((k - 1) * (k - 1)) as f64;
    let chi = ChiSquared::new(df).map_err(|e| Error::Numerical(e.to_string()))?;
    Ok((stat, 1.0 - chi.cdf(stat)))
}

/// Spatial (geometric) median by Weiszfeld iteration.
pub fn spatial_median(points: &[[f64; 2]]) -> [f64; 2] {
    let n = points.len() as f64;
    let mut mu = [
        points.iter().map(|p| p[0]).sum::<f64>() / n,
        points.iter().map(|p| p[1]).sum::<f64>() / n,
    ];
    for _ in 0..500 {
        let mut wsum = 0.0;
        let mut next = [0.0, 0.0];
        for p in points {
            let d = ((p[0] - mu[0]).powi(2) + (p[1] - mu[1]).powi(2)).sqrt().max(1e-12);
            let w = 1.0 / d;
            wsum += w;
            next[0] += w * p[0];
            next[1] += w * p[1];
        }
        next[0] /= wsum;
        next[1] /= wsum;
        let step = ((next[0] - mu[0]).powi(2) + (next[1] - mu[1]).powi(2)).sqrt();
        mu = next;
        if step < 1e-12 {
            break;
        }
    }
    mu
}

/// Least-squares line y = slope*x + intercept; returns (slope, intercept, R^2).
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, intercept, r2)
}
