//! Gauss–Legendre quadrature on panels, with adaptive bisection.

use crate::{Error, Result};

/// Fixed-order Gauss–Legendre rule on [-1, 1].
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on the Legendre recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess
            let mut x =
                (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Adaptive panel-splitting integration of `f` over [a, b] to absolute
/// tolerance `tol`.
pub fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let rule = GaussLegendre::new(16);
    let whole = rule.integrate(f, a, b);
    adaptive_rec(f, &rule, a, b, whole, tol, 48)
}

fn adaptive_rec<F: Fn(f64) -> f64>(
    f: &F,
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let mid = 0.5 * (a + b);
    let left = rule.integrate(f, a, mid);
    let right = rule.integrate(f, mid, b);
    let err = (left + right - whole).abs();
    // floor: once the residual is at roundoff level relative to the panel,
    // further bisection cannot improve it
    let floor = 4.0 * f64::EPSILON * (left.abs() + right.abs());
    if err < tol.max(floor) || (b - a) < 1e-14 * a.abs().max(b.abs()).max(1.0) {
        return Ok(left + right);
    }
    if depth == 0 {
        return Err(Error::Numerical(format!(
            "adaptive quadrature failed on [{a}, {b}]: residual {err:.3e} > {tol:.3e}"
        )));
    }
    let lv = adaptive_rec(f, rule, a, mid, left, 0.5 * tol, depth - 1)?;
    let rv = adaptive_rec(f, rule, mid, b, right, 0.5 * tol, depth - 1)?;
    Ok(lv + rv)
}
