//! Closed-form radial families, rank-test score functions, cross-constants,
//! asymptotic relative efficiency and the small-SNR shifted pole density.

use num_complex::Complex64;
use statrs::function::gamma::gamma;

use crate::quad::adaptive;
use crate::{Error, Result};

/// Bivariate radial family: f is the radial function, g(r) = r f(r) / nu1 the
/// modulus density.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialFamily {
    /// f(r) = 1/(1+r^2)^2, the pole radial function.
    Pole,
    /// f(r) = e^{-r^2/2}.
    Gaussian,
}

impl RadialFamily {
    pub fn radial_fn(&self, r: f64) -> f64 {
        match self {
            RadialFamily::Pole => {
                let d = 1.0 + r * r;
                1.0 / (d * d)
            }
            RadialFamily::Gaussian => (-r * r / 2.0).exp(),
        }
    }

    /// First moment normalizer nu1 = int r f(r) dr.
    pub fn nu1(&self) -> f64 {
        match self {
            RadialFamily::Pole => 0.5,
            RadialFamily::Gaussian => 1.0,
        }
    }

    /// Modulus density g(r) = r f(r) / nu1.
    pub fn modulus_density(&self, r: f64) -> f64 {
        r * self.radial_fn(r) / self.nu1()
    }

    /// Modulus CDF.
    pub fn modulus_cdf(&self, r: f64) -> f64 {
        match self {
            RadialFamily::Pole => r * r / (1.0 + r * r),
            RadialFamily::Gaussian => 1.0 - (-r * r / 2.0).exp(),
        }
    }

    /// Inverse modulus CDF on [0, 1).
    pub fn modulus_quantile(&self, u: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&u) {
            return Err(Error::Domain(format!("quantile argument u = {u} outside [0, 1)")));
        }
        Ok(match self {
            RadialFamily::Pole => (u / (1.0 - u)).sqrt(),
            RadialFamily::Gaussian => (-2.0 * (1.0 - u).ln()).sqrt(),
        })
    }
}

/// Rank score J(u) on (0, 1) with its exact second moment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreFunction {
    /// J(u) = 4 sqrt(u(1-u)), the composed radial score of the pole family.
    PoleScore,
    /// van der Waerden: J(u) = sqrt(2 ln(1/(1-u))).
    VanDerWaerden,
}

impl ScoreFunction {
    pub fn label(&self) -> &'static str {
        match self {
            ScoreFunction::PoleScore => "pole_score",
            ScoreFunction::VanDerWaerden => "vdw",
        }
    }

    /// E[J(u)^2] over u ~ U(0,1): 8/3 for the pole score, 2 for vdW.
    pub fn second_moment(&self) -> f64 {
        match self {
            ScoreFunction::PoleScore => 8.0 / 3.0,
            ScoreFunction::VanDerWaerden => 2.0,
        }
    }

    pub fn eval(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::Domain(format!("score argument u = {u} outside (0, 1)")));
        }
        Ok(match self {
            ScoreFunction::PoleScore => 4.0 * (u * (1.0 - u)).sqrt(),
            ScoreFunction::VanDerWaerden => (2.0 * (1.0 / (1.0 - u)).ln()).sqrt(),
        })
    }
}

/// Pole marginal density under the null, h(z) = 1/(pi (1+|z|^2)^2).
pub fn pole_density(z: Complex64) -> f64 {
    let d = 1.0 + z.norm_sqr();
    1.0 / (std::f64::consts::PI * d * d)
}

pub fn pole_modulus_cdf(r: f64) -> f64 {
    RadialFamily::Pole.modulus_cdf(r)
}

pub fn pole_modulus_quantile(u: f64) -> Result<f64> {
    RadialFamily::Pole.modulus_quantile(u)
}

/// C(f1, f2) = int_0^1 J1(u) J2(u) du.
///
/// Substituting u = 1 - e^{-v} removes the vdW endpoint singularity: the
/// integrand becomes J1(1-e^{-v}) J2(1-e^{-v}) e^{-v} on [0, inf).
pub fn cross_constant(s1: ScoreFunction, s2: ScoreFunction) -> Result<f64> {
    let f = |v: f64| {
        let u = -(-v).exp_m1(); // 1 - e^{-v}, accurate near 0
        if u <= 0.0 || u >= 1.0 {
            return 0.0;
        }
        let j1 = match s1 {
            ScoreFunction::PoleScore => 4.0 * (u * (1.0 - u)).sqrt(),
            ScoreFunction::VanDerWaerden => (2.0 * v).sqrt(),
        };
        let j2 = match s2 {
            ScoreFunction::PoleScore => 4.0 * (u * (1.0 - u)).sqrt(),
            ScoreFunction::VanDerWaerden => (2.0 * v).sqrt(),
        };
        j1 * j2 * (-v).exp()
    };
    adaptive(&f, 0.0, 45.0, 1e-10)
}

/// Pitman ARE of the pole-score test w.r.t. the van der Waerden test on pole
/// data: (8/3) * 2 / C(vdw, pole)^2, with C from quadrature.
pub fn are_pole_vs_vdw() -> Result<f64> {
    let c_wp = cross_constant(ScoreFunction::VanDerWaerden, ScoreFunction::PoleScore)?;
    Ok((8.0 / 3.0) * 2.0 / (c_wp * c_wp))
}

/// Small-SNR pole density approximations.
///
/// Returns `(approx, first_order)`: the shifted spherical approximation
/// h~(z) = 1/(pi (1+|z - rho G xi|^2)^2) with G = Gamma(1+2/alpha), and the
/// first-order expansion K2 + rho G K1 / pi.
pub fn shifted_pole_density(z: Complex64, rho: f64, alpha: f64, xi: Complex64) -> Result<(f64, f64)> {
    if !(rho >= 0.0) {
        return Err(Error::Domain(format!("rho = {rho} must be >= 0")));
    }
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(Error::Domain(format!("alpha = {alpha} outside (0, 2]")));
    }
    let g = gamma(1.0 + 2.0 / alpha);
    let shifted = z - rho * g * xi;
    let d = 1.0 + shifted.norm_sqr();
    let approx = 1.0 / (std::f64::consts::PI * d * d);
    let one = Complex64::new(1.0, 0.0);
    let d0 = 1.0 + z.norm_sqr();
    let k1 = ((one + z.conj() * xi).norm_sqr() - (z - xi).norm_sqr()) / (d0 * d0 * d0);
    let k2 = 1.0 / (std::f64::consts::PI * d0 * d0);
    let first_order = k2 + rho * g * k1 / std::f64::consts::PI;
    Ok((approx, first_order))
}
