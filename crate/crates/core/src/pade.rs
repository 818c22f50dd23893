//! Padé parameters of a complex series via Hankel matrix pencils.
//!
//! For a series a_0..a_{2p-1}, the poles of the [p-1, p] Padé approximant of
//! its Z-transform are the generalized eigenvalues of the Hankel pencil
//! (U1, U0) built from the series; the zeros are the generalized eigenvalues
//! of the pencil built from the reciprocal series b = T(a)^{-1} e1 starting at
//! b_2; residuals at poles and zeros come from Vandermonde solves.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{Error, Result};

/// Ordered complex observations a_0..a_{2p-1}.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexObservationSeries {
    a: Vec<Complex64>,
}

impl ComplexObservationSeries {
    pub fn new(a: Vec<Complex64>) -> Result<Self> {
        if a.len() < 2 || a.len() % 2 != 0 {
            return Err(Error::Shape(format!(
                "series length {} must be even and >= 2",
                a.len()
            )));
        }
        if !a.iter().all(|z| z.is_finite()) {
            return Err(Error::Shape("series entries must be finite".into()));
        }
        Ok(Self { a })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.a
    }

    /// Padé order p = n/2.
    pub fn order(&self) -> usize {
        self.a.len() / 2
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            a: self.a.iter().map(|z| z * factor).collect(),
        }
    }
}

/// Which pencil of the pair to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PencilKind {
    /// From the series itself: U0 on a_0..a_{2p-2}, U1 on a_1..a_{2p-1}.
    Poles,
    /// From the reciprocal series: U~0 on b_2..b_{2p-2}, U~1 on b_3..b_{2p-1}.
    Zeros,
}

/// Pair of Hankel matrices whose generalized eigenvalues are poles or zeros.
#[derive(Debug, Clone)]
pub struct HankelPencil {
    pub m1: DMatrix<Complex64>,
    pub m0: DMatrix<Complex64>,
}

/// Coefficients of 1/F: solves the lower-triangular Toeplitz system
/// T(a) b = e1 by forward substitution.
pub fn toeplitz_inverse_series(a: &[Complex64]) -> Result<Vec<Complex64>> {
    let a0 = *a.first().ok_or_else(|| Error::Shape("empty series".into()))?;
    if a0 == Complex64::new(0.0, 0.0) {
        return Err(Error::SingularSeries);
    }
    let mut b = Vec::with_capacity(a.len());
    b.push(Complex64::new(1.0, 0.0) / a0);
    for k in 1..a.len() {
        let s: Complex64 = (1..=k).map(|j| a[j] * b[k - j]).sum();
        b.push(-s / a0);
    }
    Ok(b)
}

/// Build the Hankel pencil of the requested kind.
///
/// For `Poles`, `series` is the raw series of length 2p (p >= 1); for
/// `Zeros`, `series` is the full b-series of length 2p (p >= 2) and the
/// pencil is built from b_2..b_{2p-1}.
pub fn build_hankel_pencil(series: &[Complex64], which: PencilKind) -> Result<HankelPencil> {
    let c: &[Complex64] = match which {
        PencilKind::Poles => series,
        PencilKind::Zeros => {
            if series.len() < 4 {
                return Err(Error::Shape(
                    "zeros pencil needs a b-series of length >= 4 (p >= 2)".into(),
                ));
            }
            &series[2..]
        }
    };
    if c.len() < 2 || c.len() % 2 != 0 {
        return Err(Error::Shape(format!(
            "pencil source length {} must be even and >= 2",
            c.len()
        )));
    }
    let q = c.len() / 2;
    let m0 = DMatrix::from_fn(q, q, |i, j| c[i + j]);
    let m1 = DMatrix::from_fn(q, q, |i, j| c[i + j + 1]);
    Ok(HankelPencil { m1, m0 })
}

/// Generalized eigenvalues of (M1, M0), sorted by descending modulus, ties by
/// ascending principal argument.
///
/// Closed forms at q <= 2; q >= 3 reduces to the standard eigenproblem
/// M0^{-1} M1 solved by complex Schur (dense QR iteration).
pub fn pencil_eigenvalues(pencil: &HankelPencil) -> Result<Vec<Complex64>> {
    let q = pencil.m0.nrows();
    let mut eig = match q {
        1 => {
            let m0 = pencil.m0[(0, 0)];
            let scale = m0.norm().max(pencil.m1[(0, 0)].norm());
            if m0.norm() <= 1e-14 * scale {
                return Err(Error::DegeneratePencil { cond: f64::INFINITY });
            }
            vec![pencil.m1[(0, 0)] / m0]
        }
        2 => {
            // det(M1 - lambda M0) = det(M0) lambda^2 - t lambda + det(M1)
            let a = &pencil.m1;
            let b = &pencil.m0;
            let det_b = b[(0, 0)] * b[(1, 1)] - b[(0, 1)] * b[(1, 0)];
            let det_a = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
            let t = a[(0, 0)] * b[(1, 1)] + a[(1, 1)] * b[(0, 0)]
                - a[(0, 1)] * b[(1, 0)]
                - a[(1, 0)] * b[(0, 1)];
            let scale = b.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if det_b.norm() <= 1e-14 * scale * scale {
                return Err(Error::DegeneratePencil {
                    cond: scale * scale / det_b.norm().max(f64::MIN_POSITIVE),
                });
            }
            // stable quadratic roots: r1 = (t + s)/2detB, r2 = detA / (detB r1)
            let disc = (t * t - 4.0 * det_b * det_a).sqrt();
            let s = if (t + disc).norm() >= (t - disc).norm() {
                t + disc
            } else {
                t - disc
            };
            if s.norm() == 0.0 {
                vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]
            } else {
                let r1 = s / (2.0 * det_b);
                let r2 = det_a / (det_b * r1);
                vec![r1, r2]
            }
        }
        _ => {
            let lu = pencil.m0.clone().lu();
            let inv = lu.try_inverse().ok_or(Error::DegeneratePencil { cond: f64::INFINITY })?;
            let cond = one_norm(&pencil.m0) * one_norm(&inv);
            if !(cond < 1e12) {
                return Err(Error::DegeneratePencil { cond });
            }
            let companion = inv * &pencil.m1;
            let (_, t) = companion.schur().unpack();
            t.diagonal().iter().copied().collect()
        }
    };
    if !eig.iter().all(|z| z.is_finite()) {
        return Err(Error::DegeneratePencil { cond: f64::INFINITY });
    }
    eig.sort_by(|x, y| {
        y.norm()
            .partial_cmp(&x.norm())
            .unwrap()
            .then(x.arg().partial_cmp(&y.arg()).unwrap())
    });
    Ok(eig)
}

fn one_norm(m: &DMatrix<Complex64>) -> f64 {
    (0..m.ncols())
        .map(|j| m.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Solve V x = rhs with V_{k,j} = nodes[j]^k (rows k = 0..q-1), so that
/// rhs_k = sum_j x_j nodes_j^k.
pub fn vandermonde_residuals(nodes: &[Complex64], rhs: &[Complex64]) -> Result<Vec<Complex64>> {
    let q = nodes.len();
    if rhs.len() != q || q == 0 {
        return Err(Error::Shape(format!(
            "nodes ({q}) and rhs ({}) must have equal nonzero length",
            rhs.len()
        )));
    }
    let max_mod = nodes.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for i in 0..q {
        for j in (i + 1)..q {
            let d = (nodes[i] - nodes[j]).norm();
            if d <= 1e-12 * max_mod {
                return Err(Error::DegenerateNodes { min_dist: d });
            }
        }
    }
    let v = DMatrix::from_fn(q, q, |k, j| nodes[j].powu(k as u32));
    let rhs = DVector::from_column_slice(rhs);
    v.lu()
        .solve(&rhs)
        .map(|x| x.as_slice().to_vec())
        .ok_or(Error::DegenerateNodes { min_dist: 0.0 })
}

/// Poles, zeros, residuals and normalized residuals of one series.
#[derive(Debug, Clone)]
pub struct PadeParameters {
    /// p poles, sorted by descending modulus.
    pub poles: Vec<Complex64>,
    /// p-1 zeros (empty at p = 1), sorted by descending modulus.
    pub zeros: Vec<Complex64>,
    /// Residuals at the poles, aligned with `poles`.
    pub residuals: Vec<Complex64>,
    /// Residuals at the zeros, aligned with `zeros`.
    pub zero_residuals: Vec<Complex64>,
    /// residuals / ||residuals||.
    pub normalized_residuals: Vec<Complex64>,
    /// zero_residuals / ||zero_residuals||.
    pub normalized_zero_residuals: Vec<Complex64>,
}

fn normalize(v: &[Complex64]) -> Vec<Complex64> {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return v.to_vec();
    }
    v.iter().map(|z| z / norm).collect()
}

/// Full Padé parameter extraction.
///
/// Poles from the a-pencil, residuals c from V(xi) against a_0..a_{p-1};
/// zeros from the b-pencil, zero-residuals d from V(zeta) against b_2..b_p
/// (model b_{k+2} = sum_j d_j zeta_j^k).
pub fn extract_pade_parameters(series: &ComplexObservationSeries) -> Result<PadeParameters> {
    let a = series.coeffs();
    let p = series.order();
    let poles = pencil_eigenvalues(&build_hankel_pencil(a, PencilKind::Poles)?)?;
    let residuals = vandermonde_residuals(&poles, &a[..p])?;
    let (zeros, zero_residuals) = if p >= 2 {
        let b = toeplitz_inverse_series(a)?;
        let zeros = pencil_eigenvalues(&build_hankel_pencil(&b, PencilKind::Zeros)?)?;
        let d = vandermonde_residuals(&zeros, &b[2..p + 1])?;
        (zeros, d)
    } else {
        (Vec::new(), Vec::new())
    };
    let normalized_residuals = normalize(&residuals);
    let normalized_zero_residuals = normalize(&zero_residuals);
    Ok(PadeParameters {
        poles,
        zeros,
        residuals,
        zero_residuals,
        normalized_residuals,
        normalized_zero_residuals,
    })
}

/// Which Padé parameter becomes the bivariate test statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatisticKind {
    Pole,
    Zero,
    ResPole,
    ResZero,
}

/// How to pick one parameter when p > 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoolRule {
    /// Largest modulus among the poles (or zeros). Rotation-equivariant, so
    /// sphericity of the selected point is preserved under the null.
    LargestModulus,
    /// First entry in the deterministic (descending-modulus) order.
    First,
}

/// Reduce extracted parameters to one bivariate real point (Re, Im).
///
/// Residual kinds return the normalized residual entry paired with the
/// selected pole or zero.
pub fn select_statistic(
    params: &PadeParameters,
    kind: StatisticKind,
    rule: PoolRule,
) -> Result<(f64, f64)> {
    let pick = |v: &[Complex64]| -> Result<usize> {
        if v.is_empty() {
            return Err(Error::UnavailableStatistic(format!(
                "{kind:?} unavailable at p = {}",
                params.poles.len()
            )));
        }
        Ok(match rule {
            PoolRule::LargestModulus => v
                .iter()
                .enumerate()
                .max_by(|x, y| x.1.norm().partial_cmp(&y.1.norm()).unwrap())
                .unwrap()
                .0,
            PoolRule::First => 0,
        })
    };
    let z = match kind {
        StatisticKind::Pole => params.poles[pick(&params.poles)?],
        StatisticKind::Zero => params.zeros[pick(&params.zeros)?],
        StatisticKind::ResPole => params.normalized_residuals[pick(&params.poles)?],
        StatisticKind::ResZero => params.normalized_zero_residuals[pick(&params.zeros)?],
    };
    Ok((z.re, z.im))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Two-pole worked model: a_k = 1 * 0.5^k + 2 * (-0.25)^k.
    fn two_pole_series() -> ComplexObservationSeries {
        ComplexObservationSeries::new(vec![c(3.0, 0.0), c(0.0, 0.0), c(0.375, 0.0), c(0.09375, 0.0)])
            .unwrap()
    }

    #[test]
    fn toeplitz_inverse_scalar() {
        let b = toeplitz_inverse_series(&[c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(b, vec![c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn toeplitz_inverse_geometric() {
        let x = 0.3;
        let a = vec![c(1.0, 0.0), c(x, 0.0), c(x * x, 0.0), c(x * x * x, 0.0)];
        let b = toeplitz_inverse_series(&a).unwrap();
        assert!((b[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((b[1] - c(-x, 0.0)).norm() < 1e-15);
        assert!(b[2].norm() < 1e-15 && b[3].norm() < 1e-15);
        // T(a) b = e1
        for k in 1..4 {
            let s: Complex64 = (0..=k).map(|j| a[k - j] * b[j]).sum();
            assert!(s.norm() < 1e-15);
        }
    }

    #[test]
    fn toeplitz_inverse_two_pole_model() {
        let b = toeplitz_inverse_series(two_pole_series().coeffs()).unwrap();
        let expect = [1.0 / 3.0, 0.0, -1.0 / 24.0, -1.0 / 96.0];
        for (bi, ei) in b.iter().zip(expect) {
            assert!((bi - c(ei, 0.0)).norm() < 1e-15, "{b:?}");
        }
    }

    #[test]
    fn toeplitz_inverse_singular() {
        assert!(matches!(
            toeplitz_inverse_series(&[c(0.0, 0.0), c(1.0, 0.0)]),
            Err(Error::SingularSeries)
        ));
    }

    #[test]
    fn hankel_layout_p1() {
        let pencil = build_hankel_pencil(&[c(1.0, 0.0), c(2.0, 0.0)], PencilKind::Poles).unwrap();
        assert_eq!(pencil.m0[(0, 0)], c(1.0, 0.0));
        assert_eq!(pencil.m1[(0, 0)], c(2.0, 0.0));
    }

    #[test]
    fn hankel_layout_p2() {
        let pencil = build_hankel_pencil(two_pole_series().coeffs(), PencilKind::Poles).unwrap();
        assert_eq!(pencil.m0[(0, 0)], c(3.0, 0.0));
        assert_eq!(pencil.m0[(0, 1)], c(0.0, 0.0));
        assert_eq!(pencil.m0[(1, 0)], c(0.0, 0.0));
        assert_eq!(pencil.m0[(1, 1)], c(0.375, 0.0));
        assert_eq!(pencil.m1[(0, 0)], c(0.0, 0.0));
        assert_eq!(pencil.m1[(0, 1)], c(0.375, 0.0));
        assert_eq!(pencil.m1[(1, 0)], c(0.375, 0.0));
        assert_eq!(pencil.m1[(1, 1)], c(0.09375, 0.0));
    }

    #[test]
    fn hankel_structure_invariant() {
        let src: Vec<Complex64> = (0..8).map(|k| c(k as f64, -(k as f64))).collect();
        let pencil = build_hankel_pencil(&src, PencilKind::Poles).unwrap();
        for m in [&pencil.m0, &pencil.m1] {
            for i in 0..4 {
                for j in 0..4 {
                    for i2 in 0..4 {
                        for j2 in 0..4 {
                            if i + j == i2 + j2 {
                                assert_eq!(m[(i, j)], m[(i2, j2)]);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn eigenvalues_p1_ratio() {
        let pencil = build_hankel_pencil(&[c(1.0, 0.0), c(0.5, 0.5)], PencilKind::Poles).unwrap();
        let eig = pencil_eigenvalues(&pencil).unwrap();
        assert!((eig[0] - c(0.5, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn eigenvalues_p2_two_pole_model() {
        let pencil = build_hankel_pencil(two_pole_series().coeffs(), PencilKind::Poles).unwrap();
        let eig = pencil_eigenvalues(&pencil).unwrap();
        assert!((eig[0] - c(0.5, 0.0)).norm() < 1e-10, "{eig:?}");
        assert!((eig[1] - c(-0.25, 0.0)).norm() < 1e-10, "{eig:?}");
    }

    #[test]
    fn eigenvalues_scale_invariant() {
        let series = two_pole_series();
        let scaled = series.scaled(c(7.0, 0.0));
        let e1 = pencil_eigenvalues(&build_hankel_pencil(series.coeffs(), PencilKind::Poles).unwrap()).unwrap();
        let e2 = pencil_eigenvalues(&build_hankel_pencil(scaled.coeffs(), PencilKind::Poles).unwrap()).unwrap();
        for (a, b) in e1.iter().zip(&e2) {
            assert!((a - b).norm() < 1e-10 * a.norm().max(1.0));
        }
    }

    #[test]
    fn eigenvalues_p3_exponential_model() {
        // three-pole model via Schur route
        let poles = [c(0.6, 0.2), c(-0.4, 0.3), c(0.1, -0.5)];
        let res = [c(1.0, 0.0), c(0.5, -1.0), c(2.0, 0.5)];
        let a: Vec<Complex64> = (0..6)
            .map(|k| poles.iter().zip(&res).map(|(xi, cj)| cj * xi.powu(k)).sum())
            .collect();
        let eig = pencil_eigenvalues(&build_hankel_pencil(&a, PencilKind::Poles).unwrap()).unwrap();
        let mut expect = poles.to_vec();
        expect.sort_by(|x, y| y.norm().partial_cmp(&x.norm()).unwrap());
        for (a, b) in eig.iter().zip(&expect) {
            assert!((a - b).norm() < 1e-8, "{eig:?} vs {expect:?}");
        }
    }

    #[test]
    fn vandermonde_one_node() {
        let d = vandermonde_residuals(&[c(0.25, 0.0)], &[c(-1.0 / 24.0, 0.0)]).unwrap();
        assert!((d[0] - c(-1.0 / 24.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn vandermonde_two_nodes() {
        let x = vandermonde_residuals(&[c(0.5, 0.0), c(-0.25, 0.0)], &[c(3.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((x[0] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((x[1] - c(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn vandermonde_coalescing_nodes() {
        assert!(matches!(
            vandermonde_residuals(&[c(0.5, 0.0), c(0.5, 1e-15)], &[c(1.0, 0.0), c(2.0, 0.0)]),
            Err(Error::DegenerateNodes { .. })
        ));
    }

    #[test]
    fn extraction_reconstructs_series() {
        let series = two_pole_series();
        let params = extract_pade_parameters(&series).unwrap();
        for (k, ak) in series.coeffs().iter().enumerate() {
            let rec: Complex64 = params
                .poles
                .iter()
                .zip(&params.residuals)
                .map(|(xi, cj)| cj * xi.powu(k as u32))
                .sum();
            assert!((rec - ak).norm() < 1e-8, "k = {k}");
        }
    }

    #[test]
    fn extraction_worked_example() {
        let params = extract_pade_parameters(&two_pole_series()).unwrap();
        assert!((params.poles[0] - c(0.5, 0.0)).norm() < 1e-10);
        assert!((params.poles[1] - c(-0.25, 0.0)).norm() < 1e-10);
        assert!((params.zeros[0] - c(0.25, 0.0)).norm() < 1e-10);
        assert!((params.residuals[0] - c(1.0, 0.0)).norm() < 1e-10);
        assert!((params.residuals[1] - c(2.0, 0.0)).norm() < 1e-10);
        assert!((params.zero_residuals[0] - c(-1.0 / 24.0, 0.0)).norm() < 1e-10);
        assert!((params.normalized_zero_residuals[0] - c(-1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn extraction_p1() {
        let series = ComplexObservationSeries::new(vec![c(2.0, 1.0), c(1.0, -1.0)]).unwrap();
        let params = extract_pade_parameters(&series).unwrap();
        assert!((params.poles[0] - c(1.0, -1.0) / c(2.0, 1.0)).norm() < 1e-15);
        assert!((params.residuals[0] - c(2.0, 1.0)).norm() < 1e-15);
        let a0 = c(2.0, 1.0);
        assert!((params.normalized_residuals[0] - a0 / a0.norm()).norm() < 1e-15);
        assert!(params.zeros.is_empty());
        assert!(params.zero_residuals.is_empty());
    }

    #[test]
    fn extraction_scale_invariance() {
        let series = two_pole_series();
        for &alpha in &[1e-3, 1.0, 1e3] {
            let scaled = series.scaled(c(alpha, 0.0));
            let p1 = extract_pade_parameters(&series).unwrap();
            let p2 = extract_pade_parameters(&scaled).unwrap();
            for (a, b) in p1.poles.iter().zip(&p2.poles) {
                assert!((a - b).norm() < 1e-10 * a.norm().max(1.0));
            }
            for (a, b) in p1.zeros.iter().zip(&p2.zeros) {
                assert!((a - b).norm() < 1e-10 * a.norm().max(1.0));
            }
            for (a, b) in p1.normalized_residuals.iter().zip(&p2.normalized_residuals) {
                assert!((a - b).norm() < 1e-10);
            }
            for (a, b) in p1.normalized_zero_residuals.iter().zip(&p2.normalized_zero_residuals) {
                assert!((a - b).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn select_statistic_rules() {
        let params = extract_pade_parameters(&two_pole_series()).unwrap();
        let (re, im) = select_statistic(&params, StatisticKind::Pole, PoolRule::LargestModulus).unwrap();
        assert!((re - 0.5).abs() < 1e-10 && im.abs() < 1e-10);
        let (re, _) = select_statistic(&params, StatisticKind::Zero, PoolRule::First).unwrap();
        assert!((re - 0.25).abs() < 1e-10);
        let (re, im) = select_statistic(&params, StatisticKind::ResZero, PoolRule::First).unwrap();
        assert!((re + 1.0).abs() < 1e-10 && im.abs() < 1e-10);
    }

    #[test]
    fn select_statistic_unavailable_at_p1() {
        let series = ComplexObservationSeries::new(vec![c(1.0, 0.0), c(0.5, 0.0)]).unwrap();
        let params = extract_pade_parameters(&series).unwrap();
        assert!(matches!(
            select_statistic(&params, StatisticKind::Zero, PoolRule::First),
            Err(Error::UnavailableStatistic(_))
        ));
        assert!(matches!(
            select_statistic(&params, StatisticKind::ResZero, PoolRule::LargestModulus),
            Err(Error::UnavailableStatistic(_))
        ));
    }

    #[test]
    fn p1_global_phase() {
        // global phase leaves the pole unchanged and rotates the residual
        let a0 = c(1.3, -0.2);
        let a1 = c(0.4, 0.9);
        let theta = 0.7f64;
        let phase = Complex64::from_polar(1.0, theta);
        let base = ComplexObservationSeries::new(vec![a0, a1]).unwrap();
        let rotated = base.scaled(phase);
        let p1 = extract_pade_parameters(&base).unwrap();
        let p2 = extract_pade_parameters(&rotated).unwrap();
        assert!((p1.poles[0] - p2.poles[0]).norm() < 1e-14);
        assert!((p2.residuals[0] - phase * p1.residuals[0]).norm() < 1e-14);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_series(p: usize) -> impl Strategy<Value = ComplexObservationSeries> {
            proptest::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 2 * p).prop_filter_map(
                "nondegenerate",
                |v| {
                    let a: Vec<Complex64> = v.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
                    if a[0].norm() < 1e-3 {
                        return None;
                    }
                    ComplexObservationSeries::new(a).ok()
                },
            )
        }

        proptest! {
            #[test]
            fn b_series_homogeneity(series in arb_series(2), alpha in 0.01f64..100.0) {
                let b = toeplitz_inverse_series(series.coeffs()).unwrap();
                let scaled = series.scaled(Complex64::new(alpha, 0.0));
                let b_scaled = toeplitz_inverse_series(scaled.coeffs()).unwrap();
                for (x, y) in b.iter().zip(&b_scaled) {
                    let expect = x / alpha;
                    prop_assert!((y - expect).norm() <= 1e-12 * expect.norm().max(1e-12));
                }
            }

            #[test]
            fn positive_scale_leaves_poles(series in arb_series(2), alpha in 0.01f64..100.0) {
                let p1 = extract_pade_parameters(&series);
                let p2 = extract_pade_parameters(&series.scaled(Complex64::new(alpha, 0.0)));
                if let (Ok(p1), Ok(p2)) = (p1, p2) {
                    for (a, b) in p1.poles.iter().zip(&p2.poles) {
                        prop_assert!((a - b).norm() < 1e-8 * a.norm().max(1.0));
                    }
                }
            }
        }
    }
}
