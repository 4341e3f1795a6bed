use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::SamplingError;
use crate::line::ParametricLine;

/// Default relative singular-value threshold for numeric rank.
pub const RANK_TOL: f64 = 1e-8;

/// A holomorphic map `φ: ℂᵏ ⊃ U → (ℂ*)ⁿ` with its complex Jacobian.
pub trait Parametrization {
    fn n(&self) -> usize;
    /// Number of complex parameters `k`.
    fn k(&self) -> usize;
    fn eval(&self, t: &[Complex64]) -> Vec<Complex64>;
    /// `∂φ_i/∂t_j`, `n` rows of `k` entries.
    fn jacobian(&self, t: &[Complex64]) -> Vec<Vec<Complex64>>;
}

impl Parametrization for ParametricLine {
    fn n(&self) -> usize {
        ParametricLine::n(self)
    }

    fn k(&self) -> usize {
        1
    }

    fn eval(&self, t: &[Complex64]) -> Vec<Complex64> {
        ParametricLine::eval(self, t[0])
    }

    fn jacobian(&self, _t: &[Complex64]) -> Vec<Vec<Complex64>> {
        self.coords().iter().map(|c| vec![c.derivative()]).collect()
    }
}

/// `t ↦ (c_i · Π_j t_j^{A_ij})_i`, an orbit of a `k`-dimensional subtorus.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialOrbit {
    pub scale: Vec<Complex64>,
    pub exponents: Vec<Vec<i64>>,
}

impl MonomialOrbit {
    pub fn new(scale: Vec<Complex64>, exponents: Vec<Vec<i64>>) -> Self {
        assert_eq!(scale.len(), exponents.len());
        Self { scale, exponents }
    }
}

impl Parametrization for MonomialOrbit {
    fn n(&self) -> usize {
        self.scale.len()
    }

    fn k(&self) -> usize {
        self.exponents.first().map_or(0, Vec::len)
    }

    fn eval(&self, t: &[Complex64]) -> Vec<Complex64> {
        self.scale.iter().zip(&self.exponents).map(|(c, row)| c * crate::algebra::monomial(t, row)).collect()
    }

    fn jacobian(&self, t: &[Complex64]) -> Vec<Vec<Complex64>> {
        self.eval(t)
            .into_iter()
            .zip(&self.exponents)
            .map(|(x, row)| row.iter().zip(t).map(|(&a, tj)| x * a as f64 / tj).collect())
            .collect()
    }
}

/// `(s, t) ↦ (φ(s), ψ(t))`.
pub struct Product<'a>(pub &'a dyn Parametrization, pub &'a dyn Parametrization);

impl Parametrization for Product<'_> {
    fn n(&self) -> usize {
        self.0.n() + self.1.n()
    }

    fn k(&self) -> usize {
        self.0.k() + self.1.k()
    }

    fn eval(&self, t: &[Complex64]) -> Vec<Complex64> {
        let (s, u) = t.split_at(self.0.k());
        let mut x = self.0.eval(s);
        x.extend(self.1.eval(u));
        x
    }

    fn jacobian(&self, t: &[Complex64]) -> Vec<Vec<Complex64>> {
        let (s, u) = t.split_at(self.0.k());
        let zero = Complex64::new(0.0, 0.0);
        let mut rows: Vec<Vec<Complex64>> = self
            .0
            .jacobian(s)
            .into_iter()
            .map(|mut r| {
                r.resize(self.k(), zero);
                r
            })
            .collect();
        rows.extend(self.1.jacobian(u).into_iter().map(|r| {
            let mut full = vec![zero; self.0.k()];
            full.extend(r);
            full
        }));
        rows
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub estimated_dimension: usize,
    /// Descending singular values at each smooth probe.
    pub singular_values: Vec<Vec<f64>>,
    pub probes_used: usize,
    pub probes_requested: usize,
}

/// Real Jacobian of `Log∘φ`: `n` rows and `2k` columns `[Re g, −Im g]` per
/// parameter, with `g = (∂φ_i/∂t_j)/φ_i`. `None` when the probe is singular.
pub fn log_jacobian(phi: &dyn Parametrization, t: &[Complex64]) -> Option<DMatrix<f64>> {
    let x = phi.eval(t);
    let jac = phi.jacobian(t);
    let scale = x.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if x.iter().any(|v| !v.is_finite() || v.norm() <= 1e-12 * scale) {
        return None;
    }
    let k = phi.k();
    let mut m = DMatrix::zeros(phi.n(), 2 * k);
    for (i, row) in jac.iter().enumerate() {
        for (j, d) in row.iter().enumerate() {
            let g = d / x[i];
            if !g.is_finite() {
                return None;
            }
            m[(i, 2 * j)] = g.re;
            m[(i, 2 * j + 1)] = -g.im;
        }
    }
    Some(m)
}

/// Numeric rank of `d Log` at random probes, each parameter area-uniform on
/// the annulus `0.1 ≤ |t| ≤ 10`; the estimate is the maximum over probes.
pub fn amoeba_dimension(
    phi: &dyn Parametrization,
    probe_count: usize,
    seed: u64,
    tol: f64,
) -> Result<DimensionReport, SamplingError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = DimensionReport {
        estimated_dimension: 0,
        singular_values: Vec::new(),
        probes_used: 0,
        probes_requested: probe_count,
    };
    for _ in 0..probe_count {
        let t: Vec<Complex64> = (0..phi.k())
            .map(|_| {
                let r = rng.random_range(0.01f64..100.0).sqrt();
                Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
            })
            .collect();
        let Some(m) = log_jacobian(phi, &t) else { continue };
        let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        let top = sv.first().copied().unwrap_or(0.0);
        let rank = sv.iter().filter(|&&s| s > tol * top).count();
        report.estimated_dimension = report.estimated_dimension.max(rank);
        report.singular_values.push(sv);
        report.probes_used += 1;
    }
    if report.probes_used == 0 {
        return Err(SamplingError::NoSmoothProbe);
    }
    Ok(report)
}

/// Whether a torus of dimension `dim_t` acts diminishingly on `V`, where `W`
/// is the image of `V` in the quotient torus.
pub fn diminishing_check(dim_t: usize, dim_v: usize, dim_w: usize, n: usize) -> Result<bool, SamplingError> {
    if dim_w > dim_v || dim_v > n || dim_t > n {
        return Err(SamplingError::InconsistentDimensions { dim_t, dim_v, dim_w, n });
    }
    let strict = dim_t < 2 * (dim_v - dim_w) && 2 * dim_w + dim_t < n;
    Ok(strict && dim_t >= 1 && dim_t < n)
}
