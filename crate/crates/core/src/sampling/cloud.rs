use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::roots::certified_roots;
use super::SamplingError;
use crate::algebra::LaurentPolynomial;
use crate::line::ParametricLine;

/// Sampled parameters stay at least this far from every finite end.
pub const END_AVOIDANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CloudMode {
    /// Points of `|V| ⊂ ℝ_>ⁿ`.
    Moduli,
    /// Points of the coamoeba, angles in `(−π, π]`.
    Angles,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointCloud {
    pub n: usize,
    pub mode: CloudMode,
    pub seed: u64,
    pub points: Vec<Vec<f64>>,
    /// Roots dropped by residual certification.
    #[serde(default)]
    pub discarded: usize,
}

impl PointCloud {
    pub fn new(n: usize, mode: CloudMode, seed: u64) -> Self {
        Self { n, mode, seed, points: Vec::new(), discarded: 0 }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Appends the points of `other`, which must have the same dimension and mode.
    pub fn extend(&mut self, other: &PointCloud) {
        assert_eq!((self.n, self.mode), (other.n, other.mode));
        self.points.extend(other.points.iter().cloned());
        self.discarded += other.discarded;
    }

    /// Reorders coordinates: new coordinate `k` is old coordinate `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let points = self.points.iter().map(|p| perm.iter().map(|&i| p[i]).collect()).collect();
        Self { n: perm.len(), points, ..self.clone() }
    }

    /// Coordinatewise concatenation of two clouds of the same length.
    pub fn zip(&self, other: &PointCloud) -> Self {
        assert_eq!(self.len(), other.len());
        let points = self.points.iter().zip(&other.points).map(|(p, q)| p.iter().chain(q).copied().collect()).collect();
        Self {
            n: self.n + other.n,
            mode: self.mode,
            seed: self.seed,
            points,
            discarded: self.discarded + other.discarded,
        }
    }

    pub fn log_points(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(|p| p.iter().map(|x| x.ln()).collect()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplingStrategy {
    /// Area-uniform on the disk of radius `2·R₀`.
    UniformDisk,
    /// Log-uniform modulus on `[0.1·R₀, 10·R₀]`, uniform argument.
    Annulus,
    /// Log-uniform distance `10⁻⁶…1` (times `R₀`) from a random finite end,
    /// or modulus `R₀…10⁶·R₀` for the end at infinity.
    NearEnds,
}

impl std::str::FromStr for SamplingStrategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform-disk" => Ok(Self::UniformDisk),
            "annulus" => Ok(Self::Annulus),
            "near-ends" => Ok(Self::NearEnds),
            _ => Err(format!("unknown strategy {s:?} (expected uniform-disk, annulus or near-ends)")),
        }
    }
}

/// `R₀ = 1 + max |b|`, a radius containing every finite end.
fn ends_radius(ends: &[Complex64]) -> f64 {
    1.0 + ends.iter().map(|b| b.norm()).fold(0.0, f64::max)
}

fn draw(rng: &mut ChaCha8Rng, strategy: SamplingStrategy, ends: &[Complex64], r0: f64) -> Complex64 {
    let phase = rng.random_range(0.0..TAU);
    match strategy {
        SamplingStrategy::UniformDisk => Complex64::from_polar(2.0 * r0 * rng.random::<f64>().sqrt(), phase),
        SamplingStrategy::Annulus => Complex64::from_polar(r0 * 10f64.powf(rng.random_range(-1.0..1.0)), phase),
        SamplingStrategy::NearEnds => {
            let pick = rng.random_range(0..=ends.len());
            match ends.get(pick) {
                Some(b) => b + Complex64::from_polar(r0 * 10f64.powf(rng.random_range(-6.0..0.0)), phase),
                None => Complex64::from_polar(r0 * 10f64.powf(rng.random_range(0.0..6.0)), phase),
            }
        }
    }
}

/// `N` parameters drawn by `strategy`, each at distance `≥ END_AVOIDANCE`
/// from the finite ends.
pub fn sample_parameters(line: &ParametricLine, strategy: SamplingStrategy, count: usize, seed: u64) -> Vec<Complex64> {
    let ends = line.finite_end_parameters();
    let r0 = ends_radius(&ends);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let t = draw(&mut rng, strategy, &ends, r0);
        if ends.iter().all(|b| (t - b).norm() >= END_AVOIDANCE) {
            out.push(t);
        }
    }
    out
}

/// Moduli of `ℓ(t)` at `count` sampled parameters.
pub fn sample_line(line: &ParametricLine, strategy: SamplingStrategy, count: usize, seed: u64) -> PointCloud {
    let mut cloud = PointCloud::new(line.n(), CloudMode::Moduli, seed);
    cloud.points = sample_parameters(line, strategy, count, seed).into_iter().map(|t| line.moduli(t)).collect();
    cloud
}

/// `arg z` in `(−π, π]`.
pub fn principal_arg(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    if a <= -PI {
        PI
    } else {
        a
    }
}

pub fn coamoeba_point(line: &ParametricLine, t: Complex64) -> Vec<f64> {
    line.eval(t).into_iter().map(principal_arg).collect()
}

/// Arguments of `ℓ(t)` at `count` parameters drawn from the annulus strategy.
pub fn sample_coamoeba(line: &ParametricLine, count: usize, seed: u64) -> PointCloud {
    let mut cloud = PointCloud::new(line.n(), CloudMode::Angles, seed);
    cloud.points = sample_parameters(line, SamplingStrategy::Annulus, count, seed)
        .into_iter()
        .map(|t| coamoeba_point(line, t))
        .collect();
    cloud
}

/// Scans the fibers `x = ρe^{iθ}` of a plane curve `f(x, y) = 0`, emitting
/// `(ρ, |y|)` for every certified nonzero root `y`. Angles are `2πk/count`,
/// shifted by a seed-dependent phase when `seed ≠ 0`.
pub fn sample_plane_curve(
    f: &LaurentPolynomial,
    modulus_grid: &[f64],
    angle_count: usize,
    seed: u64,
) -> Result<PointCloud, SamplingError> {
    if f.n() != 2 {
        return Err(SamplingError::NotPlaneCurve(f.n()));
    }
    if !f.depends_on(1) {
        return Err(SamplingError::IndependentOfSecondVariable);
    }
    if let Some(&rho) = modulus_grid.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
        return Err(SamplingError::InvalidModulus(rho));
    }
    let step = TAU / angle_count.max(1) as f64;
    let phase = if seed == 0 { 0.0 } else { ChaCha8Rng::seed_from_u64(seed).random_range(0.0..step) };
    let mut cloud = PointCloud::new(2, CloudMode::Moduli, seed);
    for &rho in modulus_grid {
        for k in 0..angle_count {
            let x = Complex64::from_polar(rho, phase + step * k as f64);
            let (_, coeffs) = f.univariate_restriction(1, &[x, Complex64::new(1.0, 0.0)]);
            let roots = certified_roots(&coeffs);
            cloud.discarded += roots.discarded;
            cloud.points.extend(roots.roots.iter().map(|y| vec![rho, y.norm()]));
        }
    }
    Ok(cloud)
}

/// `count` moduli log-spaced on `[lo, hi]` (log coordinates), inclusive.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![((lo + hi) / 2.0).exp()],
        _ => (0..count).map(|k| (lo + (hi - lo) * k as f64 / (count - 1) as f64).exp()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line2() -> ParametricLine {
        ParametricLine::from_integers(&[(1, 0, 0, 0), (1, 0, -1, 0)]).unwrap()
    }

    #[test]
    fn sampled_line_points_satisfy_triangle_inequality() {
        for strategy in [SamplingStrategy::UniformDisk, SamplingStrategy::Annulus, SamplingStrategy::NearEnds] {
            let cloud = sample_line(&line2(), strategy, 500, 3);
            assert_eq!(cloud.len(), 500);
            for p in &cloud.points {
                assert!(p[0] + p[1] >= 1.0 - 1e-12 && (p[0] - p[1]).abs() <= 1.0 + 1e-12);
                assert!(p.iter().all(|&x| x > 0.0));
            }
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = sample_line(&line2(), SamplingStrategy::NearEnds, 50, 9);
        let b = sample_line(&line2(), SamplingStrategy::NearEnds, 50, 9);
        let c = sample_line(&line2(), SamplingStrategy::NearEnds, 50, 10);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn coamoeba_examples() {
        let l = ParametricLine::from_integers(&[(1, 0, 0, 0), (2, 0, 0, 0)]).unwrap();
        assert_eq!(coamoeba_point(&l, Complex64::new(1.0, 0.0)), vec![0.0, 0.0]);
        let l = ParametricLine::from_integers(&[(1, 0, 0, 0), (-1, 0, 0, 0)]).unwrap();
        assert_eq!(coamoeba_point(&l, Complex64::new(1.0, 0.0)), vec![0.0, PI]);
        let l = ParametricLine::from_integers(&[(1, 0, 0, 0), (1, 0, 1, 0)]).unwrap();
        let a = coamoeba_point(&l, Complex64::new(0.0, 1.0));
        assert!((a[0] - PI / 2.0).abs() < 1e-14 && (a[1] - 3.0 * PI / 4.0).abs() < 1e-14, "{a:?}");
        assert_eq!(principal_arg(Complex64::new(-1.0, -0.0)), PI);
    }

    #[test]
    fn plane_curve_examples() {
        // y − (x−1)(x−2) = y − x² + 3x − 2
        let f = LaurentPolynomial::from_integer_terms(2, &[(1, &[0, 1]), (-1, &[2, 0]), (3, &[1, 0]), (-2, &[0, 0])])
            .unwrap();
        let cloud = sample_plane_curve(&f, &[3.0], 2, 0).unwrap();
        // θ = π gives x = −3, y = 9 + 9 + 2
        assert!((cloud.points[1][1] - 20.0).abs() < 1e-12);

        let g = LaurentPolynomial::from_integer_terms(2, &[(1, &[1, 0]), (1, &[0, 1]), (1, &[0, 0])]).unwrap();
        let cloud = sample_plane_curve(&g, &[1.0], 1, 0).unwrap();
        assert_eq!(cloud.points, vec![vec![1.0, 2.0]]);

        let h = LaurentPolynomial::from_integer_terms(2, &[(1, &[1, 0]), (1, &[0, 0])]).unwrap();
        assert_eq!(sample_plane_curve(&h, &[1.0], 4, 0), Err(SamplingError::IndependentOfSecondVariable));
    }
}
