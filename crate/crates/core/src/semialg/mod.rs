//! Semi-algebraic description of the algebraic amoeba `|ℓ| ⊂ ℝ_>ⁿ` of a line.
//!
//! After reduction to its affine subtorus a line has one coordinate per finite
//! end. Two ends: the amoeba is the subtorus envelope itself. Three ends: a
//! single pair of triangle inequalities. Four or more: a quadric or quartic
//! per coordinate triple together with triangle inequalities per pair.

mod fiber;
mod surface;

pub use fiber::{fiber_solve, FiberSolution, FIBER_MERGE_TOL};
pub use surface::{triple_surface, ImplicitModulusSurface, SurfaceKind, QUADRATIC_BASIS, QUARTIC_BASIS};

use serde::{Deserialize, Serialize};

use crate::line::{classify, reduce, same_point, Classification, LineCoordinate, ParametricLine, SubtorusRelations};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum SemialgError {
    #[error("degenerate pair; reduce first")]
    DegeneratePair,
    #[error("coordinates of the triple share an end; reduce first")]
    DegenerateTriple,
    #[error("coordinate {0} is constant")]
    NotAffine(usize),
    #[error("coordinate index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("point has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("moduli must be positive and finite (coordinate {0})")]
    NonPositive(usize),
    #[error("point is not on the amoeba of the line")]
    NotInAmoeba,
    #[error("fiber solving needs at least four ends, line has {0}")]
    TooFewEnds(usize),
    #[error("solution failed forward verification (relative residual {0:e})")]
    FiberMismatch(f64),
}

/// `p·X_i + q·X_j ≥ r` and `|p·X_i − q·X_j| ≤ r`: the three lengths
/// `p·X_i`, `q·X_j`, `r` form a (possibly flat) triangle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanarConstraint {
    pub i: usize,
    pub j: usize,
    pub p: f64,
    pub q: f64,
    pub r: f64,
}

impl PlanarConstraint {
    /// Largest relative violation of the two inequalities; `≤ 0` when satisfied.
    pub fn violation(&self, moduli: &[f64]) -> f64 {
        let u = self.p * moduli[self.i];
        let v = self.q * moduli[self.j];
        let scale = u + v + self.r;
        let lower = self.r - (u + v);
        let upper = (u - v).abs() - self.r;
        lower.max(upper) / scale
    }

    pub fn satisfied(&self, moduli: &[f64], tol: f64) -> bool {
        self.violation(moduli) <= tol
    }
}

/// Eliminating `t` from `x_i = a_i(t − b_i)` and `x_j = a_j(t − b_j)` gives
/// `x_i/a_i − x_j/a_j = b_j − b_i`.
pub fn planar_constraint(line: &ParametricLine, i: usize, j: usize) -> Result<PlanarConstraint, SemialgError> {
    let affine = |m: usize| match line.coords().get(m) {
        Some(LineCoordinate::Affine { a, b }) => Ok((a.clone(), b.clone())),
        Some(LineCoordinate::Constant { .. }) => Err(SemialgError::NotAffine(m)),
        None => Err(SemialgError::IndexOutOfRange(m)),
    };
    let (ai, bi) = affine(i)?;
    let (aj, bj) = affine(j)?;
    if same_point(&bi, &bj) {
        return Err(SemialgError::DegeneratePair);
    }
    Ok(PlanarConstraint { i, j, p: 1.0 / ai.norm(), q: 1.0 / aj.norm(), r: (&bi - &bj).norm() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndsCase {
    TwoEnds,
    ThreeEnds,
    Many,
}

/// Full description of `|ℓ|`. Indices in constraints and surfaces refer to
/// the ambient coordinates of the original line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineAmoebaDescription {
    pub n: usize,
    pub ends: usize,
    pub case: EndsCase,
    pub classification: Classification,
    pub subtorus: SubtorusRelations,
    pub constraints: Vec<PlanarConstraint>,
    pub surfaces: Vec<ImplicitModulusSurface>,
}

pub fn describe(line: &ParametricLine) -> LineAmoebaDescription {
    let (subtorus, reduced) = reduce(line);
    let ends = reduced.n() + 1;
    let rep = subtorus.reduced_coords.clone();
    let case = match ends {
        2 => EndsCase::TwoEnds,
        3 => EndsCase::ThreeEnds,
        _ => EndsCase::Many,
    };
    let mut constraints = Vec::new();
    let mut surfaces = Vec::new();
    if ends >= 3 {
        let m = reduced.n();
        for i in 0..m {
            for j in i + 1..m {
                let mut c = planar_constraint(&reduced, i, j).expect("reduced ends are distinct");
                c.i = rep[i];
                c.j = rep[j];
                constraints.push(c);
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let s = triple_surface(&reduced, i, j, k).expect("reduced ends are distinct");
                    surfaces.push(s.with_coords([rep[i], rep[j], rep[k]]));
                }
            }
        }
    }
    LineAmoebaDescription { n: line.n(), ends, case, classification: classify(line), subtorus, constraints, surfaces }
}

/// Checks the point's dimension and positivity.
pub(crate) fn check_point(n: usize, point: &[f64]) -> Result<(), SemialgError> {
    if point.len() != n {
        return Err(SemialgError::DimensionMismatch { expected: n, found: point.len() });
    }
    match point.iter().position(|&x| !(x > 0.0 && x.is_finite())) {
        Some(k) => Err(SemialgError::NonPositive(k)),
        None => Ok(()),
    }
}

impl LineAmoebaDescription {
    /// Number of quadric and quartic surfaces.
    pub fn surface_counts(&self) -> (usize, usize) {
        let quadrics = self.surfaces.iter().filter(|s| s.kind == SurfaceKind::Quadratic).count();
        (quadrics, self.surfaces.len() - quadrics)
    }

    /// Largest relative defect of the point against every part of the description.
    pub fn max_defect(&self, point: &[f64]) -> Result<f64, SemialgError> {
        check_point(self.n, point)?;
        let mut worst: f64 = 0.0;
        for rel in &self.subtorus.relations {
            let want = rel.expected_modulus(point);
            let got = point[rel.target()];
            worst = worst.max((got - want).abs() / (got + want));
        }
        for c in &self.constraints {
            worst = worst.max(c.violation(point));
        }
        for s in &self.surfaces {
            worst = worst.max(s.relative_residual(point));
        }
        Ok(worst)
    }
}

/// Whether a point of `ℝ_>ⁿ` lies on `|ℓ|`, every test relative with slack `tol`.
pub fn membership(desc: &LineAmoebaDescription, point: &[f64], tol: f64) -> Result<bool, SemialgError> {
    Ok(desc.max_defect(point)? <= tol)
}
