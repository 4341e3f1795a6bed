use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::Rational;
use super::{AlgebraError, LaurentPolynomial};

/// Convex hull of a finite set of integer points, stored by its vertices in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolytope {
    n: usize,
    vertices: Vec<Vec<i64>>,
}

impl NewtonPolytope {
    /// Hull of an arbitrary point set; redundant points are discarded.
    pub fn from_points(n: usize, points: &[Vec<i64>]) -> Result<Self, AlgebraError> {
        if points.is_empty() {
            return Err(AlgebraError::EmptyPointSet);
        }
        if let Some(p) = points.iter().find(|p| p.len() != n) {
            return Err(AlgebraError::DimensionMismatch { expected: n, found: p.len() });
        }
        Ok(Self { n, vertices: extreme_points(points) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// Lexicographically smallest vertex.
    pub fn lex_min_vertex(&self) -> &[i64] {
        &self.vertices[0]
    }

    pub fn translated(&self, shift: &[i64]) -> Self {
        let mut vertices: Vec<Vec<i64>> =
            self.vertices.iter().map(|v| v.iter().zip(shift).map(|(a, b)| a + b).collect()).collect();
        vertices.sort();
        Self { n: self.n, vertices }
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        in_convex_hull(p, &self.vertices)
    }
}

/// Newton polytope of `f`: the hull of its exponent vectors.
pub fn newton_polytope(f: &LaurentPolynomial) -> Result<NewtonPolytope, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    NewtonPolytope::from_points(f.n(), &f.support())
}

/// Extreme points of a finite set, sorted and deduplicated.
pub fn extreme_points(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    (0..pts.len())
        .filter(|&i| {
            let others: Vec<Vec<i64>> =
                pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q.clone()).collect();
            !in_convex_hull(&pts[i], &others)
        })
        .map(|i| pts[i].clone())
        .collect()
}

/// Exact test of `p ∈ conv(points)`: phase one of the simplex method on
/// `Σ λ_j q_j = p, Σ λ_j = 1, λ ≥ 0` over the rationals, with Bland's rule.
pub fn in_convex_hull(p: &[i64], points: &[Vec<i64>]) -> bool {
    if points.is_empty() {
        return false;
    }
    let m = p.len() + 1;
    let k = points.len();
    // tableau columns: k structural, m artificial, 1 right-hand side
    let width = k + m + 1;
    let mut tab: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = vec![Rational::zero(); width];
            let (coeffs, rhs): (Vec<i64>, i64) =
                if i < p.len() { (points.iter().map(|q| q[i]).collect(), p[i]) } else { (vec![1; k], 1) };
            let sign = if rhs < 0 { -1 } else { 1 };
            for (j, c) in coeffs.into_iter().enumerate() {
                row[j] = Rational::from_integer((sign * c).into());
            }
            row[k + i] = Rational::from_integer(1.into());
            row[width - 1] = Rational::from_integer((sign * rhs).into());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (k..k + m).collect();
    // objective: minimise the sum of artificials; reduced costs of structurals
    let mut cost = vec![Rational::zero(); width];
    for row in &tab {
        for j in 0..k {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }
    loop {
        let Some(enter) = (0..k + m).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // unbounded cannot happen for a bounded phase-one objective
            break;
        };
        let pivot = tab[r][enter].clone();
        for v in tab[r].iter_mut() {
            *v /= &pivot;
        }
        let pivot_row = tab[r].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        let f = cost[enter].clone();
        for (v, pv) in cost.iter_mut().zip(&pivot_row) {
            *v -= &f * pv;
        }
        basis[r] = enter;
    }
    cost[width - 1].is_zero()
}
