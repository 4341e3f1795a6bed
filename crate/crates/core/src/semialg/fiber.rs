use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{check_point, describe, membership, SemialgError};
use crate::line::{collinear, reduce, Classification, LineCoordinate, ParametricLine};

/// Squared transverse offset, relative to the point's scale, below which a
/// real-line fiber collapses to the single parameter on the circle of ends.
pub const FIBER_MERGE_TOL: f64 = 1e-12;

/// A parameter `t = p + q·i` with `u = p² + q²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberSolution {
    pub u: f64,
    pub p: f64,
    pub q: f64,
}

impl FiberSolution {
    pub fn from_t(t: Complex64) -> Self {
        Self { u: t.norm_sqr(), p: t.re, q: t.im }
    }

    pub fn t(&self) -> Complex64 {
        Complex64::new(self.p, self.q)
    }
}

/// Every `t` with `|ℓ(t)| = point`. Complex lines have one; real lines have
/// one on the circle through the ends and two conjugate ones off it.
pub fn fiber_solve(line: &ParametricLine, point: &[f64], tol: f64) -> Result<Vec<FiberSolution>, SemialgError> {
    check_point(line.n(), point)?;
    let desc = describe(line);
    if desc.ends < 4 {
        return Err(SemialgError::TooFewEnds(desc.ends));
    }
    if !membership(&desc, point, tol)? {
        return Err(SemialgError::NotInAmoeba);
    }
    let (_, reduced) = reduce(line);
    let rep = desc.subtorus.reduced_coords.clone();
    let mut data = Vec::with_capacity(rep.len());
    for (m, c) in reduced.coords().iter().enumerate() {
        let LineCoordinate::Affine { a, b } = c else { unreachable!("reduced lines are affine") };
        // |t − b|² from the modulus of a(t − b)
        let x = point[rep[m]];
        data.push((b.clone(), b.to_c64(), x * x / a.to_c64().norm_sqr()));
    }

    let ts: Vec<Complex64> = match desc.classification {
        Classification::Real => {
            let b0 = data[0].1;
            let d = data[1].1 - b0;
            // b_m = b0 + σ_m·d with σ_m real; τ = (t − b0)/d
            let sigma: Vec<f64> = data.iter().map(|(_, b, _)| ((b - b0) * d.conj()).re / d.norm_sqr()).collect();
            let lo = (0..sigma.len()).min_by(|&x, &y| sigma[x].total_cmp(&sigma[y])).unwrap();
            let hi = (0..sigma.len()).max_by(|&x, &y| sigma[x].total_cmp(&sigma[y])).unwrap();
            // |τ − σ|² = u' − 2σp' + σ²
            let rhs = |m: usize| data[m].2 / d.norm_sqr() - sigma[m] * sigma[m];
            let p = (rhs(lo) - rhs(hi)) / (-2.0 * (sigma[lo] - sigma[hi]));
            let u = rhs(lo) + 2.0 * sigma[lo] * p;
            let q2 = u - p * p;
            let scale = u.abs() + p * p;
            let taus = if q2.abs() <= FIBER_MERGE_TOL * scale {
                vec![Complex64::new(p, 0.0)]
            } else if q2 < 0.0 {
                return Err(SemialgError::NotInAmoeba);
            } else {
                let q = q2.sqrt();
                vec![Complex64::new(p, q), Complex64::new(p, -q)]
            };
            taus.into_iter().map(|tau| b0 + d * tau).collect()
        }
        _ => {
            let m = data.len();
            let triple = (0..m)
                .flat_map(|i| (i + 1..m).flat_map(move |j| (j + 1..m).map(move |k| [i, j, k])))
                .find(|&[i, j, k]| !collinear(&data[i].0, &data[j].0, &data[k].0).unwrap_or(true))
                .expect("complex lines have a non-collinear triple");
            let mtx = nalgebra::Matrix3::from_fn(|r, c| {
                let b = data[triple[r]].1;
                [1.0, -2.0 * b.re, -2.0 * b.im][c]
            });
            let rhs = nalgebra::Vector3::from_fn(|r, _| data[triple[r]].2 - data[triple[r]].1.norm_sqr());
            let sol = mtx.lu().solve(&rhs).ok_or(SemialgError::NotInAmoeba)?;
            let (u, p, q) = (sol[0], sol[1], sol[2]);
            if (u - p * p - q * q).abs() > tol * (u.abs() + p * p + q * q) {
                return Err(SemialgError::NotInAmoeba);
            }
            vec![Complex64::new(p, q)]
        }
    };

    let mut out = Vec::with_capacity(ts.len());
    for t in ts {
        let res = forward_residual(line, t, point);
        if res > tol {
            return Err(SemialgError::FiberMismatch(res));
        }
        out.push(FiberSolution::from_t(t));
    }
    out.sort_by(|a, b| b.q.total_cmp(&a.q));
    Ok(out)
}

/// `max_m | |ℓ_m(t)| − X_m | / X_m`.
pub fn forward_residual(line: &ParametricLine, t: Complex64, point: &[f64]) -> f64 {
    line.moduli(t).iter().zip(point).map(|(m, x)| (m - x).abs() / x).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real_line() -> ParametricLine {
        ParametricLine::from_integers(&[(1, 0, 0, 0), (1, 0, -1, 0), (1, 0, 1, 0)]).unwrap()
    }

    fn symmetric_line() -> ParametricLine {
        let one = Complex64::new(1.0, 0.0);
        let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        ParametricLine::from_complex(&[(one, one), (one, z), (one, z * z)]).unwrap()
    }

    #[test]
    fn real_line_two_to_one() {
        let t = Complex64::new(2.0, 1.0);
        let sols = fiber_solve(&real_line(), &real_line().moduli(t), 1e-9).unwrap();
        assert_eq!(sols.len(), 2);
        assert!((sols[0].t() - t).norm() < 1e-12);
        assert!((sols[1].t() - t.conj()).norm() < 1e-12);
    }

    #[test]
    fn real_line_on_circle() {
        let t = Complex64::new(2.0, 0.0);
        let sols = fiber_solve(&real_line(), &real_line().moduli(t), 1e-9).unwrap();
        assert_eq!(sols.len(), 1);
        assert!((sols[0].t() - t).norm() < 1e-12);
    }

    #[test]
    fn complex_line_bijective() {
        let line = symmetric_line();
        let t = Complex64::new(0.0, 1.0);
        let sols = fiber_solve(&line, &line.moduli(t), 1e-9).unwrap();
        assert_eq!(sols.len(), 1);
        assert!((sols[0].t() - t).norm() < 1e-9);
    }

    #[test]
    fn errors() {
        assert_eq!(fiber_solve(&real_line(), &[1.0, 1.0, 1.0], 1e-6), Err(SemialgError::NotInAmoeba));
        let few = ParametricLine::from_integers(&[(1, 0, 0, 0), (1, 0, 1, 0)]).unwrap();
        assert_eq!(fiber_solve(&few, &[1.0, 1.0], 1e-6), Err(SemialgError::TooFewEnds(3)));
    }
}
