use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{newton_polytope, polytope_lattice, LaurentPolynomial, Term};
use crate::sampling::roots::certified_roots;

/// A term is a lopsidedness witness only when its log-modulus beats the
/// log-sum of the others by more than this margin.
pub const LOPSIDED_MARGIN: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    Inside,
    Outside,
    Unknown,
}

fn log_sum_exp(v: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = v.collect();
    let top = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return top;
    }
    top + v.iter().map(|x| (x - top).exp()).sum::<f64>().ln()
}

/// Index of a term with `|c_i|e^{α_i·z} > Σ_{j≠i} |c_j|e^{α_j·z}`; such a term
/// certifies `z ∉ 𝒜(f)`.
pub fn lopsided(f: &LaurentPolynomial, z: &[f64]) -> Option<usize> {
    let logs = f.log_term_moduli(z);
    let (top, &l_top) = logs.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1))?;
    let rest = log_sum_exp(logs.iter().enumerate().filter(|&(i, _)| i != top).map(|(_, &l)| l));
    (l_top > rest + LOPSIDED_MARGIN).then_some(top)
}

/// Index of a term dominating the sum of the others at every point of the
/// box of half-width `radius` around `z`, using
/// `(α_i − α_j)·δ ≥ −radius·|α_i − α_j|₁`.
pub fn lopsided_within(f: &LaurentPolynomial, z: &[f64], radius: f64) -> Option<usize> {
    let top = lopsided(f, z)?;
    let logs = f.log_term_moduli(z);
    let terms = f.terms();
    let worst = log_sum_exp(terms.iter().enumerate().filter(|&(j, _)| j != top).map(|(j, t)| {
        let spread: i64 = t.exponent.iter().zip(&terms[top].exponent).map(|(a, b)| (a - b).abs()).sum();
        logs[j] + radius * spread as f64
    }));
    (logs[top] > worst + LOPSIDED_MARGIN).then_some(top)
}

/// `f = x^{v₀} · f̄(x^{m₁}, …, x^{m_a})` with `m_k` a basis of the saturated
/// lattice of the Newton polytope. Then `z ∈ 𝒜(f)` iff `Φz ∈ 𝒜(f̄)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterReduction {
    pub rows: Vec<Vec<i64>>,
    pub reduced: LaurentPolynomial,
}

impl CharacterReduction {
    pub fn new(f: &LaurentPolynomial) -> Self {
        let polytope = newton_polytope(f).expect("nonzero polynomial");
        let lattice = polytope_lattice(&polytope).expect("dimensions agree");
        let base = polytope.lex_min_vertex().to_vec();
        let terms = f
            .terms()
            .iter()
            .map(|t| {
                let shifted: Vec<i64> = t.exponent.iter().zip(&base).map(|(a, b)| a - b).collect();
                let exponent = lattice.coordinates(&shifted).expect("support lies in its own lattice");
                Term { coeff: t.coeff.clone(), exponent }
            })
            .collect();
        let reduced = LaurentPolynomial::new(lattice.rank(), terms).expect("reduction keeps distinct exponents");
        Self { rows: lattice.basis().to_vec(), reduced }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// `Φz`.
    pub fn project(&self, z: &[f64]) -> Vec<f64> {
        self.rows.iter().map(|r| r.iter().zip(z).map(|(&m, &zi)| m as f64 * zi).sum::<f64>() + 0.0).collect()
    }

    /// Largest shift of `Φz` when each `z_j` moves by at most `half_width[j]`.
    pub fn projected_radius(&self, half_width: &[f64]) -> f64 {
        self.rows
            .iter()
            .map(|r| r.iter().zip(half_width).map(|(&m, h)| (m as f64).abs() * h).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Membership of the box of half-width `tol` around `w` in `𝒜(f̄)`, up to
    /// the angular resolution of the scan.
    pub fn membership(&self, w: &[f64], angle_resolution: usize, tol: f64) -> Membership {
        let a = self.rank();
        if a == 0 || lopsided_within(&self.reduced, w, tol).is_some() {
            return Membership::Outside;
        }
        let mut unsure = false;
        // each variable in turn is solved for, so tentacles along every axis are seen
        for solve in (0..a).rev() {
            match self.scan(w, solve, angle_resolution.max(1), tol) {
                Some(true) => return Membership::Inside,
                Some(false) => {}
                None => unsure = true,
            }
        }
        if a <= 2 && !unsure {
            Membership::Outside
        } else {
            Membership::Unknown
        }
    }

    /// Scans the torus `|y_k| = e^{w_k}`, `k ≠ solve`, and tracks the roots in
    /// `y_solve`. `Some(true)` when a root comes within `tol` of the circle
    /// `|y_solve| = e^{w_solve}` or the number of roots inside it changes,
    /// `Some(false)` when neither happens, `None` when roots were discarded.
    fn scan(&self, w: &[f64], solve: usize, res: usize, tol: f64) -> Option<bool> {
        let a = self.rank();
        let target = w[solve];
        let others: Vec<usize> = (0..a).filter(|&k| k != solve).collect();
        let mut unsure = false;
        let mut y = vec![Complex64::new(1.0, 0.0); a];
        // inner roots at one torus point; None when a root meets the circle
        let mut count_inside = |y: &[Complex64]| -> Option<usize> {
            let (_, coeffs) = self.reduced.univariate_restriction(solve, y);
            let roots = certified_roots(&coeffs);
            unsure |= roots.discarded > 0;
            let mut inside = roots.zero_roots;
            for r in &roots.roots {
                let lr = r.norm().ln();
                if (lr - target).abs() <= tol {
                    return None;
                }
                if lr < target {
                    inside += 1;
                }
            }
            Some(inside)
        };
        let Some((&scanned, outer_vars)) = others.split_last() else {
            return match count_inside(&y) {
                None => Some(true),
                Some(_) if unsure => None,
                Some(_) => Some(false),
            };
        };
        let angle = |k: usize| std::f64::consts::TAU * k as f64 / res as f64;
        // one loop in the angle of `scanned` per grid point of the remaining angles
        for o in 0..res.pow(outer_vars.len() as u32) {
            let mut rest = o;
            for &v in outer_vars {
                y[v] = Complex64::from_polar(w[v].exp(), angle(rest % res));
                rest /= res;
            }
            let mut first = None;
            let mut prev = None;
            for k in 0..res {
                y[scanned] = Complex64::from_polar(w[scanned].exp(), angle(k));
                let Some(n) = count_inside(&y) else { return Some(true) };
                if prev.is_some_and(|p| p != n) {
                    return Some(true);
                }
                first.get_or_insert(n);
                prev = Some(n);
            }
            if first != prev {
                return Some(true);
            }
        }
        if unsure {
            None
        } else {
            Some(false)
        }
    }
}

/// Numeric membership of `z` in `𝒜(f)`. Lopsided points are `Outside`. Otherwise
/// `f` is reduced to its character lattice of rank `a`: for `a = 1` the root
/// moduli decide; for `a = 2` a root of the last variable crossing the circle
/// `|y| = e^{w}` along the angle scan means `Inside`, its absence `Outside`;
/// for `a ≥ 3` the same scan over a torus grid yields `Inside` or `Unknown`.
pub fn hypersurface_membership(f: &LaurentPolynomial, z: &[f64], angle_resolution: usize, tol: f64) -> Membership {
    if lopsided(f, z).is_some() {
        return Membership::Outside;
    }
    let red = CharacterReduction::new(f);
    red.membership(&red.project(z), angle_resolution, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(n: usize, terms: &[(i64, &[i64])]) -> LaurentPolynomial {
        LaurentPolynomial::from_integer_terms(n, terms).unwrap()
    }

    fn plane_line() -> LaurentPolynomial {
        poly(2, &[(1, &[1, 0]), (1, &[0, 1]), (1, &[0, 0])])
    }

    #[test]
    fn lopsided_examples() {
        let f = plane_line();
        assert_eq!(lopsided(&f, &[2.0, 0.0]), Some(0));
        assert_eq!(lopsided(&f, &[0.0, 0.0]), None);
        let x = poly(2, &[(1, &[1, 0])]);
        assert_eq!(lopsided(&x, &[0.3, -7.0]), Some(0));
    }

    #[test]
    fn membership_examples() {
        let f = plane_line();
        assert_eq!(hypersurface_membership(&f, &[0.0, 0.0], 64, 1e-6), Membership::Inside);
        assert_eq!(hypersurface_membership(&f, &[2.0, 0.0], 64, 1e-6), Membership::Outside);
        assert_eq!(hypersurface_membership(&f, &[-0.6, -0.6], 64, 1e-6), Membership::Inside);
        assert_eq!(hypersurface_membership(&f, &[-1.0, -1.0], 64, 1e-6), Membership::Outside);
        let x = poly(2, &[(1, &[1, 0])]);
        assert_eq!(hypersurface_membership(&x, &[0.0, 0.0], 64, 1e-6), Membership::Outside);
    }

    #[test]
    fn character_reduction_of_a_quadratic_in_one_variable() {
        // z² − 2z + 3 in three variables: amoeba is the plane log|z| = log√3
        let g = poly(3, &[(1, &[0, 0, 2]), (-2, &[0, 0, 1]), (3, &[0, 0, 0])]);
        let red = CharacterReduction::new(&g);
        assert_eq!(red.rows, vec![vec![0, 0, 1]]);
        let w = 3f64.sqrt().ln();
        assert_eq!(hypersurface_membership(&g, &[4.0, -2.0, w + 1e-8], 16, 1e-6), Membership::Inside);
        assert_eq!(hypersurface_membership(&g, &[4.0, -2.0, w + 1e-2], 16, 1e-6), Membership::Outside);
    }

    #[test]
    fn reduction_to_a_rank_two_lattice() {
        // x²y + xy² + xy·z⁰ in three variables is xy·(x + y + 1)
        let f = poly(3, &[(1, &[2, 1, 0]), (1, &[1, 2, 0]), (1, &[1, 1, 0])]);
        let red = CharacterReduction::new(&f);
        assert_eq!(red.rank(), 2);
        assert_eq!(hypersurface_membership(&f, &[0.0, 0.0, 5.0], 64, 1e-6), Membership::Inside);
        assert_eq!(hypersurface_membership(&f, &[-1.0, -1.0, 5.0], 64, 1e-6), Membership::Outside);
    }

    #[test]
    fn three_variable_membership_is_inside_or_unknown() {
        let f = poly(3, &[(1, &[1, 0, 0]), (1, &[0, 1, 0]), (1, &[0, 0, 1]), (1, &[0, 0, 0])]);
        assert_eq!(hypersurface_membership(&f, &[0.0, 0.0, 0.0], 32, 1e-6), Membership::Inside);
        assert_eq!(hypersurface_membership(&f, &[3.0, 0.0, 0.0], 32, 1e-6), Membership::Outside);
    }
}
