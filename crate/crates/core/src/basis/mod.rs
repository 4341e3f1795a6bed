//! Amoeba bases: independent complete intersections, lopsidedness,
//! hypersurface amoeba membership, and grid verification of
//! `𝒜(V) = 𝒜(f₁) ∩ ⋯ ∩ 𝒜(f_r)`.

mod membership;
mod verify;

pub use membership::{
    hypersurface_membership, lopsided, lopsided_within, CharacterReduction, Membership, LOPSIDED_MARGIN,
};
pub use verify::{verify_basis, verify_basis_with, BasisReport, Verdict, DEFAULT_ANGLE_RESOLUTION, WINDOW_HEURISTIC};

use serde::{Deserialize, Serialize};

use crate::algebra::{affinely_independent, newton_polytope, AlgebraError, LaurentPolynomial};
use crate::line::{reduce, ParametricLine, SubtorusRelations};
use crate::sampling::SamplingError;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum BasisError {
    #[error("empty polynomial list")]
    EmptyList,
    #[error("ambient dimensions differ: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Sampling(#[from] SamplingError),
}

/// The characters `x^{m}` with `m` running over a basis of each saturated
/// lattice `M_i`, stacked block by block. As a real matrix it is the linear
/// map `Φ` on log coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialMap {
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
    pub blocks: Vec<usize>,
}

impl MonomialMap {
    /// `Φ z`.
    pub fn apply_log(&self, z: &[f64]) -> Vec<f64> {
        self.rows.iter().map(|r| r.iter().zip(z).map(|(&m, &zi)| m as f64 * zi).sum::<f64>() + 0.0).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IciReport {
    pub independent: bool,
    pub ranks: Vec<usize>,
    pub joint_rank: usize,
    pub map: MonomialMap,
    /// Whether `dim V = n − r`; never checked.
    pub completeness: &'static str,
}

/// Whether the Newton polytopes of `polys` are affinely independent, together
/// with the monomial map built from their saturated lattices.
pub fn is_independent_ci(polys: &[LaurentPolynomial]) -> Result<IciReport, BasisError> {
    let first = polys.first().ok_or(BasisError::EmptyList)?;
    let n = first.n();
    if let Some(f) = polys.iter().find(|f| f.n() != n) {
        return Err(BasisError::DimensionMismatch { expected: n, found: f.n() });
    }
    let polytopes = polys.iter().map(newton_polytope).collect::<Result<Vec<_>, _>>()?;
    let rep = affinely_independent(&polytopes)?;
    let map = MonomialMap {
        n,
        rows: rep.lattices.iter().flat_map(|l| l.basis().iter().cloned()).collect(),
        blocks: rep.ranks.clone(),
    };
    Ok(IciReport {
        independent: rep.independent,
        ranks: rep.ranks,
        joint_rank: rep.joint_rank,
        map,
        completeness: "unverified",
    })
}

/// The relations confining a degenerate line to a proper affine subtorus, or
/// `None` when the line is nondegenerate.
pub fn degeneracy_check(line: &ParametricLine) -> Option<SubtorusRelations> {
    let (rel, _) = reduce(line);
    (!rel.is_trivial()).then_some(rel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::line::Relation;

    fn poly(n: usize, terms: &[(i64, &[i64])]) -> LaurentPolynomial {
        LaurentPolynomial::from_integer_terms(n, terms).unwrap()
    }

    #[test]
    fn binomials_are_independent() {
        let f = poly(3, &[(1, &[1, -1, 0]), (-2, &[0, 0, 0])]);
        let g = poly(3, &[(1, &[0, 0, 1]), (-3, &[0, 0, 0])]);
        let r = is_independent_ci(&[f, g]).unwrap();
        assert!(r.independent);
        assert_eq!(r.map.rows, vec![vec![1, -1, 0], vec![0, 0, 1]]);
        assert_eq!(r.map.blocks, vec![1, 1]);
        assert_eq!(r.completeness, "unverified");
    }

    #[test]
    fn shared_span_is_dependent() {
        let f = poly(2, &[(1, &[1, 0]), (1, &[0, 1]), (1, &[0, 0])]);
        let g = poly(2, &[(1, &[1, 0]), (1, &[0, 1]), (3, &[0, 0])]);
        let r = is_independent_ci(&[f.clone(), g]).unwrap();
        assert!(!r.independent);
        assert_eq!((r.ranks.clone(), r.joint_rank), (vec![2, 2], 2));
        assert!(is_independent_ci(&[f]).unwrap().independent);
        assert_eq!(is_independent_ci(&[]), Err(BasisError::EmptyList));
    }

    #[test]
    fn degeneracy_examples() {
        let l = ParametricLine::from_integers(&[(1, 0, 0, 0), (2, 0, 0, 0), (1, 0, 1, 0)]).unwrap();
        assert!(degeneracy_check(&l).is_some());
        let l = ParametricLine::from_integers(&[(1, 0, 0, 0), (1, 0, -1, 0), (1, 0, 1, 0)]).unwrap();
        assert!(degeneracy_check(&l).is_none());
        let l: ParametricLine =
            serde_json::from_str(r#"{"coords":[{"const":["5","0"]},{"a":["1","0"],"b":["0","0"]}]}"#).unwrap();
        let rel = degeneracy_check(&l).unwrap();
        assert!(matches!(rel.relations[..], [Relation::Constant { target: 0, .. }]));
    }
}
