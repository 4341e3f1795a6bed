//! Saturated integer lattices in canonical Hermite form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{AlgebraError, NewtonPolytope};

/// A saturated sublattice of ℤⁿ. The basis is the row-style Hermite normal
/// form: echelon, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`. Two lattices are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerLattice {
    n: usize,
    basis: Vec<Vec<i64>>,
}

impl IntegerLattice {
    pub fn zero(n: usize) -> Self {
        Self { n, basis: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Integer coordinates of `v` in the canonical basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        let mut rest: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        let mut coords = Vec::with_capacity(self.rank());
        for row in &self.basis {
            let pivot = row.iter().position(|&x| x != 0)?;
            let p = row[pivot] as i128;
            if rest[pivot] % p != 0 {
                return None;
            }
            let c = rest[pivot] / p;
            for (r, &b) in rest.iter_mut().zip(row) {
                *r -= c * b as i128;
            }
            coords.push(i64::try_from(c).ok()?);
        }
        rest.iter().all(|&r| r == 0).then_some(coords)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        v.len() == self.n && self.coordinates(v).is_some()
    }

    /// Saturation of the sum of lattices.
    pub fn join(lattices: &[&IntegerLattice], n: usize) -> Result<IntegerLattice, AlgebraError> {
        let vectors: Vec<Vec<i64>> = lattices.iter().flat_map(|l| l.basis.iter().cloned()).collect();
        saturated_span(&vectors, n)
    }
}

/// `(ℚ-span of vectors) ∩ ℤⁿ` in canonical form.
///
/// Column operations reduce the input matrix `A` to `[B | 0]` with `B` of full
/// column rank `r`; the same unimodular transform `C` then gives
/// `A = B · (C⁻¹)[..r]`, and the first `r` rows of `C⁻¹` extend to a basis of
/// ℤⁿ, so they span the saturation.
pub fn saturated_span(vectors: &[Vec<i64>], n: usize) -> Result<IntegerLattice, AlgebraError> {
    if let Some(v) = vectors.iter().find(|v| v.len() != n) {
        return Err(AlgebraError::DimensionMismatch { expected: n, found: v.len() });
    }
    let mut a: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut cinv: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut rank = 0;
    for row in 0..a.len() {
        if rank == n {
            break;
        }
        // Euclid across columns rank..n of this row until one nonzero remains
        loop {
            let nonzero: Vec<usize> = (rank..n).filter(|&j| !a[row][j].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&j) = nonzero.first() {
                    swap_columns(&mut a, &mut cinv, rank, j);
                    rank += 1;
                }
                break;
            }
            let pivot = *nonzero.iter().min_by(|&&x, &&y| a[row][x].abs().cmp(&a[row][y].abs())).unwrap();
            for &j in &nonzero {
                if j != pivot {
                    let q = a[row][j].div_floor(&a[row][pivot]);
                    add_column_multiple(&mut a, &mut cinv, j, pivot, &q);
                }
            }
        }
    }
    hermite_form(cinv.into_iter().take(rank).collect(), n)
}

/// `col_target -= q · col_source`, with the inverse row operation on `cinv`.
fn add_column_multiple(a: &mut [Vec<BigInt>], cinv: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let delta = q * &row[source];
        row[target] -= delta;
    }
    let target_row = cinv[target].clone();
    for (s, t) in cinv[source].iter_mut().zip(&target_row) {
        *s += q * t;
    }
}

fn swap_columns(a: &mut [Vec<BigInt>], cinv: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    cinv.swap(i, j);
}

/// Row Hermite normal form of a full-row-rank integer matrix.
fn hermite_form(mut rows: Vec<Vec<BigInt>>, n: usize) -> Result<IntegerLattice, AlgebraError> {
    let r = rows.len();
    let mut k = 0;
    for col in 0..n {
        if k == r {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (k..r).filter(|&i| !rows[i][col].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let pivot = *nonzero.iter().min_by(|&&x, &&y| rows[x][col].abs().cmp(&rows[y][col].abs())).unwrap();
            if nonzero.len() == 1 {
                rows.swap(k, pivot);
                if rows[k][col].is_negative() {
                    for v in rows[k].iter_mut() {
                        *v = -v.clone();
                    }
                }
                let p = rows[k][col].clone();
                for i in 0..k {
                    let q = rows[i][col].div_floor(&p);
                    if !q.is_zero() {
                        let pivot_row = rows[k].clone();
                        for (v, pv) in rows[i].iter_mut().zip(&pivot_row) {
                            *v -= &q * pv;
                        }
                    }
                }
                k += 1;
                break;
            }
            let pivot_row = rows[pivot].clone();
            for &i in &nonzero {
                if i != pivot {
                    let q = rows[i][col].div_floor(&pivot_row[col]);
                    for (v, pv) in rows[i].iter_mut().zip(&pivot_row) {
                        *v -= &q * pv;
                    }
                }
            }
        }
    }
    let basis = rows
        .into_iter()
        .map(|row| row.into_iter().map(|x| x.to_i64().ok_or(AlgebraError::Overflow)).collect())
        .collect::<Result<Vec<Vec<i64>>, _>>()?;
    Ok(IntegerLattice { n, basis })
}

/// Outcome of the affine-independence test, with the ranks that decided it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub independent: bool,
    pub ranks: Vec<usize>,
    pub joint_rank: usize,
    pub lattices: Vec<IntegerLattice>,
}

/// Lattice spanned by a polytope after moving its lexicographically smallest
/// vertex to the origin.
pub fn polytope_lattice(p: &NewtonPolytope) -> Result<IntegerLattice, AlgebraError> {
    let base = p.lex_min_vertex().to_vec();
    let diffs: Vec<Vec<i64>> = p.vertices().iter().map(|v| v.iter().zip(&base).map(|(a, b)| a - b).collect()).collect();
    saturated_span(&diffs, p.n())
}

/// Polytopes are affinely independent when the saturated spans of their
/// translates form a direct sum: `Σ rank(L_i) = rank(Σ L_i)`.
pub fn affinely_independent(polytopes: &[NewtonPolytope]) -> Result<IndependenceReport, AlgebraError> {
    let first = polytopes.first().ok_or(AlgebraError::EmptyPolytopeList)?;
    let n = first.n();
    if let Some(p) = polytopes.iter().find(|p| p.n() != n) {
        return Err(AlgebraError::DimensionMismatch { expected: n, found: p.n() });
    }
    let lattices = polytopes.iter().map(polytope_lattice).collect::<Result<Vec<_>, _>>()?;
    let ranks: Vec<usize> = lattices.iter().map(IntegerLattice::rank).collect();
    let refs: Vec<&IntegerLattice> = lattices.iter().collect();
    let joint_rank = IntegerLattice::join(&refs, n)?.rank();
    Ok(IndependenceReport { independent: ranks.iter().sum::<usize>() == joint_rank, ranks, joint_rank, lattices })
}
