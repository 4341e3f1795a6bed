use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{LineCoordinate, LineError, ParametricLine};
use crate::algebra::Scalar;

/// Relative distance below which two float end parameters are the same end.
pub const END_MERGE_TOL: f64 = 1e-12;
/// `|Im(cr)| ≤ REALITY_TOL·(1 + |cr|)` counts a float cross-ratio as real.
pub const REALITY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum ProjectivePoint {
    Finite(Scalar),
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteEnd {
    pub b: Scalar,
    /// Affine coordinates vanishing at `t = b`, ascending.
    pub coords: Vec<usize>,
}

/// `ℓ̄ ∖ ℓ`: the finite ends plus the end at `t = ∞`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ends {
    pub finite: Vec<FiniteEnd>,
    pub infinity_coords: Vec<usize>,
}

impl Ends {
    /// `|E|`, counting the end at infinity.
    pub fn count(&self) -> usize {
        self.finite.len() + 1
    }
}

/// Exact equality for exact scalars, relative tolerance otherwise.
pub fn same_point(x: &Scalar, y: &Scalar) -> bool {
    match (x, y) {
        (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
        _ => {
            let (a, b) = (x.to_c64(), y.to_c64());
            (a - b).norm() <= END_MERGE_TOL * 1f64.max(a.norm()).max(b.norm())
        }
    }
}

pub fn is_real(z: &Scalar) -> bool {
    match z {
        Scalar::Exact(g) => num_traits::Zero::is_zero(&g.im),
        Scalar::Float(c) => c.im.abs() <= REALITY_TOL * (1.0 + c.norm()),
    }
}

/// Groups affine coordinates by their `b`. Each group is represented by its
/// smallest index and carries that coordinate's `b`.
pub fn ends(line: &ParametricLine) -> Ends {
    let mut finite: Vec<FiniteEnd> = Vec::new();
    let mut infinity_coords = Vec::new();
    for (i, c) in line.coords().iter().enumerate() {
        if let LineCoordinate::Affine { b, .. } = c {
            infinity_coords.push(i);
            match finite.iter_mut().find(|e| same_point(&e.b, b)) {
                Some(e) => e.coords.push(i),
                None => finite.push(FiniteEnd { b: b.clone(), coords: vec![i] }),
            }
        }
    }
    Ends { finite, infinity_coords }
}

/// `((z₁−z₃)(z₂−z₄)) / ((z₁−z₄)(z₂−z₃))`. A point at infinity occurs in exactly
/// one numerator and one denominator factor, and that pair is replaced by 1.
pub fn cross_ratio(
    z1: &ProjectivePoint,
    z2: &ProjectivePoint,
    z3: &ProjectivePoint,
    z4: &ProjectivePoint,
) -> Result<Scalar, LineError> {
    let pts = [z1, z2, z3, z4];
    for i in 0..4 {
        for j in i + 1..4 {
            let equal = match (pts[i], pts[j]) {
                (ProjectivePoint::Infinity, ProjectivePoint::Infinity) => true,
                (ProjectivePoint::Finite(a), ProjectivePoint::Finite(b)) => same_point(a, b),
                _ => false,
            };
            if equal {
                return Err(LineError::RepeatedPoints);
            }
        }
    }
    let one = Scalar::exact(1, 0);
    let diff = |a: &ProjectivePoint, b: &ProjectivePoint| match (a, b) {
        (ProjectivePoint::Finite(a), ProjectivePoint::Finite(b)) => a - b,
        _ => one.clone(),
    };
    let num = &diff(z1, z3) * &diff(z2, z4);
    let den = &diff(z1, z4) * &diff(z2, z3);
    num.checked_div(&den).ok_or(LineError::RepeatedPoints)
}

/// Whether three finite points lie on a common line of ℂ, i.e. whether they
/// are concyclic with ∞.
pub fn collinear(b0: &Scalar, b1: &Scalar, b2: &Scalar) -> Result<bool, LineError> {
    let cr = cross_ratio(
        &ProjectivePoint::Finite(b0.clone()),
        &ProjectivePoint::Finite(b1.clone()),
        &ProjectivePoint::Infinity,
        &ProjectivePoint::Finite(b2.clone()),
    )?;
    Ok(is_real(&cr))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Real,
    Complex,
    /// `|E| ≤ 3`: any three points of ℙ¹ are concyclic.
    FewEnds,
}

pub fn classify(line: &ParametricLine) -> Classification {
    classify_ends(&ends(line))
}

pub(crate) fn classify_ends(e: &Ends) -> Classification {
    if e.count() <= 3 {
        return Classification::FewEnds;
    }
    let b0 = &e.finite[0].b;
    let b1 = &e.finite[1].b;
    let all_collinear = e.finite[2..].iter().all(|end| collinear(b0, b1, &end.b).expect("ends are distinct"));
    if all_collinear {
        Classification::Real
    } else {
        Classification::Complex
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Relation {
    /// `x_target = factor · x_source`
    Proportional { target: usize, source: usize, factor: Scalar },
    /// `x_target = value`
    Constant { target: usize, value: Scalar },
}

impl Relation {
    pub fn target(&self) -> usize {
        match self {
            Relation::Proportional { target, .. } | Relation::Constant { target, .. } => *target,
        }
    }

    /// Residual of the relation at a point of `(ℂ*)ⁿ`.
    pub fn residual(&self, x: &[Complex64]) -> Complex64 {
        match self {
            Relation::Proportional { target, source, factor } => x[*target] - factor.to_c64() * x[*source],
            Relation::Constant { target, value } => x[*target] - value.to_c64(),
        }
    }

    /// The relation on moduli: returns `(expected |x_target|)` given the moduli.
    pub fn expected_modulus(&self, moduli: &[f64]) -> f64 {
        match self {
            Relation::Proportional { source, factor, .. } => factor.norm() * moduli[*source],
            Relation::Constant { value, .. } => value.norm(),
        }
    }
}

/// Binomial equations cutting out the affine subtorus containing a line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubtorusRelations {
    pub n: usize,
    pub relations: Vec<Relation>,
    /// Representative coordinate of each finite end, in end order.
    pub reduced_coords: Vec<usize>,
}

impl SubtorusRelations {
    pub fn is_trivial(&self) -> bool {
        self.relations.is_empty()
    }
}

/// Splits a line into the binomial relations of its affine subtorus and the
/// line it traces in the representative coordinates, one per finite end.
pub fn reduce(line: &ParametricLine) -> (SubtorusRelations, ParametricLine) {
    let e = ends(line);
    let coords = line.coords();
    let mut relations = Vec::new();
    for (i, c) in coords.iter().enumerate() {
        if let LineCoordinate::Constant { c } = c {
            relations.push(Relation::Constant { target: i, value: c.clone() });
        }
    }
    for end in &e.finite {
        let rep = end.coords[0];
        let LineCoordinate::Affine { a: a_rep, .. } = &coords[rep] else { unreachable!() };
        for &j in &end.coords[1..] {
            let LineCoordinate::Affine { a, .. } = &coords[j] else { unreachable!() };
            let factor = a.checked_div(a_rep).expect("a ≠ 0 by construction");
            relations.push(Relation::Proportional { target: j, source: rep, factor });
        }
    }
    relations.sort_by_key(Relation::target);
    let reduced_coords: Vec<usize> = e.finite.iter().map(|end| end.coords[0]).collect();
    let reduced = line.project(&reduced_coords).expect("representatives are affine");
    (SubtorusRelations { n: line.n(), relations, reduced_coords }, reduced)
}

/// One integer ray per end: `−Σ_{i∈S} e_i` for a finite end on coordinates `S`,
/// and `Σ e_i` over all affine coordinates for the end at infinity.
pub fn limit_rays(line: &ParametricLine) -> Vec<Vec<i64>> {
    let e = ends(line);
    let n = line.n();
    let mut rays: Vec<Vec<i64>> = e
        .finite
        .iter()
        .map(|end| {
            let mut r = vec![0; n];
            for &i in &end.coords {
                r[i] = -1;
            }
            r
        })
        .collect();
    let mut inf = vec![0; n];
    for &i in &e.infinity_coords {
        inf[i] = 1;
    }
    rays.push(inf);
    rays
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta() -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)
    }

    fn real_line() -> ParametricLine {
        // t ↦ (t, t+1, t−1)
        ParametricLine::from_integers(&[(1, 0, 0, 0), (1, 0, -1, 0), (1, 0, 1, 0)]).unwrap()
    }

    fn symmetric_line() -> ParametricLine {
        let one = Complex64::new(1.0, 0.0);
        ParametricLine::from_complex(&[(one, one), (one, zeta()), (one, zeta() * zeta())]).unwrap()
    }

    fn fin(z: Complex64) -> ProjectivePoint {
        ProjectivePoint::Finite(z.into())
    }

    #[test]
    fn ends_of_example_lines() {
        let e = ends(&real_line());
        assert_eq!(e.count(), 4);
        let bs: Vec<Scalar> = e.finite.iter().map(|f| f.b.clone()).collect();
        assert_eq!(bs, vec![Scalar::exact(0, 0), Scalar::exact(-1, 0), Scalar::exact(1, 0)]);
        assert_eq!(e.infinity_coords, vec![0, 1, 2]);

        let shared = ParametricLine::from_integers(&[(1, 0, 0, 0), (2, 0, 0, 0)]).unwrap();
        let e = ends(&shared);
        assert_eq!(e.count(), 2);
        assert_eq!(e.finite[0].coords, vec![0, 1]);

        assert_eq!(ends(&symmetric_line()).count(), 4);
    }

    #[test]
    fn float_ends_merge_within_tolerance() {
        let one = Complex64::new(1.0, 0.0);
        let b = Complex64::new(0.3, 0.0);
        let line = ParametricLine::from_complex(&[(one, b), (one, b + 1e-14), (one, b + 1e-6)]).unwrap();
        let e = ends(&line);
        assert_eq!(e.count(), 3);
        assert_eq!(e.finite[0].coords, vec![0, 1]);
    }

    #[test]
    fn cross_ratio_conventions() {
        // (0, 1, ∞, λ) = (λ − 1)/λ, real iff λ real
        let cr = |l: Complex64| {
            cross_ratio(&fin(0.0.into()), &fin(1.0.into()), &ProjectivePoint::Infinity, &fin(l)).unwrap().to_c64()
        };
        assert!((cr(Complex64::new(3.0, 0.0)) - Complex64::new(2.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!(cr(Complex64::new(3.0, 1.0)).im.abs() > 1e-3);

        // (0, 2, ∞, 1) = (2 − 1)/(0 − 1) = −1
        let exact = cross_ratio(
            &ProjectivePoint::Finite(Scalar::exact(0, 0)),
            &ProjectivePoint::Finite(Scalar::exact(2, 0)),
            &ProjectivePoint::Infinity,
            &ProjectivePoint::Finite(Scalar::exact(1, 0)),
        )
        .unwrap();
        assert_eq!(exact, Scalar::exact(-1, 0));

        let z = zeta();
        let sym = cross_ratio(&fin(1.0.into()), &fin(z), &fin(z * z), &ProjectivePoint::Infinity).unwrap();
        assert!(!is_real(&sym));
        assert!((sym.to_c64() + z).norm() < 1e-12);

        assert_eq!(
            cross_ratio(&fin(1.0.into()), &fin(1.0.into()), &fin(z), &ProjectivePoint::Infinity),
            Err(LineError::RepeatedPoints)
        );
    }

    #[test]
    fn classification_of_examples() {
        assert_eq!(classify(&real_line()), Classification::Real);
        assert_eq!(classify(&symmetric_line()), Classification::Complex);
        let few = ParametricLine::from_integers(&[(1, 0, 0, 0), (1, 0, 1, 0)]).unwrap();
        assert_eq!(classify(&few), Classification::FewEnds);
        // collinear but not on the real axis
        let slanted =
            ParametricLine::from_integers(&[(1, 0, 0, 0), (1, 0, 1, 1), (1, 0, 2, 2), (3, 1, -1, -1)]).unwrap();
        assert_eq!(classify(&slanted), Classification::Real);
    }

    #[test]
    fn reduce_examples() {
        let line = ParametricLine::from_integers(&[(1, 0, 0, 0), (2, 0, 0, 0), (1, 0, 1, 0)]).unwrap();
        let (rel, reduced) = reduce(&line);
        assert_eq!(rel.relations, vec![Relation::Proportional { target: 1, source: 0, factor: Scalar::exact(2, 0) }]);
        assert_eq!(rel.reduced_coords, vec![0, 2]);
        assert_eq!(reduced, ParametricLine::from_integers(&[(1, 0, 0, 0), (1, 0, 1, 0)]).unwrap());

        let with_const = ParametricLine::new(vec![
            LineCoordinate::affine(Scalar::exact(1, 0), Scalar::exact(0, 0)),
            LineCoordinate::constant(Scalar::exact(5, 0)),
        ])
        .unwrap();
        let (rel, reduced) = reduce(&with_const);
        assert_eq!(rel.relations, vec![Relation::Constant { target: 1, value: Scalar::exact(5, 0) }]);
        assert_eq!(reduced.n(), 1);

        let (rel, reduced) = reduce(&real_line());
        assert!(rel.is_trivial());
        assert_eq!(reduced, real_line());
    }

    #[test]
    fn limit_ray_examples() {
        let l = ParametricLine::from_integers(&[(1, 0, 0, 0), (1, 0, 1, 0)]).unwrap();
        assert_eq!(limit_rays(&l), vec![vec![-1, 0], vec![0, -1], vec![1, 1]]);
        let l = ParametricLine::from_integers(&[(1, 0, 0, 0), (2, 0, 0, 0), (1, 0, 1, 0)]).unwrap();
        assert_eq!(limit_rays(&l), vec![vec![-1, -1, 0], vec![0, 0, -1], vec![1, 1, 1]]);
        let l = ParametricLine::new(vec![
            LineCoordinate::affine(Scalar::exact(1, 0), Scalar::exact(0, 0)),
            LineCoordinate::constant(Scalar::exact(5, 0)),
        ])
        .unwrap();
        assert_eq!(limit_rays(&l), vec![vec![-1, 0], vec![1, 0]]);
    }
}
