//! Lines in `(ℂ*)ⁿ` given coordinatewise as `a·(t − b)` or a nonzero constant.

mod ends;

pub use ends::{
    classify, collinear, cross_ratio, ends, is_real, limit_rays, reduce, same_point, Classification, Ends, FiniteEnd,
    ProjectivePoint, Relation, SubtorusRelations,
};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::Scalar;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum LineError {
    #[error("a line needs at least one coordinate")]
    Empty,
    #[error("no coordinate depends on the parameter; not a line")]
    NoAffineCoordinate,
    #[error("coordinate {0} has a zero coefficient")]
    ZeroCoefficient(usize),
    #[error("coordinate {0} has a non-finite value")]
    NonFinite(usize),
    #[error("cross-ratio needs four pairwise distinct points")]
    RepeatedPoints,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LineCoordinate {
    /// `t ↦ a·(t − b)`, `a ≠ 0`
    Affine { a: Scalar, b: Scalar },
    /// `t ↦ c`, `c ≠ 0`
    Constant { c: Scalar },
}

impl LineCoordinate {
    pub fn affine(a: Scalar, b: Scalar) -> Self {
        LineCoordinate::Affine { a, b }
    }

    pub fn constant(c: Scalar) -> Self {
        LineCoordinate::Constant { c }
    }

    /// `t ↦ slope·t + intercept`, normalized to `Affine { a: slope, b: −intercept/slope }`
    /// or to a constant when the slope vanishes.
    pub fn from_slope_intercept(slope: Scalar, intercept: Scalar) -> Self {
        match (-&intercept).checked_div(&slope) {
            Some(b) => LineCoordinate::Affine { a: slope, b },
            None => LineCoordinate::Constant { c: intercept },
        }
    }

    pub fn is_affine(&self) -> bool {
        matches!(self, LineCoordinate::Affine { .. })
    }

    pub fn is_exact(&self) -> bool {
        match self {
            LineCoordinate::Affine { a, b } => a.is_exact() && b.is_exact(),
            LineCoordinate::Constant { c } => c.is_exact(),
        }
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        match self {
            LineCoordinate::Affine { a, b } => a.to_c64() * (t - b.to_c64()),
            LineCoordinate::Constant { c } => c.to_c64(),
        }
    }

    pub fn derivative(&self) -> Complex64 {
        match self {
            LineCoordinate::Affine { a, .. } => a.to_c64(),
            LineCoordinate::Constant { .. } => Complex64::new(0.0, 0.0),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireCoordinate {
    Affine {
        a: Scalar,
        b: Scalar,
    },
    Constant {
        #[serde(rename = "const")]
        c: Scalar,
    },
    SlopeIntercept {
        slope: Scalar,
        intercept: Scalar,
    },
}

impl Serialize for LineCoordinate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.clone() {
            LineCoordinate::Affine { a, b } => WireCoordinate::Affine { a, b },
            LineCoordinate::Constant { c } => WireCoordinate::Constant { c },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LineCoordinate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match WireCoordinate::deserialize(d)? {
            WireCoordinate::Affine { a, b } => LineCoordinate::Affine { a, b },
            WireCoordinate::Constant { c } => LineCoordinate::Constant { c },
            WireCoordinate::SlopeIntercept { slope, intercept } => {
                LineCoordinate::from_slope_intercept(slope, intercept)
            }
        })
    }
}

/// A line in `(ℂ*)ⁿ` with at least one coordinate depending on `t`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParametricLine {
    coords: Vec<LineCoordinate>,
}

#[derive(Deserialize)]
struct WireLine {
    coords: Vec<LineCoordinate>,
}

impl<'de> Deserialize<'de> for ParametricLine {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = WireLine::deserialize(d)?;
        ParametricLine::new(w.coords).map_err(D::Error::custom)
    }
}

impl ParametricLine {
    pub fn new(coords: Vec<LineCoordinate>) -> Result<Self, LineError> {
        if coords.is_empty() {
            return Err(LineError::Empty);
        }
        for (i, c) in coords.iter().enumerate() {
            let (nonzero, finite) = match c {
                LineCoordinate::Affine { a, b } => (!a.is_zero(), a.is_finite() && b.is_finite()),
                LineCoordinate::Constant { c } => (!c.is_zero(), c.is_finite()),
            };
            if !finite {
                return Err(LineError::NonFinite(i));
            }
            if !nonzero {
                return Err(LineError::ZeroCoefficient(i));
            }
        }
        if !coords.iter().any(LineCoordinate::is_affine) {
            return Err(LineError::NoAffineCoordinate);
        }
        Ok(Self { coords })
    }

    /// Line with exact integer data: `(a_re, a_im, b_re, b_im)` per coordinate.
    pub fn from_integers(coords: &[(i64, i64, i64, i64)]) -> Result<Self, LineError> {
        Self::new(
            coords
                .iter()
                .map(|&(ar, ai, br, bi)| LineCoordinate::affine(Scalar::exact(ar, ai), Scalar::exact(br, bi)))
                .collect(),
        )
    }

    /// Line with float data: `(a, b)` per coordinate.
    pub fn from_complex(coords: &[(Complex64, Complex64)]) -> Result<Self, LineError> {
        Self::new(coords.iter().map(|&(a, b)| LineCoordinate::affine(a.into(), b.into())).collect())
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[LineCoordinate] {
        &self.coords
    }

    pub fn is_exact(&self) -> bool {
        self.coords.iter().all(LineCoordinate::is_exact)
    }

    pub fn eval(&self, t: Complex64) -> Vec<Complex64> {
        self.coords.iter().map(|c| c.eval(t)).collect()
    }

    /// The point of the algebraic amoeba `|ℓ(t)|`.
    pub fn moduli(&self, t: Complex64) -> Vec<f64> {
        self.coords.iter().map(|c| c.eval(t).norm()).collect()
    }

    /// The `b` values of affine coordinates, in coordinate order.
    pub fn finite_end_parameters(&self) -> Vec<Complex64> {
        self.coords
            .iter()
            .filter_map(|c| match c {
                LineCoordinate::Affine { b, .. } => Some(b.to_c64()),
                LineCoordinate::Constant { .. } => None,
            })
            .collect()
    }

    /// Reparametrizes by `t = u·s + v`, `u ≠ 0`.
    pub fn reparametrized(&self, u: &Scalar, v: &Scalar) -> Option<Self> {
        let coords = self
            .coords
            .iter()
            .map(|c| match c {
                LineCoordinate::Affine { a, b } => {
                    Some(LineCoordinate::Affine { a: a * u, b: (b - v).checked_div(u)? })
                }
                other => Some(other.clone()),
            })
            .collect::<Option<Vec<_>>>()?;
        Self::new(coords).ok()
    }

    /// Multiplies coordinate `i` by `s`.
    pub fn scaled_coordinate(&self, i: usize, s: &Scalar) -> Self {
        let mut coords = self.coords.clone();
        coords[i] = match &coords[i] {
            LineCoordinate::Affine { a, b } => LineCoordinate::Affine { a: a * s, b: b.clone() },
            LineCoordinate::Constant { c } => LineCoordinate::Constant { c: c * s },
        };
        Self::new(coords).expect("scaling by a unit keeps the line valid")
    }

    /// Keeps the listed coordinates, in the given order.
    pub fn project(&self, indices: &[usize]) -> Result<Self, LineError> {
        Self::new(indices.iter().map(|&i| self.coords[i].clone()).collect())
    }

    /// Concatenation `t ↦ (self(t), other(t))` sharing one parameter.
    pub fn concat(&self, other: &Self) -> Self {
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        Self { coords }
    }
}
