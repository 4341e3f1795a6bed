//! Implicit equations in squared moduli for the projection of a line to a
//! coordinate triple.
//!
//! Writing `t = p + q·i`, `u = p² + q²` and `S_m = |x_m|²`, every coordinate
//! gives `S_m/|a_m|² − |b_m|² = u − 2·Re(b_m)·p − 2·Im(b_m)·q`, an equation
//! linear in `(u, p, q)`. Three coordinates give a 3×3 system. When the three
//! `b`'s are collinear the system is singular and its solvability condition is
//! a quadric; otherwise `(u, p, q)` is solved for and `u = p² + q²` is a quartic.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, parse_rational, rational_to_f64, Rational, Scalar};
use crate::line::{collinear, LineCoordinate, ParametricLine};

use super::SemialgError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SurfaceKind {
    Quadratic,
    Quartic,
}

/// Exponents `(e_i, e_j, e_k)` of `S_i, S_j, S_k` for the quadric basis.
pub const QUADRATIC_BASIS: [[u8; 3]; 4] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]];

/// Degree-reverse-lexicographic basis of polynomials of degree ≤ 2 in `S_i, S_j, S_k`.
pub const QUARTIC_BASIS: [[u8; 3]; 10] =
    [[2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1], [0, 0, 2], [1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]];

/// A polynomial in the squared moduli of three coordinates, vanishing on the
/// algebraic amoeba of the line. Coefficients are normalized so the largest
/// has absolute value 1 and the first nonzero one is positive.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImplicitModulusSurface {
    pub coords: [usize; 3],
    pub kind: SurfaceKind,
    pub coefficients: Vec<f64>,
    /// Present when the line data were exact.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "exact_coefficients")]
    pub exact: Option<Vec<Rational>>,
}

impl ImplicitModulusSurface {
    pub fn basis(&self) -> &'static [[u8; 3]] {
        match self.kind {
            SurfaceKind::Quadratic => &QUADRATIC_BASIS,
            SurfaceKind::Quartic => &QUARTIC_BASIS,
        }
    }

    /// `(value, Σ|coefficient·monomial|)` at a point of moduli in the ambient space.
    pub fn evaluate(&self, moduli: &[f64]) -> (f64, f64) {
        let s = self.coords.map(|c| moduli[c] * moduli[c]);
        self.basis().iter().zip(&self.coefficients).fold((0.0, 0.0), |(v, sc), (e, &c)| {
            let m = s[0].powi(e[0] as i32) * s[1].powi(e[1] as i32) * s[2].powi(e[2] as i32);
            (v + c * m, sc + (c * m).abs())
        })
    }

    /// Residual relative to the scale of the polynomial at the point.
    pub fn relative_residual(&self, moduli: &[f64]) -> f64 {
        let (v, scale) = self.evaluate(moduli);
        if scale == 0.0 {
            0.0
        } else {
            v.abs() / scale
        }
    }

    /// Re-indexes the surface onto other ambient coordinates.
    pub(crate) fn with_coords(mut self, coords: [usize; 3]) -> Self {
        self.coords = coords;
        self
    }
}

impl fmt::Display for ImplicitModulusSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.basis().iter().zip(&self.coefficients) {
            if *c == 0.0 {
                continue;
            }
            let sign = if *c < 0.0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            write!(f, "{}{}{}", if first { "" } else { " " }, sign, if first { "" } else { " " })?;
            write!(f, "{}", c.abs())?;
            for (k, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "·X{}²", self.coords[k] + 1)?,
                    _ => write!(f, "·X{}⁴", self.coords[k] + 1)?,
                }
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " = 0")
    }
}

mod exact_coefficients {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.collect_seq(v.iter().map(format_rational)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        let raw: Option<Vec<String>> = Option::deserialize(d)?;
        raw.map(|v| {
            v.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect::<Result<Vec<_>, _>>()
        })
        .transpose()
    }
}

/// Field operations needed by the elimination; implemented by `f64` and
/// exact rationals.
trait Field: Clone + Zero + Signed + PartialOrd + for<'a> Add<&'a Self, Output = Self> {}

impl Field for f64 {}
impl Field for Rational {}

/// Per-coordinate data of the triple: `1/|a|²`, `Re b`, `Im b`.
struct TripleData<T> {
    w: [T; 3],
    re: [T; 3],
    im: [T; 3],
}

impl<T: Field> TripleData<T>
where
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    fn norm_sqr_b(&self, m: usize) -> T {
        &(&self.re[m] * &self.re[m]) + &(&self.im[m] * &self.im[m])
    }

    /// The 3×3 solvability determinant with rows `(r_m, 1, s_m)` where `s_m`
    /// is the signed position of `b_m` along the line through `b_0, b_1`.
    fn quadric(&self) -> Vec<T> {
        let dre = &self.re[1] - &self.re[0];
        let dim = &self.im[1] - &self.im[0];
        let s: Vec<T> =
            (0..3).map(|m| &(&(&self.re[m] - &self.re[0]) * &dre) + &(&(&self.im[m] - &self.im[0]) * &dim)).collect();
        let k = [&s[2] - &s[1], &s[0] - &s[2], &s[1] - &s[0]];
        let mut out = vec![T::zero(); 4];
        for m in 0..3 {
            out[m] = &k[m] * &self.w[m];
            out[3] = &out[3] - &(&k[m] * &self.norm_sqr_b(m));
        }
        out
    }

    /// `D·L₀ − L₁² − L₂²` where `D·(u, p, q) = (L₀, L₁, L₂)` via the adjugate.
    fn quartic(&self) -> Vec<T> {
        let two = T::one() + &T::one();
        let mtx: Vec<[T; 3]> = (0..3).map(|m| [T::one(), -(&two * &self.re[m]), -(&two * &self.im[m])]).collect();
        let cof = |r: usize, c: usize| -> T {
            let rows: Vec<usize> = (0..3).filter(|&x| x != r).collect();
            let cols: Vec<usize> = (0..3).filter(|&x| x != c).collect();
            let minor =
                &(&mtx[rows[0]][cols[0]] * &mtx[rows[1]][cols[1]]) - &(&mtx[rows[0]][cols[1]] * &mtx[rows[1]][cols[0]]);
            if (r + c).is_multiple_of(2) {
                minor
            } else {
                -minor
            }
        };
        // adj[k][m] = cofactor(m, k)
        let adj: Vec<Vec<T>> = (0..3).map(|k| (0..3).map(|m| cof(m, k)).collect()).collect();
        let det = (0..3).fold(T::zero(), |acc, c| &acc + &(&mtx[0][c] * &cof(0, c)));
        // linear forms in S: [coef S_0, coef S_1, coef S_2, constant]
        let forms: Vec<[T; 4]> = adj
            .iter()
            .map(|row| {
                let mut l: [T; 4] = std::array::from_fn(|_| T::zero());
                for m in 0..3 {
                    l[m] = &row[m] * &self.w[m];
                    l[3] = &l[3] - &(&row[m] * &self.norm_sqr_b(m));
                }
                l
            })
            .collect();
        let mut out = vec![T::zero(); 10];
        for m in 0..4 {
            let idx = if m < 3 { 6 + m } else { 9 };
            out[idx] = &out[idx] + &(&det * &forms[0][m]);
        }
        for l in &forms[1..] {
            for a in 0..4 {
                for b in a..4 {
                    let mult = if a == b { T::one() } else { two.clone() };
                    let c = &mult * &(&l[a] * &l[b]);
                    let idx = product_index(a, b);
                    out[idx] = &out[idx] - &c;
                }
            }
        }
        out
    }
}

/// Position in [`QUARTIC_BASIS`] of the product of two entries of a linear
/// form `[S_0, S_1, S_2, 1]`.
fn product_index(a: usize, b: usize) -> usize {
    let mut e = [0u8; 3];
    for x in [a, b] {
        if x < 3 {
            e[x] += 1;
        }
    }
    QUARTIC_BASIS.iter().position(|m| *m == e).expect("degree ≤ 2")
}

fn normalize<T: Field>(mut c: Vec<T>) -> Vec<T>
where
    for<'a> &'a T:
        Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T> + std::ops::Div<&'a T, Output = T>,
{
    let max = c.iter().map(Signed::abs).fold(T::zero(), |m, x| if x > m { x } else { m });
    if max.is_zero() {
        return c;
    }
    let negative = c.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative);
    for x in c.iter_mut() {
        *x = &*x / &max;
        if negative {
            *x = -x.clone();
        }
    }
    c
}

/// Surface through the projection of `line` to coordinates `(i, j, k)`.
/// Requires three affine coordinates with pairwise distinct `b`.
pub fn triple_surface(
    line: &ParametricLine,
    i: usize,
    j: usize,
    k: usize,
) -> Result<ImplicitModulusSurface, SemialgError> {
    let idx = [i, j, k];
    let mut a = Vec::with_capacity(3);
    let mut b = Vec::with_capacity(3);
    for &m in &idx {
        match line.coords().get(m) {
            Some(LineCoordinate::Affine { a: am, b: bm }) => {
                a.push(am.clone());
                b.push(bm.clone());
            }
            Some(LineCoordinate::Constant { .. }) => return Err(SemialgError::NotAffine(m)),
            None => return Err(SemialgError::IndexOutOfRange(m)),
        }
    }
    if crate::line::same_point(&b[0], &b[1])
        || crate::line::same_point(&b[0], &b[2])
        || crate::line::same_point(&b[1], &b[2])
    {
        return Err(SemialgError::DegenerateTriple);
    }
    let kind = if collinear(&b[0], &b[1], &b[2]).map_err(|_| SemialgError::DegenerateTriple)? {
        SurfaceKind::Quadratic
    } else {
        SurfaceKind::Quartic
    };
    let all_exact = a.iter().chain(&b).all(Scalar::is_exact);
    let (coefficients, exact) = if all_exact {
        let ex = |s: &Scalar| s.as_exact().expect("checked exact").clone();
        let data = TripleData::<Rational> {
            w: std::array::from_fn(|m| {
                let n = ex(&a[m]).norm_sqr();
                Rational::from_integer(1.into()) / n
            }),
            re: std::array::from_fn(|m| ex(&b[m]).re),
            im: std::array::from_fn(|m| ex(&b[m]).im),
        };
        let raw = match kind {
            SurfaceKind::Quadratic => data.quadric(),
            SurfaceKind::Quartic => data.quartic(),
        };
        let exact = normalize(raw);
        (exact.iter().map(rational_to_f64).collect(), Some(exact))
    } else {
        let data = TripleData::<f64> {
            w: std::array::from_fn(|m| 1.0 / a[m].to_c64().norm_sqr()),
            re: std::array::from_fn(|m| b[m].to_c64().re),
            im: std::array::from_fn(|m| b[m].to_c64().im),
        };
        let raw = match kind {
            SurfaceKind::Quadratic => data.quadric(),
            SurfaceKind::Quartic => data.quartic(),
        };
        (normalize(raw), None)
    };
    Ok(ImplicitModulusSurface { coords: idx, kind, coefficients, exact })
}
