#![allow(dead_code)]

use amoeba_core::algebra::LaurentPolynomial;
use amoeba_core::line::LineCoordinate;
use amoeba_core::ParametricLine;
use num_complex::Complex64;

/// `t ↦ (t, −t − 1)`, the line `x + y + 1 = 0`.
pub fn planar_line() -> ParametricLine {
    ParametricLine::from_integers(&[(1, 0, 0, 0), (-1, 0, -1, 0)]).unwrap()
}

/// `t ↦ (t, t + 1, t − 1)`.
pub fn real_line() -> ParametricLine {
    ParametricLine::from_integers(&[(1, 0, 0, 0), (1, 0, -1, 0), (1, 0, 1, 0)]).unwrap()
}

pub fn zeta() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)
}

/// `t ↦ (t − 1, t − ζ, t − ζ²)`.
pub fn symmetric_line() -> ParametricLine {
    let one = Complex64::new(1.0, 0.0);
    let z = zeta();
    ParametricLine::from_complex(&[(one, one), (one, z), (one, z * z)]).unwrap()
}

pub fn poly(n: usize, terms: &[(i64, &[i64])]) -> LaurentPolynomial {
    LaurentPolynomial::from_integer_terms(n, terms).unwrap()
}

pub fn plane_line_poly() -> LaurentPolynomial {
    poly(2, &[(1, &[1, 0]), (1, &[0, 1]), (1, &[0, 0])])
}

/// Independent membership oracle for a line with affine coordinates: the
/// circles `|t − b_i| = X_i/|a_i|` of the first two coordinates with distinct
/// ends meet in at most two points, and one of them must reproduce every
/// other modulus.
pub fn circle_oracle(line: &ParametricLine, point: &[f64], tol: f64) -> bool {
    let data: Vec<(Complex64, f64)> = line
        .coords()
        .iter()
        .zip(point)
        .map(|(c, &x)| match c {
            LineCoordinate::Affine { a, b } => (b.to_c64(), x / a.norm()),
            LineCoordinate::Constant { .. } => panic!("oracle needs affine coordinates"),
        })
        .collect();
    let (b0, r0) = data[0];
    let (b1, r1) = *data.iter().find(|(b, _)| (*b - b0).norm() > 0.0).expect("two ends");
    let d = (b1 - b0).norm();
    let u = (b1 - b0) / d;
    // along u: s = (r0² − r1² + d²)/(2d); across: h² = r0² − s²
    let s = (r0 * r0 - r1 * r1 + d * d) / (2.0 * d);
    let h2 = r0 * r0 - s * s;
    let scale = r0 * r0 + s * s;
    if h2 < -tol * scale {
        return false;
    }
    let h = h2.max(0.0).sqrt();
    [h, -h].iter().any(|&hh| {
        let t = b0 + u * Complex64::new(s, hh);
        line.moduli(t).iter().zip(point).all(|(m, x)| (m - x).abs() <= tol * (m + x).max(1.0))
    })
}
