//! Simultaneous polynomial root finding (Aberth–Ehrlich) with residual
//! certification.

use num_complex::Complex64;

/// Certified roots must satisfy `|p(y)| ≤ ROOT_CERT_TOL · Σ|c_k||y|^k`.
pub const ROOT_CERT_TOL: f64 = 1e-10;

const MAX_ITER: usize = 400;

/// Result of a certified solve: roots passing the residual test, and how
/// many were discarded.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CertifiedRoots {
    pub roots: Vec<Complex64>,
    pub discarded: usize,
    /// Multiplicity of the root `y = 0`, which is never returned.
    pub zero_roots: usize,
}

fn horner(c: &[Complex64], y: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &ck in c.iter().rev() {
        dp = dp * y + p;
        p = p * y + ck;
    }
    (p, dp)
}

/// `(|p(y)|, Σ|c_k||y|^k)`.
pub fn residual(c: &[Complex64], y: Complex64) -> (f64, f64) {
    let r = y.norm();
    let scale = c.iter().rev().fold(0.0, |acc, ck| acc * r + ck.norm());
    (horner(c, y).0.norm(), scale)
}

/// All roots of `Σ c_k y^k` (ascending coefficients, `c.last() ≠ 0`), uncertified.
pub fn aberth(c: &[Complex64]) -> Vec<Complex64> {
    let deg = c.len().saturating_sub(1);
    match deg {
        0 => return Vec::new(),
        1 => return vec![-c[0] / c[1]],
        _ => {}
    }
    let lead = c[deg].norm();
    // start on a circle whose radius is the geometric mean of the root moduli
    let radius = (c[0].norm() / lead).powf(1.0 / deg as f64).max(f64::MIN_POSITIVE.sqrt());
    let mut z: Vec<Complex64> =
        (0..deg).map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / deg as f64 + 0.4)).collect();
    for _ in 0..MAX_ITER {
        let mut moved: f64 = 0.0;
        for k in 0..deg {
            let (p, dp) = horner(c, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..deg).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Roots of `Σ c_k y^k` after trimming zero leading and trailing coefficients.
/// Exact zero roots are split off; the rest pass the residual test or are discarded.
pub fn certified_roots(c: &[Complex64]) -> CertifiedRoots {
    let Some(hi) = c.iter().rposition(|ck| *ck != Complex64::new(0.0, 0.0)) else {
        return CertifiedRoots::default();
    };
    let lo = c.iter().position(|ck| *ck != Complex64::new(0.0, 0.0)).unwrap_or(0);
    let trimmed = &c[lo..=hi];
    let mut out = CertifiedRoots { zero_roots: lo, ..Default::default() };
    for y in aberth(trimmed) {
        let (res, scale) = residual(trimmed, y);
        if y.is_finite() && res <= ROOT_CERT_TOL * scale {
            out.roots.push(y);
        } else {
            out.discarded += 1;
        }
    }
    out
}
