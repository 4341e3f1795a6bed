use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{AlgebraError, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    #[serde(rename = "c")]
    pub coeff: Scalar,
    #[serde(rename = "e")]
    pub exponent: Vec<i64>,
}

/// A Laurent polynomial in `n` variables. Terms have pairwise distinct
/// exponents and nonzero coefficients; the zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LaurentPolynomial {
    n: usize,
    terms: Vec<Term>,
}

#[derive(Deserialize)]
struct WirePolynomial {
    n: usize,
    terms: Vec<Term>,
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = WirePolynomial::deserialize(d)?;
        LaurentPolynomial::new(w.n, w.terms).map_err(serde::de::Error::custom)
    }
}

impl LaurentPolynomial {
    /// Like terms are combined and zero coefficients dropped; term order is the
    /// order of first appearance.
    pub fn new(n: usize, terms: Vec<Term>) -> Result<Self, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::ZeroDimension);
        }
        let mut order: Vec<Vec<i64>> = Vec::new();
        let mut acc: BTreeMap<Vec<i64>, Scalar> = BTreeMap::new();
        for t in terms {
            if t.exponent.len() != n {
                return Err(AlgebraError::DimensionMismatch { expected: n, found: t.exponent.len() });
            }
            match acc.get_mut(&t.exponent) {
                Some(c) => *c = &*c + &t.coeff,
                None => {
                    order.push(t.exponent.clone());
                    acc.insert(t.exponent, t.coeff);
                }
            }
        }
        let terms = order
            .into_iter()
            .filter_map(|e| {
                let c = acc.remove(&e)?;
                (!c.is_zero()).then_some(Term { coeff: c, exponent: e })
            })
            .collect();
        Ok(Self { n, terms })
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_integer_terms(n: usize, terms: &[(i64, &[i64])]) -> Result<Self, AlgebraError> {
        Self::new(n, terms.iter().map(|(c, e)| Term { coeff: Scalar::exact(*c, 0), exponent: e.to_vec() }).collect())
    }

    pub fn from_complex_terms(n: usize, terms: &[(Complex64, Vec<i64>)]) -> Result<Self, AlgebraError> {
        Self::new(n, terms.iter().map(|(c, e)| Term { coeff: Scalar::Float(*c), exponent: e.clone() }).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.terms.iter().all(|t| t.coeff.is_exact())
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.iter().map(|t| t.exponent.clone()).collect()
    }

    /// True when some term has a nonzero exponent in variable `var`.
    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.exponent[var] != 0)
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.terms.iter().map(|t| t.coeff.to_c64() * monomial(x, &t.exponent)).sum()
    }

    /// `Σ |c_i| |x^{α_i}|`, the natural scale for residuals of `eval`.
    pub fn abs_scale(&self, x: &[Complex64]) -> f64 {
        self.terms.iter().map(|t| t.coeff.norm() * monomial(x, &t.exponent).norm()).sum()
    }

    /// `log|c_i| + α_i·z` for every term, in term order.
    pub fn log_term_moduli(&self, z: &[f64]) -> Vec<f64> {
        self.terms
            .iter()
            .map(|t| t.coeff.norm().ln() + t.exponent.iter().zip(z).map(|(&a, &zi)| a as f64 * zi).sum::<f64>())
            .collect()
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shifted(&self, shift: &[i64]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.clone(),
                exponent: t.exponent.iter().zip(shift).map(|(a, b)| a + b).collect(),
            })
            .collect();
        Self { n: self.n, terms }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let terms =
            self.terms.iter().map(|t| Term { coeff: &t.coeff * c, exponent: t.exponent.clone() }).collect::<Vec<_>>();
        Self::new(self.n, terms).expect("dimension unchanged")
    }

    /// Reorders variables: new variable `k` is old variable `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: t.coeff.clone(), exponent: perm.iter().map(|&p| t.exponent[p]).collect() })
            .collect();
        Self { n: self.n, terms }
    }

    /// Smallest and largest exponent of `var` over the support.
    pub fn degree_range(&self, var: usize) -> Option<(i64, i64)> {
        let mut it = self.terms.iter().map(|t| t.exponent[var]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Fixes every variable except `var` to `x` (entry `var` of `x` is ignored)
    /// and returns the coefficients `c_0, c_1, …` of the polynomial in `var`
    /// after clearing the lowest power: `f = y^lo · Σ c_k y^k`.
    pub fn univariate_restriction(&self, var: usize, x: &[Complex64]) -> (i64, Vec<Complex64>) {
        let Some((lo, hi)) = self.degree_range(var) else {
            return (0, Vec::new());
        };
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (hi - lo) as usize + 1];
        for t in &self.terms {
            let mut m = t.coeff.to_c64();
            for (i, (&e, &xi)) in t.exponent.iter().zip(x).enumerate() {
                if i != var && e != 0 {
                    m *= xi.powi(e as i32);
                }
            }
            coeffs[(t.exponent[var] - lo) as usize] += m;
        }
        (lo, coeffs)
    }
}

pub(crate) fn monomial(x: &[Complex64], e: &[i64]) -> Complex64 {
    x.iter().zip(e).filter(|(_, &k)| k != 0).map(|(xi, &k)| xi.powi(k as i32)).product()
}
