//! Complex scalars that are either exact Gaussian rationals or binary64 pairs.
//!
//! Exactness is tracked per value: arithmetic between two exact values stays
//! exact, anything touching a float becomes a float.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::AlgebraError;

pub type Rational = BigRational;

/// `re + im·i` with both parts rational. `BigRational` keeps itself reduced
/// with a positive denominator, so derived equality is structural equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_integers(re: i64, im: i64) -> Self {
        Self::new(Rational::from_integer(re.into()), Rational::from_integer(im.into()))
    }

    pub fn real(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    pub fn zero() -> Self {
        Self::from_integers(0, 0)
    }

    pub fn one() -> Self {
        Self::from_integers(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        let d = rhs.norm_sqr();
        if d.is_zero() {
            return None;
        }
        let num = self * &rhs.conj();
        Some(Self::new(num.re / &d, num.im / &d))
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re * &rhs.re - &self.im * &rhs.im, &self.re * &rhs.im + &self.im * &rhs.re)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator or denominator beyond f64 range; fall back to a ratio of logs
        let sign = if r.is_negative() { -1.0 } else { 1.0 };
        let ln = |b: &BigInt| {
            let bits = b.bits();
            let shift = bits.saturating_sub(60);
            let head = (b.abs() >> shift).to_f64().unwrap_or(f64::MAX);
            head.ln() + shift as f64 * std::f64::consts::LN_2
        };
        sign * (ln(r.numer()) - ln(r.denom())).exp()
    })
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-1.25"` / `"3e-2"`
/// into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(AlgebraError::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let digits = match digits.as_str() {
        "" | "-" | "+" => format!("{digits}0"),
        _ => digits,
    };
    let numer = BigInt::from_str(&digits).map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A complex coefficient or parameter.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(GaussianRational),
    Float(Complex64),
}

impl Scalar {
    pub fn exact(re: i64, im: i64) -> Self {
        Scalar::Exact(GaussianRational::from_integers(re, im))
    }

    pub fn rational(re: Rational, im: Rational) -> Self {
        Scalar::Exact(GaussianRational::new(re, im))
    }

    pub fn float(re: f64, im: f64) -> Self {
        Scalar::Float(Complex64::new(re, im))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&GaussianRational> {
        match self {
            Scalar::Exact(g) => Some(g),
            Scalar::Float(_) => None,
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::Exact(g) => g.to_c64(),
            Scalar::Float(z) => *z,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(g) => g.is_zero(),
            Scalar::Float(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Scalar::Exact(_) => true,
            Scalar::Float(z) => z.re.is_finite() && z.im.is_finite(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.to_c64().norm()
    }

    pub fn conj(&self) -> Self {
        match self {
            Scalar::Exact(g) => Scalar::Exact(g.conj()),
            Scalar::Float(z) => Scalar::Float(z.conj()),
        }
    }

    /// `None` when dividing by an exact zero; float division by zero yields
    /// non-finite values, which callers check through [`Scalar::is_finite`].
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.checked_div(b).map(Scalar::Exact),
            _ if rhs.is_zero() => None,
            _ => Some(Scalar::Float(self.to_c64() / rhs.to_c64())),
        }
    }

    /// Both operands exact: `Some(exact)`; otherwise the float route.
    fn binop(
        &self,
        rhs: &Self,
        exact: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational,
        float: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(exact(a, b)),
            _ => Scalar::Float(float(self.to_c64(), rhs.to_c64())),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: Self) -> Scalar {
        self.binop(rhs, |a, b| a + b, |a, b| a + b)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Self) -> Scalar {
        self.binop(rhs, |a, b| a - b, |a, b| a - b)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Self) -> Scalar {
        self.binop(rhs, |a, b| a * b, |a, b| a * b)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(g) => Scalar::Exact(-g),
            Scalar::Float(z) => Scalar::Float(-z),
        }
    }
}

impl From<Complex64> for Scalar {
    fn from(z: Complex64) -> Self {
        Scalar::Float(z)
    }
}

impl From<GaussianRational> for Scalar {
    fn from(g: GaussianRational) -> Self {
        Scalar::Exact(g)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(g) => write!(f, "({}, {})", format_rational(&g.re), format_rational(&g.im)),
            Scalar::Float(z) => write!(f, "({}, {})", z.re, z.im),
        }
    }
}

/// One component of the `[re, im]` wire encoding: a string is an exact
/// rational, a JSON number is a binary64 value.
#[derive(Deserialize)]
#[serde(untagged)]
enum WirePart {
    Text(String),
    Number(f64),
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut t = serializer.serialize_tuple(2)?;
        match self {
            Scalar::Exact(g) => {
                t.serialize_element(&format_rational(&g.re))?;
                t.serialize_element(&format_rational(&g.im))?;
            }
            Scalar::Float(z) => {
                t.serialize_element(&z.re)?;
                t.serialize_element(&z.im)?;
            }
        }
        t.end()
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [re, im]: [WirePart; 2] = Deserialize::deserialize(deserializer)?;
        match (re, im) {
            (WirePart::Text(re), WirePart::Text(im)) => {
                let re = parse_rational(&re).map_err(D::Error::custom)?;
                let im = parse_rational(&im).map_err(D::Error::custom)?;
                Ok(Scalar::rational(re, im))
            }
            (re, im) => {
                let as_f64 = |p: WirePart| -> Result<f64, D::Error> {
                    match p {
                        WirePart::Number(x) => Ok(x),
                        WirePart::Text(s) => parse_rational(&s).map(|r| rational_to_f64(&r)).map_err(D::Error::custom),
                    }
                };
                Ok(Scalar::float(as_f64(re)?, as_f64(im)?))
            }
        }
    }
}
