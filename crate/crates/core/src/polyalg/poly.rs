//! Dense polynomials in `x` with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

/// Coefficients are stored in ascending powers with no trailing zeros, so
/// the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact division of every coefficient by `d`; `None` if some coefficient
    /// is not a multiple of `d`.
    pub fn div_exact(&self, d: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !(c % d).is_zero() {
                return None;
            }
            out.push(c / d);
        }
        Some(Self::new(out))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Sum of coefficients, i.e. the value at `x = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// `[x^k] = [x^(n+1-k)]` for `1 ≤ k ≤ n`, the palindromy of a descent
    /// polynomial weighted by `x^(1+des)` over permutations of length `n`.
    pub fn is_symmetric(&self, n: usize) -> bool {
        (1..=n).all(|k| self.coeff(k) == self.coeff(n + 1 - k))
            && self.degree().is_none_or(|d| d <= n)
    }

    /// Weakly increasing, then weakly decreasing.
    pub fn is_unimodal(&self) -> bool {
        let c = &self.coeffs;
        let mut i = 1;
        while i < c.len() && c[i] >= c[i - 1] {
            i += 1;
        }
        while i < c.len() && c[i] <= c[i - 1] {
            i += 1;
        }
        i >= c.len()
    }

    /// `a_i² ≥ a_{i-1}·a_{i+1}` at every interior index of the support.
    pub fn is_log_concave(&self) -> bool {
        let Some(lo) = self.coeffs.iter().position(|c| !c.is_zero()) else {
            return true;
        };
        let hi = self.coeffs.len() - 1;
        (lo + 1..hi).all(|i| {
            let c = &self.coeffs;
            &c[i] * &c[i] >= &c[i - 1] * &c[i + 1]
        })
    }

    /// Coefficients as `i64`, when they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: &IntPolynomial) -> IntPolynomial {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for IntPolynomial {
    fn sum<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::zero(), |acc, p| &acc + &p)
    }
}

/// Highest power first, e.g. `x^3 + 4x^2 + x`.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

/// JSON shape `{"coeffs": [c0, c1, …]}`; coefficients outside `i64` are
/// written as decimal strings.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Shape<'a> {
            coeffs: Coeffs<'a>,
        }
        Shape {
            coeffs: Coeffs(&self.coeffs),
        }
        .serialize(serializer)
    }
}

pub(crate) struct Coeffs<'a>(pub(crate) &'a [BigInt]);

impl Serialize for Coeffs<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for c in self.0 {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
pub(crate) enum CoeffRepr {
    Int(i64),
    Text(String),
}

impl CoeffRepr {
    pub(crate) fn into_bigint<E: de::Error>(self) -> Result<BigInt, E> {
        match self {
            CoeffRepr::Int(v) => Ok(BigInt::from(v)),
            CoeffRepr::Text(s) => s
                .parse()
                .map_err(|_| E::custom(format!("bad coefficient {s:?}"))),
        }
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Shape {
            coeffs: Vec<CoeffRepr>,
        }
        let shape = Shape::deserialize(deserializer)?;
        let coeffs = shape
            .coeffs
            .into_iter()
            .map(CoeffRepr::into_bigint)
            .collect::<Result<_, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn arithmetic() {
        let a = poly(&[1, 1]);
        let b = poly(&[-1, 1]);
        assert_eq!(&a * &b, poly(&[-1, 0, 1]));
        assert_eq!(&a + &b, poly(&[0, 2]));
        assert_eq!(&a - &a, IntPolynomial::zero());
        assert_eq!(poly(&[0, 0, 0]).degree(), None);
        assert_eq!(poly(&[3, 0, 2]).derivative(), poly(&[0, 4]));
        assert_eq!(poly(&[0, 1, 4, 1]).coefficient_sum(), BigInt::from(6));
        assert_eq!(poly(&[2, 4]).div_exact(&BigInt::from(2)), Some(poly(&[1, 2])));
        assert_eq!(poly(&[2, 3]).div_exact(&BigInt::from(2)), None);
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[0, 1, 4, 1]).to_string(), "x^3 + 4x^2 + x");
        assert_eq!(poly(&[1]).to_string(), "1");
        assert_eq!(poly(&[0, -1, 0, 2]).to_string(), "2x^3 - x");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn shape_predicates() {
        let w = poly(&[0, 1, 20, 49, 20, 1]);
        assert!(w.is_symmetric(5));
        assert!(w.is_unimodal());
        assert!(w.is_log_concave());
        let x = IntPolynomial::x();
        assert!(x.is_symmetric(1) && x.is_unimodal() && x.is_log_concave());
        let odd = poly(&[1, 1, 3]);
        assert!(odd.is_unimodal());
        assert!(!odd.is_log_concave());
        assert!(!poly(&[0, 1, 2, 1, 2]).is_unimodal());
        assert!(!poly(&[0, 1, 2, 3]).is_symmetric(3));
    }

    #[test]
    fn json_shape() {
        let p = poly(&[0, 1, 4, 1]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"coeffs":[0,1,4,1]}"#);
        assert_eq!(serde_json::from_str::<IntPolynomial>(&json).unwrap(), p);
        let big = IntPolynomial::monomial(BigInt::from(10).pow(30), 2);
        let json = serde_json::to_string(&big).unwrap();
        assert!(json.contains("\"1000000000000000000000000000000\""));
        assert_eq!(serde_json::from_str::<IntPolynomial>(&json).unwrap(), big);
    }
}
