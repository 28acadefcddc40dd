use std::fmt;
use std::ops::{Index, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// Fixed-length vector of exact rationals (prices, labels, evaluation points).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalVector(pub Vec<Rational>);

/// Fixed-length integer vector (bundles and primitive lattice normals).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntegerVector(pub Vec<i64>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        RationalVector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RationalVector(coords.iter().map(|&c| Rational::from(c)).collect())
    }

    /// Unit vector `e_axis` of length `dim`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn dot(&self, other: &RationalVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dot_int(&self, other: &IntegerVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, &b)| a * Rational::from(b))
            .sum()
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> RationalVector {
        RationalVector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    /// `self + t * dir`.
    pub fn add_scaled(&self, t: &Rational, dir: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&dir.0).map(|(a, d)| a + t * d).collect())
    }

    /// Arithmetic mean of a nonempty set of points.
    pub fn mean<'a>(points: impl IntoIterator<Item = &'a RationalVector>) -> Option<RationalVector> {
        let mut iter = points.into_iter();
        let first = iter.next()?.clone();
        let mut count = 1i64;
        let mut acc = first;
        for p in iter {
            acc = acc.add(p);
            count += 1;
        }
        Some(acc.scale(&Rational::frac(1, count)))
    }

    /// Converts to integers when every coordinate is integral.
    pub fn to_integer_vector(&self) -> Option<IntegerVector> {
        self.0
            .iter()
            .map(|c| c.to_i64())
            .collect::<Option<Vec<_>>>()
            .map(IntegerVector)
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }
}

impl From<&IntegerVector> for RationalVector {
    fn from(v: &IntegerVector) -> Self {
        RationalVector::from_ints(&v.0)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl IntegerVector {
    pub fn new(coords: Vec<i64>) -> Self {
        IntegerVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        IntegerVector(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &IntegerVector) -> IntegerVector {
        IntegerVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntegerVector) -> IntegerVector {
        IntegerVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn dot(&self, other: &IntegerVector) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &IntegerVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// gcd of the absolute coordinates; 0 for the zero vector.
    pub fn content(&self) -> u64 {
        self.0
            .iter()
            .fold(0u64, |g, &c| g.gcd(&c.unsigned_abs()))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// Counterclockwise quarter turn of a 2-vector: `(x, y) -> (-y, x)`.
    pub fn rot90(&self) -> IntegerVector {
        debug_assert_eq!(self.dim(), 2);
        IntegerVector(vec![-self.0[1], self.0[0]])
    }

    /// Sign-normalized copy whose first nonzero coordinate is positive.
    pub fn lex_positive(&self) -> IntegerVector {
        match self.0.iter().find(|&&c| c != 0) {
            Some(&c) if c < 0 => -self,
            _ => self.clone(),
        }
    }
}

impl Neg for &IntegerVector {
    type Output = IntegerVector;
    fn neg(self) -> IntegerVector {
        IntegerVector(self.0.iter().map(|a| -a).collect())
    }
}

impl Index<usize> for IntegerVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Display for IntegerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for IntegerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Splits a nonzero lattice vector as `v = weight * normal` with `normal`
/// primitive and `weight > 0`; `normal` keeps the direction of `v`.
pub fn primitive_direction(v: &IntegerVector) -> Result<(IntegerVector, u64)> {
    let g = v.content();
    if g == 0 {
        return Err(Error::DegenerateInput("zero vector has no direction".into()));
    }
    let normal = IntegerVector(v.0.iter().map(|&c| c / g as i64).collect());
    Ok((normal, g))
}

/// Rational analogue of [`primitive_direction`]: `v = weight * normal` with an
/// integer primitive `normal` parallel to `v` and a positive rational weight
/// (the lattice length of `v`).
pub fn primitive_direction_rational(v: &RationalVector) -> Result<(IntegerVector, Rational)> {
    if v.is_zero() {
        return Err(Error::DegenerateInput("zero vector has no direction".into()));
    }
    let lcm = v
        .0
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v
        .0
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let normal = ints
        .iter()
        .map(|c| {
            (c / &g)
                .to_i64()
                .ok_or_else(|| Error::Overflow(format!("direction of {v}")))
        })
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(g.is_positive());
    let weight = Rational::from_frac(g, lcm)?;
    Ok((IntegerVector(normal), weight))
}
