//! Exact rationals and rational points.
//!
//! Every [`Rational`] is kept in lowest terms with a positive denominator, so
//! structural equality, ordering and hashing all agree with numeric equality.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

/// Builds the reduced rational `numerator / denominator`.
pub fn rat(numerator: i64, denominator: i64) -> Result<Rational, Error> {
    Rational::new(numerator, denominator)
}

impl Rational {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self, Error> {
        let den = denominator.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        // Ratio::new reduces and moves the sign to the numerator.
        Ok(Rational(BigRational::new(numerator.into(), den)))
    }

    pub fn integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as a big integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    /// The value as a `usize`, if it is a non-negative integer that fits.
    pub fn to_usize(&self) -> Option<usize> {
        self.to_integer()?.to_usize()
    }

    /// The value as a natural number (`>= 1`), if it is one.
    pub fn to_positive_integer(&self) -> Option<BigUint> {
        let i = self.to_integer()?;
        if i.sign() == Sign::Plus {
            i.to_biguint()
        } else {
            None
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Rational(self.0.recip()))
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Rational>>(items: I) -> Self {
        items.into_iter().fold(Rational::one(), |acc, r| &acc * r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `a` or `a/b` with optional surrounding whitespace.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || Error::Invalid(alloc::format!("not a rational: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(n).map_err(|_| bad())?;
        let d = BigInt::from_str(d).map_err(|_| bad())?;
        Rational::new(n, d)
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(v: $t) -> Self {
                Rational::integer(v)
            }
        }
    )*};
}
from_int!(i32, i64, u32, u64, usize, BigInt, BigUint);

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational($tr::$m(&self.0, &rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational($tr::$m(self.0, rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational($tr::$m(self.0, &rhs.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
// Panics on a zero divisor, like the integer types.
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// A point of `Q^n`, `n >= 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Result<Self, Error> {
        if coords.is_empty() {
            return Err(Error::EmptyPoint);
        }
        Ok(Point { coords })
    }

    pub fn origin(dim: usize) -> Result<Self, Error> {
        Point::new(alloc::vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self, Error> {
        Point::new(coords.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, axis: usize) -> &Rational {
        &self.coords[axis]
    }

    /// Copy of `self` moved by `delta` along `axis`.
    pub fn shifted(&self, axis: usize, delta: &Rational) -> Point {
        let mut coords = self.coords.clone();
        coords[axis] = &coords[axis] + delta;
        Point { coords }
    }

    pub fn check_dim(&self, expected: usize) -> Result<(), Error> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, got: self.dim() })
        }
    }

    /// Swaps two axes.
    pub fn swapped(&self, a: usize, b: usize) -> Point {
        let mut coords = self.coords.clone();
        coords.swap(a, b);
        Point { coords }
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `x,y,...` with optional enclosing parentheses.
impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(s);
        let coords = inner
            .split(',')
            .map(Rational::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        Point::new(coords)
    }
}

pub(crate) fn join_display<T: fmt::Display>(items: &[T], sep: &str) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    for (i, it) in items.iter().enumerate() {
        if i > 0 {
            out.push_str(sep);
        }
        let _ = write!(out, "{it}");
    }
    out
}
