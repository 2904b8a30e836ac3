//! Numerical K-theory of a smooth projective curve.
//!
//! Classes live in the numerical Grothendieck group `Z²` as pairs
//! `(rank, degree)`. All arithmetic is exact: ranks and degrees are
//! arbitrary-precision integers.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A smooth projective curve, remembered only through its genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CurveModel {
    genus: u32,
}

impl CurveModel {
    pub const fn new(genus: u32) -> Self {
        CurveModel { genus }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Degree of the canonical bundle, `2g - 2`.
    pub fn canonical_degree(&self) -> BigInt {
        BigInt::from(2 * i64::from(self.genus) - 2)
    }

    /// `1 - g`, the coefficient of `r r'` in the Euler form.
    fn one_minus_genus(&self) -> BigInt {
        BigInt::from(1 - i64::from(self.genus))
    }
}

/// A class `(r, d)` in the numerical Grothendieck group.
///
/// Any pair of integers is a legal value; positivity is a separate predicate
/// since differences of effective classes are needed throughout.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NumClass {
    pub rank: BigInt,
    pub degree: BigInt,
}

impl NumClass {
    pub fn new(rank: impl Into<BigInt>, degree: impl Into<BigInt>) -> Self {
        NumClass {
            rank: rank.into(),
            degree: degree.into(),
        }
    }

    pub fn zero() -> Self {
        NumClass::new(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.rank.is_zero() && self.degree.is_zero()
    }

    /// Membership in the effective cone: `r > 0`, or `r = 0` and `d >= 0`.
    pub fn is_positive(&self) -> bool {
        self.rank.is_positive() || (self.rank.is_zero() && !self.degree.is_negative())
    }

    /// `d / r`, or infinity for torsion classes.
    pub fn slope(&self) -> Result<Slope> {
        if self.rank.is_zero() {
            if self.degree.is_zero() {
                Err(Error::UndefinedSlope)
            } else {
                Ok(Slope::Infinite)
            }
        } else {
            Ok(Slope::Finite(BigRational::new(
                self.degree.clone(),
                self.rank.clone(),
            )))
        }
    }

    /// The twist `(r, d + n r)`, i.e. the class of `F ⊗ L` for `deg L = n`.
    pub fn twist(&self, n: &BigInt) -> NumClass {
        NumClass {
            rank: self.rank.clone(),
            degree: &self.degree + n * &self.rank,
        }
    }

    /// Standard order: `self <= other` iff `other - self` is positive.
    pub fn leq(&self, other: &NumClass) -> bool {
        (other - self).is_positive()
    }
}

impl fmt::Display for NumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.rank, self.degree)
    }
}

impl FromStr for NumClass {
    type Err = Error;

    /// Parses `r,d` (optionally wrapped in parentheses).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(t);
        let (r, d) = t
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected `r,d`, got `{s}`")))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad integer `{}` in class `{s}`", x.trim())))
        };
        Ok(NumClass::new(parse(r)?, parse(d)?))
    }
}

impl Add for &NumClass {
    type Output = NumClass;
    fn add(self, rhs: &NumClass) -> NumClass {
        NumClass {
            rank: &self.rank + &rhs.rank,
            degree: &self.degree + &rhs.degree,
        }
    }
}

impl Add for NumClass {
    type Output = NumClass;
    fn add(self, rhs: NumClass) -> NumClass {
        &self + &rhs
    }
}

impl Sub for &NumClass {
    type Output = NumClass;
    fn sub(self, rhs: &NumClass) -> NumClass {
        NumClass {
            rank: &self.rank - &rhs.rank,
            degree: &self.degree - &rhs.degree,
        }
    }
}

impl Sub for NumClass {
    type Output = NumClass;
    fn sub(self, rhs: NumClass) -> NumClass {
        &self - &rhs
    }
}

impl Neg for &NumClass {
    type Output = NumClass;
    fn neg(self) -> NumClass {
        NumClass {
            rank: -&self.rank,
            degree: -&self.degree,
        }
    }
}

impl<'a> std::iter::Sum<&'a NumClass> for NumClass {
    fn sum<I: Iterator<Item = &'a NumClass>>(iter: I) -> NumClass {
        iter.fold(NumClass::zero(), |acc, x| &acc + x)
    }
}

impl std::iter::Sum<NumClass> for NumClass {
    fn sum<I: Iterator<Item = NumClass>>(iter: I) -> NumClass {
        iter.fold(NumClass::zero(), |acc, x| acc + x)
    }
}

/// Slope of a nonzero class: a reduced rational or infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Slope {
    Finite(BigRational),
    Infinite,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(q) => write!(f, "{q}"),
            Slope::Infinite => f.write_str("inf"),
        }
    }
}

/// Euler form of coherent sheaves, `(1-g) r r' + (r d' - r' d)`.
pub fn euler_coh(a: &NumClass, b: &NumClass, curve: &CurveModel) -> BigInt {
    curve.one_minus_genus() * &a.rank * &b.rank + (&a.rank * &b.degree - &b.rank * &a.degree)
}

/// Euler form of the 2-Calabi-Yau category of Higgs sheaves, `2(1-g) r r'`.
pub fn euler_higgs(a: &NumClass, b: &NumClass, curve: &CurveModel) -> BigInt {
    BigInt::from(2) * curve.one_minus_genus() * &a.rank * &b.rank
}

/// Dimension of the stack of coherent sheaves of class `a`.
pub fn dim_coh(a: &NumClass, curve: &CurveModel) -> BigInt {
    -euler_coh(a, a, curve)
}

/// Dimension of the stack of Higgs sheaves of class `a`.
pub fn dim_higgs(a: &NumClass, curve: &CurveModel) -> BigInt {
    BigInt::from(-2) * euler_coh(a, a, curve)
}

/// Dimension of the stack of extensions `0 → G → F → F/G → 0` with `[F/G] = a`, `[G] = b`.
pub fn dim_ext_stack(a: &NumClass, b: &NumClass, curve: &CurveModel) -> BigInt {
    -euler_coh(a, a, curve) - euler_coh(b, b, curve) - euler_coh(a, b, curve)
}

/// Rank of the affine fibration on Quot-scheme charts twisted by a line
/// bundle `L` of degree `line_degree`: `<L,b><L,a> - <b,a>`.
pub fn rank_q_fibration(
    line_degree: &BigInt,
    a: &NumClass,
    b: &NumClass,
    curve: &CurveModel,
) -> BigInt {
    let line = NumClass::new(1, line_degree.clone());
    euler_coh(&line, b, curve) * euler_coh(&line, a, curve) - euler_coh(b, a, curve)
}
