//! The cohomology ring `H*(X)` of a smooth projective curve of genus `g`.
//!
//! Basis `1, π_1, …, π_{2g}, ϖ` with the symplectic cup product
//! `π_a π_{a+g} = ϖ = -π_{a+g} π_a` for `1 <= a <= g`.

use crate::error::{Error, Result};
use crate::ktheory::CurveModel;

use super::algebra::{Monomial, Render};

/// A basis element of `H*(X)`.
///
/// `Odd { upper: false, pair: a }` is `π_a` and `Odd { upper: true, pair: a }`
/// is `π_{a+g}`. The derived order is the basis order `1 < π_1 < … < π_{2g} < ϖ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum XBasis {
    One,
    Odd { upper: bool, pair: u32 },
    Point,
}

impl XBasis {
    pub fn lower(pair: u32) -> Self {
        XBasis::Odd { upper: false, pair }
    }

    pub fn upper(pair: u32) -> Self {
        XBasis::Odd { upper: true, pair }
    }

    /// `π_k` for `1 <= k <= 2g`.
    pub fn pi(k: u32, curve: &CurveModel) -> Result<Self> {
        let g = curve.genus();
        match k {
            k if k >= 1 && k <= g => Ok(XBasis::lower(k)),
            k if k > g && k <= 2 * g => Ok(XBasis::upper(k - g)),
            _ => Err(Error::Parse(format!(
                "p{k} is not a basis class in genus {g}"
            ))),
        }
    }

    /// The absolute index `k` of `π_k`.
    pub fn pi_index(&self, curve: &CurveModel) -> Option<u32> {
        match *self {
            XBasis::Odd { upper, pair } => Some(if upper { pair + curve.genus() } else { pair }),
            _ => None,
        }
    }

    /// The full basis in order.
    pub fn basis(curve: &CurveModel) -> Vec<XBasis> {
        let g = curve.genus();
        let mut out = vec![XBasis::One];
        out.extend((1..=g).map(XBasis::lower));
        out.extend((1..=g).map(XBasis::upper));
        out.push(XBasis::Point);
        out
    }

    pub fn label(&self, curve: &CurveModel) -> String {
        match self {
            XBasis::One => "1".into(),
            XBasis::Point => "w".into(),
            odd => format!("p{}", odd.pi_index(curve).unwrap_or(0)),
        }
    }

    /// Parses `1`, `w` or `pK`.
    pub fn parse(s: &str, curve: &CurveModel) -> Result<Self> {
        match s.trim() {
            "1" => Ok(XBasis::One),
            "w" => Ok(XBasis::Point),
            other => {
                let k = other
                    .strip_prefix('p')
                    .and_then(|k| k.parse::<u32>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown cohomology class `{other}`")))?;
                XBasis::pi(k, curve)
            }
        }
    }

    /// The Poincaré dual partner: the unique `y` with `x·y = ±ϖ`.
    pub fn dual(&self) -> XBasis {
        match *self {
            XBasis::One => XBasis::Point,
            XBasis::Point => XBasis::One,
            XBasis::Odd { upper, pair } => XBasis::Odd {
                upper: !upper,
                pair,
            },
        }
    }
}

impl Monomial for XBasis {
    fn degree(&self) -> u32 {
        match self {
            XBasis::One => 0,
            XBasis::Odd { .. } => 1,
            XBasis::Point => 2,
        }
    }

    fn mul(&self, rhs: &Self) -> Option<(bool, Self)> {
        match (*self, *rhs) {
            (XBasis::One, y) => Some((false, y)),
            (x, XBasis::One) => Some((false, x)),
            (XBasis::Odd { upper: u1, pair: a }, XBasis::Odd { upper: u2, pair: b })
                if a == b && u1 != u2 =>
            {
                Some((u1, XBasis::Point))
            }
            _ => None,
        }
    }
}

impl Render for XBasis {
    fn render(&self, curve: &CurveModel) -> String {
        self.label(curve)
    }

    fn is_unit(&self) -> bool {
        *self == XBasis::One
    }
}
