//! Truncated power series in `q` and the Poincaré series of `Coh_α`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::ktheory::CurveModel;

use super::algebra::{Coeff, Monomial};
use super::hpoly::Gen;
use super::xcoh::XBasis;

/// `Σ_{k <= N} a_k q^k`, exact below `q^{N+1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries {
    coeffs: Vec<Coeff>,
}

impl QSeries {
    /// Pads with zeros or drops terms so that the order is exactly `order`.
    pub fn new(mut coeffs: Vec<Coeff>, order: u32) -> Self {
        coeffs.resize(order as usize + 1, Coeff::zero());
        QSeries { coeffs }
    }

    pub fn from_integers(coeffs: &[i64], order: u32) -> Self {
        QSeries::new(
            coeffs
                .iter()
                .map(|&c| Coeff::from_integer(c.into()))
                .collect(),
            order,
        )
    }

    pub fn zero(order: u32) -> Self {
        QSeries::new(Vec::new(), order)
    }

    pub fn one(order: u32) -> Self {
        QSeries::new(vec![Coeff::one()], order)
    }

    /// `1 + q^step`.
    pub fn one_plus(step: u32, order: u32) -> Self {
        let mut s = QSeries::one(order);
        if let Some(c) = s.coeffs.get_mut(step as usize) {
            *c += Coeff::one();
        }
        s
    }

    /// `1/(1 - q^step)` for `step >= 1`.
    pub fn geometric(step: u32, order: u32) -> Self {
        assert!(step > 0, "geometric series needs a positive step");
        let mut s = QSeries::zero(order);
        for k in (0..=order as usize).step_by(step as usize) {
            s.coeffs[k] = Coeff::one();
        }
        s
    }

    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn coeff(&self, k: u32) -> Coeff {
        self.coeffs
            .get(k as usize)
            .cloned()
            .unwrap_or_else(Coeff::zero)
    }

    pub fn truncate(&self, order: u32) -> Self {
        QSeries::new(self.coeffs.clone(), order.min(self.order()))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        QSeries::new(
            (0..=order).map(|k| self.coeff(k) + rhs.coeff(k)).collect(),
            order,
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order()) as usize;
        let mut out = vec![Coeff::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        QSeries::new(out, order as u32)
    }

    /// Coefficients as exact strings, degree `0..=N`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(|c| c.to_string().into()).collect())
    }

    /// Nonzero `(k, a_k)` pairs.
    pub fn sparse(&self) -> Vec<(u32, Coeff)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u32, c.clone()))
            .collect()
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sparse();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (k, c)) in terms.iter().enumerate() {
            let abs = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let coeff = if !abs.is_integer() {
                format!("({abs})")
            } else if abs.is_one() && *k > 0 {
                String::new()
            } else {
                abs.to_string()
            };
            match k {
                0 => write!(f, "{abs}")?,
                1 => write!(f, "{coeff}q")?,
                _ => write!(f, "{coeff}q^{k}")?,
            }
        }
        Ok(())
    }
}

/// Poincaré series of `H*(Coh_α)` for `rk α > 0`: the free supercommutative
/// algebra on the generators `c_{i,π}`.
pub fn poincare_coh_positive_rank(curve: &CurveModel, order: u32) -> QSeries {
    Gen::all(curve, order)
        .iter()
        .fold(QSeries::one(order), |acc, g| {
            let factor = if g.is_odd() {
                QSeries::one_plus(g.degree(), order)
            } else {
                QSeries::geometric(g.degree(), order)
            };
            acc.mul(&factor)
        })
}

/// Poincaré series of `H*(Coh_{(0,d)}) = S^d(H*(X)[z])`, with
/// `deg(π z^k) = deg π + 2k`.
pub fn poincare_coh_torsion(curve: &CurveModel, d: u32, order: u32) -> QSeries {
    // Coefficients of u^0..u^d, each a q-series.
    let mut bi: Vec<QSeries> = (0..=d)
        .map(|k| {
            if k == 0 {
                QSeries::one(order)
            } else {
                QSeries::zero(order)
            }
        })
        .collect();
    for x in XBasis::basis(curve) {
        let mut deg = x.degree();
        while deg <= order {
            bi = if deg % 2 == 1 {
                // (1 + u q^deg)
                (0..=d as usize)
                    .map(|k| {
                        if k == 0 {
                            bi[0].clone()
                        } else {
                            bi[k].add(&shift(&bi[k - 1], deg))
                        }
                    })
                    .collect()
            } else {
                // 1/(1 - u q^deg): b'_k = b_k + q^deg b'_{k-1}
                let mut out: Vec<QSeries> = Vec::with_capacity(bi.len());
                for k in 0..=d as usize {
                    let next = if k == 0 {
                        bi[0].clone()
                    } else {
                        bi[k].add(&shift(&out[k - 1], deg))
                    };
                    out.push(next);
                }
                out
            };
            deg += 2;
        }
    }
    bi.pop().unwrap_or_else(|| QSeries::one(order))
}

/// `q^k · s`.
fn shift(s: &QSeries, k: u32) -> QSeries {
    let order = s.order();
    let mut coeffs = vec![Coeff::zero(); k.min(order + 1) as usize];
    coeffs.extend(s.coeffs.iter().cloned());
    QSeries::new(coeffs, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(c: &[i64], n: u32) -> QSeries {
        QSeries::from_integers(c, n)
    }

    #[test]
    fn display() {
        assert_eq!(
            series(&[1, 4, 2, 4, 2], 4).to_string(),
            "1 + 4q + 2q^2 + 4q^3 + 2q^4"
        );
        assert_eq!(series(&[0, -1, 0, 1], 3).to_string(), "-q + q^3");
        assert_eq!(series(&[], 3).to_string(), "0");
        let half = QSeries::new(vec![Coeff::new(1.into(), 2.into()); 2], 1);
        assert_eq!(half.to_string(), "1/2 + (1/2)q");
    }

    #[test]
    fn arithmetic_uses_minimum_order() {
        let a = QSeries::geometric(1, 5);
        let b = QSeries::one_plus(1, 3);
        assert_eq!(a.mul(&b), series(&[1, 2, 2, 2], 3));
        assert_eq!(a.add(&b).order(), 3);
        assert_eq!(QSeries::geometric(2, 5), series(&[1, 0, 1, 0, 1, 0], 5));
    }

    #[test]
    fn positive_rank_examples() {
        assert_eq!(
            poincare_coh_positive_rank(&CurveModel::new(0), 4),
            series(&[1, 0, 2, 0, 5], 4)
        );
        assert_eq!(
            poincare_coh_positive_rank(&CurveModel::new(1), 1),
            series(&[1, 2], 1)
        );
        for g in 0..4 {
            assert_eq!(
                poincare_coh_positive_rank(&CurveModel::new(g), 6).coeff(0),
                Coeff::one()
            );
        }
    }

    /// The closed product formula, expanded independently.
    #[test]
    fn positive_rank_closed_form() {
        for g in 0..4 {
            let n = 10;
            let mut s = QSeries::geometric(2, n);
            for _ in 0..2 * g {
                s = s.mul(&QSeries::one_plus(1, n));
            }
            for i in 2..=n / 2 + 1 {
                for _ in 0..2 * g {
                    s = s.mul(&QSeries::one_plus(2 * i - 1, n));
                }
                s = s.mul(&QSeries::geometric(2 * i, n));
                s = s.mul(&QSeries::geometric(2 * i - 2, n));
            }
            assert_eq!(
                poincare_coh_positive_rank(&CurveModel::new(g), n),
                s,
                "g = {g}"
            );
        }
    }

    #[test]
    fn torsion_examples() {
        let g2 = CurveModel::new(2);
        assert_eq!(poincare_coh_torsion(&g2, 1, 4), series(&[1, 4, 2, 4, 2], 4));
        assert_eq!(poincare_coh_torsion(&g2, 0, 5), QSeries::one(5));
        let s = poincare_coh_torsion(&CurveModel::new(0), 2, 2);
        assert_eq!(s, series(&[1, 0, 2], 2));
    }

    #[test]
    fn torsion_one_is_hx_times_z() {
        // S^1 V = V = H*(X) ⊗ Q[z]
        for g in 0..4 {
            let n = 9;
            let hx = QSeries::new(
                vec![
                    Coeff::one(),
                    Coeff::from_integer((2 * g).into()),
                    Coeff::one(),
                ],
                n,
            );
            assert_eq!(
                poincare_coh_torsion(&CurveModel::new(g), 1, n),
                hx.mul(&QSeries::geometric(2, n))
            );
        }
    }
}
