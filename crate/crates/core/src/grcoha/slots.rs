//! Tensor slots of a stratum and their universal sheaves.
//!
//! A stratum `Λ_t` contributes `⊗_i H*(Coh_{α_i})`. Positive-rank entries
//! carry `ℍ` itself. A torsion entry `(0, d)` carries `V^{⊗d}` with
//! `V = H*(X)[z] = H*(X × BG_m)`; `H*(Coh_{(0,d)}) = S^d V` sits inside as the
//! super-symmetric tensors, and every class built from the universal sheaf
//! lands there.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::ktheory::{CurveModel, NumClass};
use crate::tautalg::{
    Coeff, Gen, HMono, KunnethClass, KunnethMono, Monomial, Poly, Render, SheafClass, TensorMono,
    XBasis,
};

/// A basis element `x z^k` of `V = H*(X)[z]`, of degree `deg x + 2k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ZMono {
    pub x: XBasis,
    pub z: u32,
}

impl ZMono {
    pub const ONE: ZMono = ZMono {
        x: XBasis::One,
        z: 0,
    };

    /// Basis of `V` up to degree `max_degree`.
    pub fn basis(curve: &CurveModel, max_degree: u32) -> Vec<ZMono> {
        let mut out = Vec::new();
        for x in XBasis::basis(curve) {
            let mut z = 0;
            while x.degree() + 2 * z <= max_degree {
                out.push(ZMono { x, z });
                z += 1;
            }
        }
        out.sort();
        out
    }
}

impl Monomial for ZMono {
    fn degree(&self) -> u32 {
        self.x.degree() + 2 * self.z
    }

    fn mul(&self, rhs: &Self) -> Option<(bool, Self)> {
        let (neg, x) = self.x.mul(&rhs.x)?;
        Some((
            neg,
            ZMono {
                x,
                z: self.z + rhs.z,
            },
        ))
    }
}

impl Render for ZMono {
    fn render(&self, curve: &CurveModel) -> String {
        let z = match self.z {
            0 => String::new(),
            1 => "z".into(),
            k => format!("z^{k}"),
        };
        match (self.x, z.is_empty()) {
            (XBasis::One, true) => "1".into(),
            (XBasis::One, false) => z,
            (x, true) => x.label(curve),
            (x, false) => format!("{}*{}", x.label(curve), z),
        }
    }

    fn is_unit(&self) -> bool {
        *self == ZMono::ONE
    }
}

/// What a tensor slot carries.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SlotKind {
    /// `H*(Coh_α) = ℍ`, for `rk α > 0`.
    Free,
    /// `V^{⊗d}` for the class `(0, d)`.
    Points(usize),
}

impl SlotKind {
    pub fn of(alpha: &NumClass) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::NotPositive(alpha.clone()));
        }
        if alpha.rank > BigInt::from(0) {
            return Ok(SlotKind::Free);
        }
        alpha
            .degree
            .to_usize()
            .map(SlotKind::Points)
            .ok_or_else(|| Error::BoundTooLarge(alpha.degree.clone()))
    }

    pub fn unit(&self) -> SlotMono {
        match *self {
            SlotKind::Free => SlotMono::Free(HMono::one()),
            SlotKind::Points(d) => SlotMono::Points(TensorMono(vec![ZMono::ONE; d])),
        }
    }

    pub fn label(&self) -> String {
        match self {
            SlotKind::Free => "free".into(),
            SlotKind::Points(d) => format!("points({d})"),
        }
    }
}

/// A basis element of one slot.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum SlotMono {
    Free(HMono),
    Points(TensorMono<ZMono>),
}

impl Monomial for SlotMono {
    fn degree(&self) -> u32 {
        match self {
            SlotMono::Free(m) => m.degree(),
            SlotMono::Points(m) => m.degree(),
        }
    }

    fn mul(&self, rhs: &Self) -> Option<(bool, Self)> {
        match (self, rhs) {
            (SlotMono::Free(a), SlotMono::Free(b)) => a.mul(b).map(|(n, m)| (n, SlotMono::Free(m))),
            (SlotMono::Points(a), SlotMono::Points(b)) => {
                a.mul(b).map(|(n, m)| (n, SlotMono::Points(m)))
            }
            _ => panic!("multiplying monomials of different slot kinds"),
        }
    }
}

impl Render for SlotMono {
    fn render(&self, curve: &CurveModel) -> String {
        match self {
            SlotMono::Free(m) => m.render(curve),
            SlotMono::Points(m) if m.is_unit() => "1".into(),
            SlotMono::Points(m) => format!("[{}]", m.render(curve)),
        }
    }

    fn is_unit(&self) -> bool {
        match self {
            SlotMono::Free(m) => m.is_unit(),
            SlotMono::Points(m) => m.is_unit(),
        }
    }
}

/// A monomial of the stratum algebra `⊗_i H*(Coh_{α_i})`.
pub type StratumMono = TensorMono<SlotMono>;

pub fn slot_units(kinds: &[SlotKind]) -> StratumMono {
    TensorMono(kinds.iter().map(SlotKind::unit).collect())
}

fn place(units: &StratumMono, slot: usize, m: SlotMono) -> StratumMono {
    let mut v = units.0.clone();
    v[slot] = m;
    TensorMono(v)
}

fn point_factor(d: usize, j: usize, zm: ZMono) -> SlotMono {
    let mut v = vec![ZMono::ONE; d];
    v[j] = zm;
    SlotMono::Points(TensorMono(v))
}

/// Universal sheaf of class `alpha` pulled back from slot `slot`.
///
/// Free slots: `c = 1 + d (1 ⊠ ϖ) + Σ c_{i,π} ⊠ π`.
/// Point slots: `𝔈 = ⊕_j O_{Δ_j} ⊗ L_j` with `c_1(L_j) = z_j`, so
/// `ch = Σ_j e^{z_j} ([Δ]_j - (1-g) ϖ_j ⊠ ϖ)` where
/// `[Δ] = ϖ ⊠ 1 + 1 ⊠ ϖ + Σ_a (π_{a+g} ⊠ π_a - π_a ⊠ π_{a+g})`.
pub fn entry_sheaf(
    kinds: &[SlotKind],
    slot: usize,
    alpha: &NumClass,
    curve: &CurveModel,
    truncation: u32,
) -> Result<SheafClass<StratumMono>> {
    let units = slot_units(kinds);
    let km = |m: StratumMono, x: XBasis| KunnethMono { coeff: m, x };
    match kinds[slot] {
        SlotKind::Free => {
            let mut poly = Poly::monomial(km(units.clone(), XBasis::One));
            poly.add_term(
                km(units.clone(), XBasis::Point),
                Coeff::from_integer(alpha.degree.clone()),
            );
            for g in Gen::all(curve, truncation) {
                poly.add_term(
                    km(place(&units, slot, SlotMono::Free(HMono::gen(g))), g.x),
                    Coeff::from_integer(1.into()),
                );
            }
            SheafClass::new(
                alpha.rank.clone(),
                KunnethClass::new(units, poly, truncation),
            )
        }
        SlotKind::Points(d) => {
            let g = i64::from(curve.genus());
            let mut ch = Poly::zero();
            for j in 0..d {
                // (point-side class, target class, coefficient)
                let mut diag = vec![
                    (XBasis::Point, XBasis::One, Coeff::from_integer(1.into())),
                    (XBasis::One, XBasis::Point, Coeff::from_integer(1.into())),
                    (
                        XBasis::Point,
                        XBasis::Point,
                        Coeff::from_integer((g - 1).into()),
                    ),
                ];
                for a in 1..=curve.genus() {
                    diag.push((
                        XBasis::upper(a),
                        XBasis::lower(a),
                        Coeff::from_integer(1.into()),
                    ));
                    diag.push((
                        XBasis::lower(a),
                        XBasis::upper(a),
                        Coeff::from_integer((-1).into()),
                    ));
                }
                for (px, tx, c) in diag {
                    let mut k = 0u32;
                    let mut fact = BigInt::from(1);
                    while px.degree() + 2 * k <= truncation {
                        let zm = ZMono { x: px, z: k };
                        ch.add_term(
                            km(place(&units, slot, point_factor(d, j, zm)), tx),
                            &c / Coeff::from_integer(fact.clone()),
                        );
                        k += 1;
                        fact *= k;
                    }
                }
            }
            let ch = KunnethClass::new(units, ch, truncation);
            SheafClass::from_chern_character(&ch)
        }
    }
}
