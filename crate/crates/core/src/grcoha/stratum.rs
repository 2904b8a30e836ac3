//! Leading terms of products of fundamental classes and the `ℍ`-action.
//!
//! On a stratum `Λ_t`, `t = (α_1, …, α_s)`, the kernel filtration of the Higgs
//! field has graded pieces `𝔈_i = ker θ^i / ker θ^{i-1}` of class `γ_i`, and
//! `[𝔈_i] = Σ_{j>=i} [𝔈_{α_j} ⊗ ω^{i-j}]`. A product
//! `P_s ∩ [Λ_(γ_s)] ⋆ ⋯ ⋆ P_1 ∩ [Λ_(γ_1)]` restricts to `Λ_t` as
//! `P_s(c(𝔈_s)) ⋯ P_1(c(𝔈_1)) ∩ [Λ_t]` modulo classes supported on strictly
//! smaller strata.

use std::cell::OnceCell;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::jordan::{JordanType, RowClasses};
use crate::ktheory::{dim_coh, CurveModel, NumClass};
use crate::tautalg::{
    embed, hpoly_one, iterated_coproduct, k_difference, substitute, substitute_tensor, twist_class,
    Gen, HPoly, Monomial, Poly, SheafClass, TensorMono, TensorPoly,
};

use super::slots::{entry_sheaf, slot_units, SlotKind, StratumMono};

/// A class `P ∩ [Λ_(α)]` on the zero-section stratum of class `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenClass {
    pub alpha: NumClass,
    pub poly: HPoly,
}

impl GenClass {
    pub fn new(alpha: NumClass, poly: HPoly) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::NotPositive(alpha));
        }
        Ok(GenClass { alpha, poly })
    }
}

/// The fundamental class `[Λ_(α)]`.
pub fn fundamental_class(alpha: &NumClass) -> Result<GenClass> {
    GenClass::new(alpha.clone(), hpoly_one())
}

/// Marker attached to every product result.
pub const LEADING_TERM_TAG: &str = "leading term modulo lower strata";

/// A class `payload ∩ [Λ_t]` in the associated graded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumClass {
    jordan: JordanType,
    kinds: Vec<SlotKind>,
    payload: Poly<StratumMono>,
    truncation: u32,
}

impl StratumClass {
    /// `[Λ_t]` itself.
    pub fn fundamental(t: &JordanType, truncation: u32) -> Result<Self> {
        let kinds = slot_kinds(t)?;
        let payload = Poly::monomial(slot_units(&kinds));
        Ok(StratumClass {
            jordan: t.clone(),
            kinds,
            payload,
            truncation,
        })
    }

    pub fn jordan_type(&self) -> &JordanType {
        &self.jordan
    }

    pub fn kinds(&self) -> &[SlotKind] {
        &self.kinds
    }

    pub fn payload(&self) -> &Poly<StratumMono> {
        &self.payload
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// The coefficient of `[Λ_t]` (the unit payload).
    pub fn fundamental_coefficient(&self) -> crate::tautalg::Coeff {
        self.payload.coeff(&slot_units(&self.kinds))
    }

    /// `dim Λ_t = Σ_i dim Coh_{α_i} + rank of the vector bundle stack`,
    /// which equals `-<α,α>` for every stratum.
    pub fn dimension(&self, curve: &CurveModel) -> BigInt {
        self.jordan
            .entries()
            .iter()
            .map(|a| dim_coh(a, curve))
            .sum::<BigInt>()
            + self.jordan.vb_stack_rank(curve)
    }

    /// Borel–Moore degree of `[Λ_t]`; a payload of degree `k` lowers it by `k`.
    pub fn bm_top_degree(&self, curve: &CurveModel) -> BigInt {
        self.dimension(curve) * 2
    }

    pub fn render(&self, curve: &CurveModel) -> String {
        format!("({}) ∩ [Λ_{}]", self.payload.render(curve), self.jordan)
    }

    pub fn to_json(&self, curve: &CurveModel) -> serde_json::Value {
        serde_json::json!({
            "jordan_type": self.jordan.to_string(),
            "slots": self.kinds.iter().map(SlotKind::label).collect::<Vec<_>>(),
            "payload": self.payload.to_json(curve),
            "truncation": self.truncation,
            "bm_top_degree": self.bm_top_degree(curve).to_string(),
            "tag": LEADING_TERM_TAG,
        })
    }
}

fn slot_kinds(t: &JordanType) -> Result<Vec<SlotKind>> {
    t.entries().iter().map(SlotKind::of).collect()
}

/// Chern data of the universal sheaves `𝔈_{α_1}, …, 𝔈_{α_s}` on `Λ_t`.
pub fn entry_sheaf_classes(
    t: &JordanType,
    curve: &CurveModel,
    truncation: u32,
) -> Result<Vec<SheafClass<StratumMono>>> {
    let kinds = slot_kinds(t)?;
    t.entries()
        .iter()
        .enumerate()
        .map(|(k, a)| entry_sheaf(&kinds, k, a, curve, truncation))
        .collect()
}

/// Chern data of the row sheaves `𝔈_1, …, 𝔈_s` on `Λ_t`:
/// `c(𝔈_i) = Π_{j>=i} c(𝔈_{α_j} ⊗ ω^{i-j})`.
pub fn strata_sheaf_classes(
    t: &JordanType,
    curve: &CurveModel,
    truncation: u32,
) -> Result<Vec<SheafClass<StratumMono>>> {
    let entries = entry_sheaf_classes(t, curve, truncation)?;
    let ell = curve.canonical_degree();
    let s = entries.len();
    let units = slot_units(&slot_kinds(t)?);
    (1..=s)
        .map(|i| {
            let mut acc = SheafClass::zero(units.clone(), truncation);
            for j in i..=s {
                let shift = BigInt::from(i as i64 - j as i64) * &ell;
                acc = acc.direct_sum(&twist_class(&entries[j - 1], &shift)?);
            }
            Ok(acc)
        })
        .collect()
}

/// Recovers `𝔈_{α_i}` from the row sheaves through
/// `[𝔈_{α_i}] = [𝔈_i] - [𝔈_{i+1} ⊗ ω^{-1}]` (1-based `i`).
pub fn entry_from_rows(
    rows: &[SheafClass<StratumMono>],
    i: usize,
    curve: &CurveModel,
) -> Result<SheafClass<StratumMono>> {
    let row = &rows[i - 1];
    match rows.get(i) {
        None => Ok(row.clone()),
        Some(next) => k_difference(row, &twist_class(next, &-curve.canonical_degree())?),
    }
}

/// The algebra map `ρ: ℍ^{⊗s} → ⊗_i H*(Coh_{α_i})` sending tensor slot
/// `i - 1` to the tautological classes of the row sheaf `𝔈_i`, so that
/// `ρ(P_1 ⊗ ⋯ ⊗ P_s) = P_1(c(𝔈_1)) ⋯ P_s(c(𝔈_s))`. Row sheaves are built on
/// first use.
struct RowSubstitution<'a> {
    jordan: &'a JordanType,
    curve: &'a CurveModel,
    rows: OnceCell<Vec<SheafClass<StratumMono>>>,
    unit: StratumMono,
    truncation: u32,
}

impl<'a> RowSubstitution<'a> {
    fn new(t: &'a JordanType, curve: &'a CurveModel, truncation: u32) -> Result<Self> {
        Ok(RowSubstitution {
            jordan: t,
            curve,
            rows: OnceCell::new(),
            unit: slot_units(&slot_kinds(t)?),
            truncation,
        })
    }

    fn image(&self, row: usize, g: &Gen) -> Result<Poly<StratumMono>> {
        let rows = match self.rows.get() {
            Some(rows) => rows,
            None => {
                let rows = strata_sheaf_classes(self.jordan, self.curve, self.truncation)?;
                self.rows.get_or_init(|| rows)
            }
        };
        Ok(rows[row].chern.component(g.x, 2 * g.i))
    }

    fn apply(&self, p: &TensorPoly) -> Result<Poly<StratumMono>> {
        substitute_tensor(p, &self.unit, self.truncation, |&(row, g)| {
            self.image(row, &g)
        })
    }
}

fn check_degree<M: Monomial>(p: &Poly<M>, truncation: u32) -> Result<()> {
    match p.max_degree() {
        Some(d) if d > truncation => Err(Error::DegreeOverflow {
            degree: d,
            max: truncation,
        }),
        _ => Ok(()),
    }
}

/// Leading term of `[Λ_(γ_s)] ⋆ ⋯ ⋆ [Λ_(γ_1)]` capped with `ρ(x)`, for row
/// classes `rows = (γ_1, …, γ_s)` and `x ∈ ℍ^{⊗s}` with slot `i - 1` carrying
/// the polynomial of `γ_i`.
pub fn leading_product_tensor(
    rows: &[NumClass],
    payload: &TensorPoly,
    curve: &CurveModel,
    truncation: u32,
) -> Result<StratumClass> {
    check_degree(payload, truncation)?;
    let t = RowClasses::new(rows.to_vec()).to_type(curve)?;
    let payload = RowSubstitution::new(&t, curve, truncation)?.apply(payload)?;
    Ok(StratumClass {
        payload,
        kinds: slot_kinds(&t)?,
        jordan: t,
        truncation,
    })
}

/// Leading term of `P_s ∩ [Λ_(γ_s)] ⋆ ⋯ ⋆ P_1 ∩ [Λ_(γ_1)]`, with factors
/// given in product order (`γ_s` first). The payload is
/// `P_1(c(𝔈_1)) ⋯ P_s(c(𝔈_s))`.
pub fn leading_product(
    factors: &[GenClass],
    curve: &CurveModel,
    truncation: u32,
) -> Result<StratumClass> {
    let s = factors.len();
    let rows: Vec<NumClass> = factors.iter().rev().map(|f| f.alpha.clone()).collect();
    let payload = factors.iter().rev().enumerate().fold(
        Poly::monomial(TensorMono(vec![crate::tautalg::HMono::one(); s])),
        |acc, (i, f)| acc.mul_truncated(&embed(&f.poly, i, s), truncation),
    );
    leading_product_tensor(&rows, &payload, curve, truncation)
}

/// `h · x`: the iterated coproduct of `h` for the row classes `(γ_1, …, γ_s)`,
/// pushed through `ρ` and multiplied into the payload.
pub fn hmodule_act(h: &HPoly, x: &StratumClass, curve: &CurveModel) -> Result<StratumClass> {
    let truncation = x.truncation;
    check_degree(h, truncation)?;
    let rows = x.jordan.row_classes(curve);
    let delta = iterated_coproduct(h, rows.rows(), curve, truncation)?;
    let rho = RowSubstitution::new(&x.jordan, curve, truncation)?;
    let acting = rho.apply(&delta)?;
    Ok(StratumClass {
        payload: acting.mul_truncated(&x.payload, truncation),
        ..x.clone()
    })
}

/// `h(c(𝔈_α|_{Λ_t}))` computed directly from `c(⊕_i 𝔈_i)`, without the coproduct.
pub fn restricted_tautological_class(
    h: &HPoly,
    t: &JordanType,
    curve: &CurveModel,
    truncation: u32,
) -> Result<Poly<StratumMono>> {
    check_degree(h, truncation)?;
    let rows = strata_sheaf_classes(t, curve, truncation)?;
    let unit = slot_units(&slot_kinds(t)?);
    let total = rows
        .iter()
        .fold(SheafClass::zero(unit.clone(), truncation), |acc, r| {
            acc.direct_sum(r)
        });
    substitute(h, &unit, truncation, |g| {
        Ok(total.chern.component(g.x, 2 * g.i))
    })
}
