//! A finite check of generation at the associated-graded level.
//!
//! The products `P_s ∩ [Λ_(γ_s)] ⋆ ⋯ ⋆ P_1 ∩ [Λ_(γ_1)]` restrict to `Λ_t` as
//! `P_s(c(𝔈_s)) ⋯ P_1(c(𝔈_1))`, so the leading terms they reach on `Λ_t` span
//! the subalgebra generated by the tautological classes of the row sheaves.
//! Degree by degree its dimension is compared with the Poincaré series of
//! `⊗_i H*(Coh_{α_i})`.

use num_traits::ToPrimitive;

use crate::error::Result;
use crate::jordan::JordanType;
use crate::ktheory::CurveModel;
use crate::tautalg::{EchelonBasis, Gen, Poly};

use super::series::stratum_series;
use super::slots::{slot_units, SlotKind, StratumMono};
use super::stratum::strata_sheaf_classes;

/// Reached and expected dimensions in one cohomological degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCount {
    pub degree: u32,
    pub reached: usize,
    pub expected: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationReport {
    pub jordan: JordanType,
    pub degrees: Vec<DegreeCount>,
}

impl GenerationReport {
    pub fn is_complete(&self) -> bool {
        self.degrees.iter().all(|d| d.reached == d.expected)
    }
}

/// For each degree `k <= max_degree`, the dimension of the span of the
/// leading terms `P_s(c(𝔈_s)) ⋯ P_1(c(𝔈_1))` on `Λ_t` against the dimension of
/// the degree-`k` part of `H*(Λ_t)`.
pub fn generation_shadow(
    t: &JordanType,
    curve: &CurveModel,
    max_degree: u32,
) -> Result<GenerationReport> {
    let rows = strata_sheaf_classes(t, curve, max_degree)?;
    let mut images: Vec<Poly<StratumMono>> = Vec::new();
    for row in &rows {
        for g in Gen::all(curve, max_degree) {
            let img = row.chern.component(g.x, 2 * g.i);
            if !img.is_zero() {
                images.push(img);
            }
        }
    }
    let kinds: Vec<SlotKind> = t
        .entries()
        .iter()
        .map(SlotKind::of)
        .collect::<Result<_>>()?;
    let expected = stratum_series(t, curve, max_degree)?;

    let mut bases: Vec<EchelonBasis<StratumMono>> = Vec::new();
    let mut unit = EchelonBasis::new();
    unit.insert(&Poly::monomial(slot_units(&kinds)));
    bases.push(unit);
    for k in 1..=max_degree {
        let mut basis = EchelonBasis::new();
        for img in &images {
            let j = img.max_degree().unwrap_or(0);
            if j == 0 || j > k {
                continue;
            }
            for b in bases[(k - j) as usize].independent() {
                basis.insert(&img.mul_truncated(b, max_degree));
            }
        }
        bases.push(basis);
    }
    let degrees = bases
        .iter()
        .enumerate()
        .map(|(k, b)| DegreeCount {
            degree: k as u32,
            reached: b.rank(),
            expected: expected
                .coeff(k as u32)
                .to_integer()
                .to_usize()
                .unwrap_or(usize::MAX),
        })
        .collect();
    Ok(GenerationReport {
        jordan: t.clone(),
        degrees,
    })
}
