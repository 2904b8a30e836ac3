//! The associated graded of the nilpotent cohomological Hall algebra.
//!
//! The nilpotent cone is stratified by Jordan type and the stratum `Λ_t`
//! contributes `⊗_i H*(Coh_{α_i})`. This module computes leading terms of
//! products of fundamental classes, the `ℍ`-action, and stratum series.

mod generation;
mod series;
mod slots;
mod stratum;

pub use generation::{generation_shadow, DegreeCount, GenerationReport};
pub use series::{downset_series, stratum_series};
pub use slots::{entry_sheaf, slot_units, SlotKind, SlotMono, StratumMono, ZMono};
pub use stratum::{
    entry_from_rows, entry_sheaf_classes, fundamental_class, hmodule_act, leading_product,
    leading_product_tensor, restricted_tautological_class, strata_sheaf_classes, GenClass,
    StratumClass, LEADING_TERM_TAG,
};
