//! Poincaré series of strata and of down-sets in the `⪯` order.

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::jordan::{downset, Enumeration, JordanType};
use crate::ktheory::CurveModel;
use crate::tautalg::{poincare_coh_positive_rank, poincare_coh_torsion, QSeries};

/// `Π_i P_{Coh_{α_i}}(q)`: the Poincaré series of `H*(Λ_t)`, since `Λ_t` is an
/// iterated vector bundle stack over `Π_i Coh_{α_i}`.
pub fn stratum_series(t: &JordanType, curve: &CurveModel, order: u32) -> Result<QSeries> {
    let positive = poincare_coh_positive_rank(curve, order);
    t.entries().iter().try_fold(QSeries::one(order), |acc, a| {
        let factor = if a.rank > Zero::zero() {
            positive.clone()
        } else {
            let d = a
                .degree
                .to_u32()
                .ok_or_else(|| Error::BoundTooLarge(a.degree.clone()))?;
            poincare_coh_torsion(curve, d, order)
        };
        Ok(acc.mul(&factor))
    })
}

/// `Σ_{b ⪯ a} stratum_series(b)`: the associated graded of `H_*(Λ_{⪯a})`,
/// with `q^j` counting Borel–Moore degree `2 dim Λ - j` (all strata have the
/// same dimension). Exact for torsion classes; otherwise over the bounded
/// down-set, whose bounds are returned alongside.
pub fn downset_series(
    a: &JordanType,
    degree_window: u64,
    curve: &CurveModel,
    order: u32,
) -> Result<(QSeries, Enumeration)> {
    let strata = downset(a, degree_window, curve)?;
    let series = strata
        .types
        .iter()
        .try_fold(QSeries::zero(order), |acc, b| {
            Ok::<_, Error>(acc.add(&stratum_series(b, curve, order)?))
        })?;
    Ok((series, strata))
}
