//! Enumeration of Jordan types and down-sets.
//!
//! For torsion classes `(0, d)` the set of Jordan types is finite and in
//! bijection with partitions of `d`. For positive rank it is countably
//! infinite, so enumeration takes explicit bounds: a maximal length and a
//! window `|d_i| <= w` on the degrees of the entries `α_2, …, α_s`. The
//! bottom entry `α_1` is then determined by the class (its degree enters
//! the total with coefficient one), so each bounded slice is finite.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::JordanType;
use crate::error::{Error, Result};
use crate::ktheory::{CurveModel, NumClass};

/// Bounds used for a bounded enumeration, reported alongside its results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub max_len: usize,
    pub degree_window: u64,
}

/// Output of a bounded enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// Types in canonical order.
    pub types: Vec<JordanType>,
    pub bounds: EnumerationBounds,
    /// True when the result is the complete set regardless of the window
    /// (torsion classes).
    pub exact: bool,
}

/// All Jordan types of class `(0, d)`, in canonical order.
///
/// Entry `α_i = (0, d_i)` where `d_i` is the number of parts equal to `i`
/// in a partition of `d`. The empty partition of `0` gives `((0,0))`.
pub fn enumerate_rank0(d: u64) -> Vec<JordanType> {
    let mut out = Vec::new();
    let mut parts = Vec::new();
    partitions(d, d, &mut parts, &mut |p| {
        let s = p.first().map_or(1, |&m| m as usize);
        let mut entries = vec![NumClass::zero(); s];
        for &part in p {
            entries[part as usize - 1].degree += 1;
        }
        out.push(JordanType { entries });
    });
    out.sort();
    out
}

fn partitions(rest: u64, max_part: u64, acc: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
    if rest == 0 {
        f(acc);
        return;
    }
    for part in (1..=max_part.min(rest)).rev() {
        acc.push(part);
        partitions(rest - part, part, acc, f);
        acc.pop();
    }
}

/// Jordan types of class `alpha` within `bounds`, in canonical order.
///
/// For torsion classes the window is ignored and the result is exact.
pub fn enumerate_bounded(
    alpha: &NumClass,
    bounds: EnumerationBounds,
    curve: &CurveModel,
) -> Result<Enumeration> {
    if !alpha.is_positive() {
        return Err(Error::NotPositive(alpha.clone()));
    }
    if alpha.rank.is_zero() {
        let d = alpha
            .degree
            .to_u64()
            .ok_or_else(|| Error::BoundTooLarge(alpha.degree.clone()))?;
        let types = enumerate_rank0(d)
            .into_iter()
            .filter(|t| t.len() <= bounds.max_len)
            .collect();
        return Ok(Enumeration {
            types,
            bounds,
            exact: true,
        });
    }

    let rank = alpha
        .rank
        .to_usize()
        .ok_or_else(|| Error::BoundTooLarge(alpha.rank.clone()))?;
    let ell = curve.canonical_degree();
    let window = BigInt::from(bounds.degree_window);
    let mut types = Vec::new();

    for s in 1..=bounds.max_len {
        let mut ranks = vec![0usize; s];
        rank_vectors(rank, s, &mut ranks, &mut |ranks| {
            // Σ_i (i d_i - ℓ r_i i(i-1)/2) = deg α, solved for d_1.
            let twist_shift: BigInt = ranks
                .iter()
                .enumerate()
                .map(|(idx, &r)| {
                    let i = idx as i64 + 1;
                    BigInt::from(r as i64 * i * (i - 1) / 2)
                })
                .sum::<BigInt>()
                * &ell;
            let mut degrees = vec![BigInt::zero(); s];
            upper_degrees(ranks, 1, &window, &mut degrees, &mut |degrees| {
                let weighted: BigInt = degrees
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(idx, d)| d * (idx as i64 + 1))
                    .sum();
                let d1 = &alpha.degree - weighted + &twist_shift;
                let mut entries: Vec<NumClass> = ranks
                    .iter()
                    .zip(degrees.iter())
                    .map(|(&r, d)| NumClass::new(r as i64, d.clone()))
                    .collect();
                entries[0].degree = d1;
                if let Ok(t) = JordanType::new(entries) {
                    types.push(t);
                }
            });
        });
    }
    types.sort();
    debug_assert!(types.iter().all(|t| &t.total_class(curve) == alpha));
    Ok(Enumeration {
        types,
        bounds,
        exact: false,
    })
}

/// Rank vectors `(r_1, …, r_s)` with `Σ i r_i = rank`.
fn rank_vectors(rest: usize, i: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if i == 0 {
        if rest == 0 {
            f(acc);
        }
        return;
    }
    for r in 0..=rest / i {
        acc[i - 1] = r;
        rank_vectors(rest - r * i, i - 1, acc, f);
    }
    acc[i - 1] = 0;
}

/// Degrees of entries `2..=s` within the window; torsion entries need `d >= 0`.
fn upper_degrees(
    ranks: &[usize],
    idx: usize,
    window: &BigInt,
    acc: &mut Vec<BigInt>,
    f: &mut impl FnMut(&[BigInt]),
) {
    if idx == ranks.len() {
        f(acc);
        return;
    }
    let lo = if ranks[idx] == 0 {
        BigInt::zero()
    } else {
        -window.clone()
    };
    let mut d = lo;
    while &d <= window {
        acc[idx] = d.clone();
        upper_degrees(ranks, idx + 1, window, acc, f);
        d += 1;
    }
}

/// All `b ⪯ a`, in canonical order.
///
/// For torsion classes the result is exact. For positive rank the down-set
/// is infinite in general; candidates come from [`enumerate_bounded`] with
/// `max_len = len(a)` (since `b ⪯ a` forces `len(b) <= len(a)`) and the
/// given window.
pub fn downset(a: &JordanType, degree_window: u64, curve: &CurveModel) -> Result<Enumeration> {
    let bounds = EnumerationBounds {
        max_len: a.len(),
        degree_window,
    };
    let mut all = enumerate_bounded(&a.total_class(curve), bounds, curve)?;
    all.types.retain(|b| b.preceq(a, curve));
    Ok(all)
}
