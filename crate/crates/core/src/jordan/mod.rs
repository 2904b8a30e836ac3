//! Jordan types of nilpotent Higgs sheaves.
//!
//! A Jordan type `(α_1, …, α_s)` records the successive kernels of a
//! nilpotent Higgs field. Entry `α_j` sits in column `j` of a staircase
//! diagram; the box of row `i` in that column carries the twisted class
//! `α_j((i-j)ℓ)` where `ℓ = 2g-2`. Row `i` sums to the class of
//! `ker θ^i / ker θ^{i-1}`, and the bottom `k` rows sum to `[ker θ^k]`.

mod enumerate;
mod young;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ktheory::{euler_coh, CurveModel, NumClass};

pub use enumerate::{downset, enumerate_bounded, enumerate_rank0, Enumeration, EnumerationBounds};
pub use young::{render_young, render_young_symbolic, DiagramFormat};

/// A Jordan type `(α_1, …, α_s)` with `s >= 1`, every entry positive and
/// `α_s != 0`. Interior zero entries are allowed. The zero class has the
/// single type `((0,0))`: the zero sheaf has nilpotency index one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JordanType {
    entries: Vec<NumClass>,
}

impl JordanType {
    pub fn new(entries: Vec<NumClass>) -> Result<Self> {
        let Some(top) = entries.last() else {
            return Err(Error::InvalidJordanType(
                "a Jordan type has length >= 1".into(),
            ));
        };
        if top.is_zero() && entries.len() > 1 {
            return Err(Error::InvalidJordanType(format!(
                "top entry α_{} must be nonzero",
                entries.len()
            )));
        }
        if let Some((i, e)) = entries.iter().enumerate().find(|(_, e)| !e.is_positive()) {
            return Err(Error::InvalidJordanType(format!(
                "entry α_{} = {e} is not positive",
                i + 1
            )));
        }
        Ok(JordanType { entries })
    }

    /// The length-one type `(α)`, the zero section.
    pub fn zero_section(alpha: NumClass) -> Result<Self> {
        JordanType::new(vec![alpha])
    }

    pub fn entries(&self) -> &[NumClass] {
        &self.entries
    }

    /// The length `s`, which is also the nilpotency index.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Total class `Σ_i Σ_{k<i} α_i(-kℓ)`.
    pub fn total_class(&self, curve: &CurveModel) -> NumClass {
        self.row_classes(curve).rows.iter().sum()
    }

    /// Row classes `γ_i = Σ_{j>=i} α_j((i-j)ℓ)`, bottom row first.
    pub fn row_classes(&self, curve: &CurveModel) -> RowClasses {
        let ell = curve.canonical_degree();
        let s = self.entries.len();
        let rows = (1..=s)
            .map(|i| {
                (i..=s)
                    .map(|j| self.entries[j - 1].twist(&(BigInt::from(i as i64 - j as i64) * &ell)))
                    .sum()
            })
            .collect();
        RowClasses { rows }
    }

    /// Class of `ker θ^k`: the sum of the bottom `min(k, s)` rows.
    pub fn kernel_class(&self, k: usize, curve: &CurveModel) -> NumClass {
        self.row_classes(curve).rows.iter().take(k).sum()
    }

    /// Kernel classes for `k = 1..=upto`.
    fn kernel_sequence(&self, upto: usize, curve: &CurveModel) -> Vec<NumClass> {
        let rows = self.row_classes(curve).rows;
        let mut acc = NumClass::zero();
        (0..upto)
            .map(|k| {
                if let Some(r) = rows.get(k) {
                    acc = &acc + r;
                }
                acc.clone()
            })
            .collect()
    }

    /// The order on strata: `self ⪯ other` iff both have the same total
    /// class and `[ker θ^k]` of `other` is below that of `self` for all `k`.
    pub fn preceq(&self, other: &JordanType, curve: &CurveModel) -> bool {
        let upto = self.len().max(other.len());
        let mine = self.kernel_sequence(upto, curve);
        let theirs = other.kernel_sequence(upto, curve);
        mine.last() == theirs.last() && theirs.iter().zip(&mine).all(|(a, b)| a.leq(b))
    }

    /// Relative dimension of the iterated vector bundle stack morphism
    /// `Λ_t → Π_i Coh_{α_i}`: `-<α,α> + Σ_i <α_i,α_i>`.
    pub fn vb_stack_rank(&self, curve: &CurveModel) -> BigInt {
        let total = self.total_class(curve);
        let diag: BigInt = self.entries.iter().map(|a| euler_coh(a, a, curve)).sum();
        diag - euler_coh(&total, &total, curve)
    }
}

impl Ord for JordanType {
    fn cmp(&self, other: &Self) -> Ordering {
        self.entries
            .len()
            .cmp(&other.entries.len())
            .then_with(|| self.entries.cmp(&other.entries))
    }
}

impl PartialOrd for JordanType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| format!("{},{}", e.rank, e.degree))
            .collect();
        f.write_str(&parts.join(";"))
    }
}

/// Parses semicolon-separated class literals, e.g. `1,0;1,0`.
impl FromStr for JordanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        JordanType::new(parse_class_list(s)?)
    }
}

pub(crate) fn parse_class_list(s: &str) -> Result<Vec<NumClass>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// Row classes `(γ_1, …, γ_s)` of a Jordan type, bottom row first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowClasses {
    rows: Vec<NumClass>,
}

impl RowClasses {
    /// Wraps a raw sequence; validity is checked by [`RowClasses::to_type`].
    pub fn new(rows: Vec<NumClass>) -> Self {
        RowClasses { rows }
    }

    pub fn rows(&self) -> &[NumClass] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Inverts [`JordanType::row_classes`] by downward induction:
    /// `α_s = γ_s`, `α_i = γ_i - Σ_{j>i} α_j((i-j)ℓ)`.
    pub fn to_type(&self, curve: &CurveModel) -> Result<JordanType> {
        let s = self.rows.len();
        if s == 0 {
            return Err(Error::InvalidJordanType("no rows".into()));
        }
        let ell = curve.canonical_degree();
        let mut entries = vec![NumClass::zero(); s];
        for i in (1..=s).rev() {
            let above: NumClass = (i + 1..=s)
                .map(|j| entries[j - 1].twist(&(BigInt::from(i as i64 - j as i64) * &ell)))
                .sum();
            let entry = &self.rows[i - 1] - &above;
            if !entry.is_positive() || (i == s && s > 1 && entry.is_zero()) {
                return Err(Error::InvalidRows { index: i, entry });
            }
            entries[i - 1] = entry;
        }
        JordanType::new(entries)
    }

    /// `-2 Σ_{i≠j} <γ_i, γ_j>`, the relative dimension of the iterated
    /// convolution correspondence onto `Π_i Higgs_{γ_i}`.
    pub fn dim_q_correspondence(&self, curve: &CurveModel) -> BigInt {
        let mut sum = BigInt::from(0);
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in self.rows.iter().enumerate() {
                if i != j {
                    sum += euler_coh(a, b, curve);
                }
            }
        }
        BigInt::from(-2) * sum
    }
}

impl FromStr for RowClasses {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(RowClasses::new(parse_class_list(s)?))
    }
}
