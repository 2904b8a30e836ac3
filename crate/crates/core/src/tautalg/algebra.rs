//! Sparse linear combinations over graded, supercommutative monomial bases.
//!
//! Every algebra in this crate has a basis closed under multiplication up to
//! sign: the product of two basis monomials is zero or `±` another basis
//! monomial. [`Monomial`] captures such a basis and [`Poly`] the exact
//! rational linear combinations over it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ktheory::CurveModel;

pub type Coeff = BigRational;

/// `a * b`, skipping the gcd when both are integers.
pub(crate) fn coeff_mul(a: &Coeff, b: &Coeff) -> Coeff {
    if a.is_integer() && b.is_integer() {
        Coeff::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

/// `*a += b`, skipping the gcd when both are integers.
fn coeff_add_assign(a: &mut Coeff, b: Coeff) {
    if a.is_integer() && b.is_integer() {
        *a = Coeff::from_integer(a.numer() + b.numer());
    } else {
        *a += b;
    }
}

/// A graded basis element of a supercommutative algebra.
pub trait Monomial: Clone + Ord + fmt::Debug {
    fn degree(&self) -> u32;

    /// Product of two basis elements: `None` if it vanishes, otherwise
    /// `(negative, product)`.
    fn mul(&self, rhs: &Self) -> Option<(bool, Self)>;

    /// Grading used for truncation. Additive under multiplication.
    fn weight(&self) -> u32 {
        self.degree()
    }

    fn is_odd(&self) -> bool {
        self.degree() % 2 == 1
    }
}

/// Human-readable rendering that depends on the curve (basis labels of
/// `H¹(X)` carry absolute indices `1..=2g`).
pub trait Render {
    fn render(&self, curve: &CurveModel) -> String;

    /// Whether this is the unit monomial (printed without a coefficient separator).
    fn is_unit(&self) -> bool;
}

/// A finite `Q`-linear combination of monomials. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<M: Ord> {
    terms: BTreeMap<M, Coeff>,
}

impl<M: Ord> Default for Poly<M> {
    fn default() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }
}

impl<M: Ord + fmt::Debug> fmt::Debug for Poly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(m, c)| (m, c.to_string())))
            .finish()
    }
}

impl<M: Ord + Clone> Poly<M> {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn monomial(m: M) -> Self {
        Poly::term(m, Coeff::one())
    }

    pub fn term(m: M, c: Coeff) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&M, &Coeff)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (M, Coeff)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &M) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn add_term(&mut self, m: M, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                coeff_add_assign(e.get_mut(), c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), coeff_mul(x, c)))
                .collect(),
        }
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&M) -> bool) {
        self.terms.retain(|m, _| keep(m));
    }

    pub fn filter(&self, mut keep: impl FnMut(&M) -> bool) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Applies a sign-aware relabeling `m ↦ ±m'` (or drops the term).
    pub fn map_monomials<N: Ord + Clone>(
        &self,
        mut f: impl FnMut(&M) -> Option<(bool, N)>,
    ) -> Poly<N> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if let Some((neg, n)) = f(m) {
                out.add_term(n, if neg { -c.clone() } else { c.clone() });
            }
        }
        out
    }
}

impl<M: Monomial> Poly<M> {
    /// `c · unit`.
    pub fn scalar(c: Coeff, unit: &M) -> Self {
        Poly::term(unit.clone(), c)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::weight).max()
    }

    pub fn homogeneous(&self, degree: u32) -> Self {
        self.filter(|m| m.degree() == degree)
    }

    /// Drops all terms of weight above `max`.
    pub fn truncated(&self, max: u32) -> Self {
        self.filter(|m| m.weight() <= max)
    }

    /// Product keeping only terms of weight `<= max`.
    pub fn mul_truncated(&self, rhs: &Self, max: u32) -> Self {
        let mut out = Poly::zero();
        for (a, ca) in &self.terms {
            let wa = a.weight();
            if wa > max {
                continue;
            }
            for (b, cb) in &rhs.terms {
                if wa + b.weight() > max {
                    continue;
                }
                if let Some((neg, m)) = a.mul(b) {
                    let c = coeff_mul(ca, cb);
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    pub fn pow_truncated(&self, exp: u32, unit: &M, max: u32) -> Self {
        let mut acc = Poly::monomial(unit.clone());
        for _ in 0..exp {
            acc = acc.mul_truncated(self, max);
        }
        acc
    }
}

impl<M: Monomial> Mul for &Poly<M> {
    type Output = Poly<M>;
    fn mul(self, rhs: &Poly<M>) -> Poly<M> {
        self.mul_truncated(rhs, u32::MAX)
    }
}

impl<M: Ord + Clone> AddAssign<&Poly<M>> for Poly<M> {
    fn add_assign(&mut self, rhs: &Poly<M>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<M: Ord + Clone> Add for &Poly<M> {
    type Output = Poly<M>;
    fn add(self, rhs: &Poly<M>) -> Poly<M> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<M: Ord + Clone> Add for Poly<M> {
    type Output = Poly<M>;
    fn add(mut self, rhs: Poly<M>) -> Poly<M> {
        self += &rhs;
        self
    }
}

impl<M: Ord + Clone> Neg for &Poly<M> {
    type Output = Poly<M>;
    fn neg(self) -> Poly<M> {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<M: Ord + Clone> Sub for &Poly<M> {
    type Output = Poly<M>;
    fn sub(self, rhs: &Poly<M>) -> Poly<M> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<M: Ord + Clone> Sub for Poly<M> {
    type Output = Poly<M>;
    fn sub(self, rhs: Poly<M>) -> Poly<M> {
        &self - &rhs
    }
}

/// Formats an exact rational as `p` or `p/q`.
pub fn format_coeff(c: &Coeff) -> String {
    c.to_string()
}

impl<M: Ord + Clone + Render> Poly<M> {
    /// Renders as a sum like `3/2*c(1,1)*c(2,w) - c(1,p1)`; `0` when empty.
    pub fn render(&self, curve: &CurveModel) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c < &Coeff::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if m.is_unit() {
                out.push_str(&format_coeff(&abs));
            } else if abs.is_one() {
                out.push_str(&m.render(curve));
            } else {
                out.push_str(&format!("{}*{}", format_coeff(&abs), m.render(curve)));
            }
        }
        out
    }

    /// Sorted `[monomial, coefficient]` pairs.
    pub fn to_json(&self, curve: &CurveModel) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| serde_json::json!([m.render(curve), format_coeff(c)]))
                .collect(),
        )
    }
}

/// A row-echelon basis of a subspace of `Poly<M>`, grown one vector at a time.
#[derive(Clone, Debug)]
pub struct EchelonBasis<M: Ord> {
    /// Rows keyed by their smallest monomial, which has coefficient one.
    rows: BTreeMap<M, Poly<M>>,
    /// Inserted vectors that were independent, in insertion order.
    independent: Vec<Poly<M>>,
}

impl<M: Ord + Clone> Default for EchelonBasis<M> {
    fn default() -> Self {
        EchelonBasis {
            rows: BTreeMap::new(),
            independent: Vec::new(),
        }
    }
}

impl<M: Ord + Clone> EchelonBasis<M> {
    pub fn new() -> Self {
        Self::default()
    }

    fn reduce(&self, v: &Poly<M>) -> Poly<M> {
        let mut v = v.clone();
        loop {
            let hit = v
                .terms
                .iter()
                .find(|(m, _)| self.rows.contains_key(*m))
                .map(|(m, c)| (m.clone(), c.clone()));
            match hit {
                Some((m, c)) => v = &v - &self.rows[&m].scale(&c),
                None => return v,
            }
        }
    }

    /// Adds `v`; returns `false` if it was already in the span.
    pub fn insert(&mut self, v: &Poly<M>) -> bool {
        let r = self.reduce(v);
        let Some((lead, c)) = r.terms.iter().next().map(|(m, c)| (m.clone(), c.clone())) else {
            return false;
        };
        let r = r.scale(&(Coeff::one() / c));
        // keep rows reduced against the new pivot
        for row in self.rows.values_mut() {
            let c = row.coeff(&lead);
            if !c.is_zero() {
                *row = &*row - &r.scale(&c);
            }
        }
        self.rows.insert(lead, r);
        self.independent.push(v.clone());
        true
    }

    pub fn contains(&self, v: &Poly<M>) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The independent vectors in insertion order.
    pub fn independent(&self) -> &[Poly<M>] {
        &self.independent
    }
}

/// `a_0 ⊗ a_1 ⊗ … ⊗ a_{n-1}` in a tensor power, multiplied with the Koszul rule
/// `(a ⊗ b)(a' ⊗ b') = (-1)^{|b||a'|} aa' ⊗ bb'`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TensorMono<M>(pub Vec<M>);

impl<M: Monomial> TensorMono<M> {
    pub fn slots(&self) -> &[M] {
        &self.0
    }
}

impl<M: Monomial> Monomial for TensorMono<M> {
    fn degree(&self) -> u32 {
        self.0.iter().map(Monomial::degree).sum()
    }

    fn weight(&self) -> u32 {
        self.0.iter().map(Monomial::weight).sum()
    }

    fn mul(&self, rhs: &Self) -> Option<(bool, Self)> {
        assert_eq!(self.0.len(), rhs.0.len(), "tensor slot count mismatch");
        let mut negative = false;
        // Moving rhs slot j leftwards past lhs slots j+1..n.
        let mut odd_after = 0usize;
        for j in (0..self.0.len()).rev() {
            if rhs.0[j].is_odd() && odd_after % 2 == 1 {
                negative ^= true;
            }
            if self.0[j].is_odd() {
                odd_after += 1;
            }
        }
        let mut slots = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&rhs.0) {
            let (neg, m) = a.mul(b)?;
            negative ^= neg;
            slots.push(m);
        }
        Some((negative, TensorMono(slots)))
    }
}

impl<M: Render> Render for TensorMono<M> {
    fn render(&self, curve: &CurveModel) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|m| m.render(curve))
            .collect::<Vec<_>>()
            .join(" ⊗ ")
    }

    fn is_unit(&self) -> bool {
        self.0.iter().all(Render::is_unit)
    }
}

/// Koszul sign of reordering a sequence of homogeneous elements by `order`
/// (`order[k]` is the source index placed at position `k`).
pub fn koszul_sign(parities: &[bool], order: &[usize]) -> bool {
    let mut negative = false;
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if order[a] > order[b] && parities[order[a]] && parities[order[b]] {
                negative ^= true;
            }
        }
    }
    negative
}
