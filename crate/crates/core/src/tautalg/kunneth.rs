//! Künneth decompositions and Chern calculus on `A ⊗ H*(X)`.
//!
//! A class on `M × X` is a sum of terms `a ⊠ π` with `a` in a coefficient
//! algebra `A` and `π ∈ Π`. Multiplication follows
//! `(a ⊠ π)(b ⊠ σ) = (-1)^{|π||b|} ab ⊠ πσ`. Truncation order `N` bounds the
//! degree on the coefficient side, so a component `c_{i,π}` survives iff
//! `2i - deg π <= N`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ktheory::{CurveModel, NumClass};

use super::algebra::{Coeff, Monomial, Poly, Render, TensorMono};
use super::hpoly::{Gen, HMono};
use super::xcoh::XBasis;

/// A basis term `a ⊠ π`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct KunnethMono<M> {
    pub coeff: M,
    pub x: XBasis,
}

impl<M: Monomial> Monomial for KunnethMono<M> {
    fn degree(&self) -> u32 {
        self.coeff.degree() + self.x.degree()
    }

    fn weight(&self) -> u32 {
        self.coeff.weight()
    }

    fn mul(&self, rhs: &Self) -> Option<(bool, Self)> {
        let swap = self.x.is_odd() && rhs.coeff.is_odd();
        let (n1, coeff) = self.coeff.mul(&rhs.coeff)?;
        let (n2, x) = self.x.mul(&rhs.x)?;
        Some((swap ^ n1 ^ n2, KunnethMono { coeff, x }))
    }
}

impl<M: Render> Render for KunnethMono<M> {
    fn render(&self, curve: &CurveModel) -> String {
        format!("{} ⊠ {}", self.coeff.render(curve), self.x.label(curve))
    }

    fn is_unit(&self) -> bool {
        self.coeff.is_unit() && self.x == XBasis::One
    }
}

/// An element of `A ⊗ H*(X)`, truncated at coefficient degree `truncation`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KunnethClass<M: Monomial> {
    unit: M,
    poly: Poly<KunnethMono<M>>,
    truncation: u32,
}

impl<M: Monomial> KunnethClass<M> {
    pub fn new(unit: M, poly: Poly<KunnethMono<M>>, truncation: u32) -> Self {
        KunnethClass {
            unit,
            poly: poly.truncated(truncation),
            truncation,
        }
    }

    pub fn one(unit: M, truncation: u32) -> Self {
        let poly = Poly::monomial(KunnethMono {
            coeff: unit.clone(),
            x: XBasis::One,
        });
        KunnethClass::new(unit, poly, truncation)
    }

    pub fn zero(unit: M, truncation: u32) -> Self {
        KunnethClass::new(unit, Poly::zero(), truncation)
    }

    /// `c · (1 ⊠ x)`.
    pub fn scalar_times(unit: M, c: Coeff, x: XBasis, truncation: u32) -> Self {
        let poly = Poly::term(
            KunnethMono {
                coeff: unit.clone(),
                x,
            },
            c,
        );
        KunnethClass::new(unit, poly, truncation)
    }

    /// `p ⊠ x`.
    pub fn tensor(unit: M, p: &Poly<M>, x: XBasis, truncation: u32) -> Self {
        let poly = p.map_monomials(|m| {
            Some((
                false,
                KunnethMono {
                    coeff: m.clone(),
                    x,
                },
            ))
        });
        KunnethClass::new(unit, poly, truncation)
    }

    pub fn unit(&self) -> &M {
        &self.unit
    }

    pub fn poly(&self) -> &Poly<KunnethMono<M>> {
        &self.poly
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    fn unit_term(&self) -> KunnethMono<M> {
        KunnethMono {
            coeff: self.unit.clone(),
            x: XBasis::One,
        }
    }

    /// The scalar coefficient of `1 ⊠ 1`.
    pub fn constant(&self) -> Coeff {
        self.poly.coeff(&self.unit_term())
    }

    /// The scalar coefficient of `1 ⊠ ϖ`.
    pub fn point_scalar(&self) -> Coeff {
        self.poly.coeff(&KunnethMono {
            coeff: self.unit.clone(),
            x: XBasis::Point,
        })
    }

    pub fn is_unipotent(&self) -> bool {
        self.constant().is_one()
    }

    /// Restricts to a coarser truncation order.
    pub fn truncate(&self, truncation: u32) -> Self {
        let t = truncation.min(self.truncation);
        KunnethClass::new(self.unit.clone(), self.poly.clone(), t)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let t = self.truncation.min(rhs.truncation);
        KunnethClass::new(self.unit.clone(), &self.poly + &rhs.poly, t)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let t = self.truncation.min(rhs.truncation);
        KunnethClass::new(self.unit.clone(), &self.poly - &rhs.poly, t)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        KunnethClass::new(self.unit.clone(), self.poly.scale(c), self.truncation)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let t = self.truncation.min(rhs.truncation);
        KunnethClass {
            unit: self.unit.clone(),
            poly: self.poly.mul_truncated(&rhs.poly, t),
            truncation: t,
        }
    }

    /// The part of total degree `degree`.
    pub fn homogeneous(&self, degree: u32) -> Self {
        KunnethClass::new(
            self.unit.clone(),
            self.poly.homogeneous(degree),
            self.truncation,
        )
    }

    /// The Künneth component `a` with `a ⊠ x` of total degree `total_degree`,
    /// e.g. `c_{i,π}` is `component(π, 2i)` of the total Chern class.
    pub fn component(&self, x: XBasis, total_degree: u32) -> Poly<M> {
        self.poly.map_monomials(|m| {
            (m.x == x && m.degree() == total_degree).then(|| (false, m.coeff.clone()))
        })
    }

    /// Sum of `scale_n · x^n` for `n >= 1`, for `x` nilpotent in the truncation.
    fn nilpotent_series(&self, mut scale_n: impl FnMut(u32) -> Coeff) -> Self {
        let mut out = KunnethClass::zero(self.unit.clone(), self.truncation);
        let mut power = self.clone();
        let mut n = 1;
        while !power.poly.is_zero() {
            out = out.add(&power.scale(&scale_n(n)));
            power = power.mul(self);
            n += 1;
        }
        out
    }

    fn without_constant(&self) -> (Coeff, Self) {
        let c = self.constant();
        let mut rest = self.clone();
        rest.poly.add_term(self.unit_term(), -c.clone());
        (c, rest)
    }

    /// `log(1 + x)` for a unipotent class `1 + x`.
    pub fn log(&self) -> Result<Self> {
        let (c, x) = self.without_constant();
        if !c.is_one() {
            return Err(Error::NotUnipotent);
        }
        Ok(x.nilpotent_series(|n| {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            Coeff::new(sign.into(), n.into())
        }))
    }

    /// `exp(x)` for a class without constant term.
    pub fn exp(&self) -> Result<Self> {
        let (c, x) = self.without_constant();
        if !c.is_zero() {
            return Err(Error::NotNilpotent);
        }
        let one = KunnethClass::one(self.unit.clone(), self.truncation);
        Ok(one.add(&x.nilpotent_series(|n| Coeff::new(1.into(), factorial(n)))))
    }

    /// The inverse of a unipotent class.
    pub fn inverse(&self) -> Result<Self> {
        let (c, x) = self.without_constant();
        if !c.is_one() {
            return Err(Error::NotUnipotent);
        }
        let one = KunnethClass::one(self.unit.clone(), self.truncation);
        Ok(one.add(
            &x.nilpotent_series(|n| Coeff::from_integer(if n % 2 == 1 { -1 } else { 1 }.into())),
        ))
    }

    fn max_total_degree(&self) -> u32 {
        self.poly.max_degree().unwrap_or(0)
    }

    pub fn render(&self, curve: &CurveModel) -> String
    where
        M: Render,
    {
        self.poly.render(curve)
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Chern character from a total Chern class and rank:
/// `ch_0 = r` and `ch_k = (-1)^{k-1}/(k-1)! · (log c)_{2k}`.
pub fn chern_to_chchar<M: Monomial>(
    total_c: &KunnethClass<M>,
    rank: &BigInt,
) -> Result<KunnethClass<M>> {
    let log = total_c.log()?;
    let mut ch = KunnethClass::one(total_c.unit.clone(), total_c.truncation)
        .scale(&Coeff::from_integer(rank.clone()));
    for k in 1..=log.max_total_degree().div_ceil(2) {
        let part = log.homogeneous(2 * k);
        let sign: BigInt = if k % 2 == 1 { 1.into() } else { (-1).into() };
        ch = ch.add(&part.scale(&Coeff::new(sign, factorial(k - 1))));
    }
    Ok(ch)
}

/// Inverse of [`chern_to_chchar`]: returns the rank and the total Chern class.
pub fn chchar_to_chern<M: Monomial>(ch: &KunnethClass<M>) -> Result<(BigInt, KunnethClass<M>)> {
    let (r, rest) = ch.without_constant();
    if !r.is_integer() {
        return Err(Error::Parse(format!("rank {r} is not an integer")));
    }
    let mut log = KunnethClass::zero(ch.unit.clone(), ch.truncation);
    for k in 1..=rest.max_total_degree().div_ceil(2) {
        let part = rest.homogeneous(2 * k);
        let sign: BigInt = if k % 2 == 1 { 1.into() } else { (-1).into() };
        log = log.add(&part.scale(&Coeff::from_integer(sign * factorial(k - 1))));
    }
    Ok((r.to_integer(), log.exp()?))
}

/// Chern data of a sheaf on `M × X`: rank and total Chern class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SheafClass<M: Monomial> {
    pub rank: BigInt,
    pub chern: KunnethClass<M>,
}

impl<M: Monomial> SheafClass<M> {
    pub fn new(rank: BigInt, chern: KunnethClass<M>) -> Result<Self> {
        if !chern.is_unipotent() {
            return Err(Error::NotUnipotent);
        }
        Ok(SheafClass { rank, chern })
    }

    /// The zero sheaf.
    pub fn zero(unit: M, truncation: u32) -> Self {
        SheafClass {
            rank: BigInt::zero(),
            chern: KunnethClass::one(unit, truncation),
        }
    }

    /// Degree along `X`: the coefficient of `1 ⊠ ϖ` in `c_1`.
    pub fn degree(&self) -> Coeff {
        self.chern.point_scalar()
    }

    pub fn numerical_class(&self) -> Result<NumClass> {
        let d = self.degree();
        if !d.is_integer() {
            return Err(Error::Parse(format!("degree {d} is not an integer")));
        }
        Ok(NumClass::new(self.rank.clone(), d.to_integer()))
    }

    pub fn chern_character(&self) -> Result<KunnethClass<M>> {
        chern_to_chchar(&self.chern, &self.rank)
    }

    pub fn from_chern_character(ch: &KunnethClass<M>) -> Result<Self> {
        let (rank, chern) = chchar_to_chern(ch)?;
        Ok(SheafClass { rank, chern })
    }

    /// Direct sum (Whitney formula).
    pub fn direct_sum(&self, rhs: &Self) -> Self {
        SheafClass {
            rank: &self.rank + &rhs.rank,
            chern: self.chern.mul(&rhs.chern),
        }
    }

    /// `E ⊗ p^*L` for a line bundle `L` of degree `by_degree` on `X`.
    pub fn twist(&self, by_degree: &BigInt) -> Result<Self> {
        twist_class(self, by_degree)
    }

    /// The K-theory difference `self - rhs`.
    pub fn difference(&self, rhs: &Self) -> Result<Self> {
        k_difference(self, rhs)
    }
}

/// `ch(E ⊗ L) = ch(E) · (1 + by_degree · (1 ⊠ ϖ))`.
pub fn twist_class<M: Monomial>(e: &SheafClass<M>, by_degree: &BigInt) -> Result<SheafClass<M>> {
    if by_degree.is_zero() {
        return Ok(e.clone());
    }
    let ch = e.chern_character()?;
    let unit = ch.unit.clone();
    let line = KunnethClass::one(unit.clone(), ch.truncation).add(&KunnethClass::scalar_times(
        unit,
        Coeff::from_integer(by_degree.clone()),
        XBasis::Point,
        ch.truncation,
    ));
    SheafClass::from_chern_character(&ch.mul(&line))
}

/// `c(A - B) = c(A) · c(B)^{-1}`, of rank `r_A - r_B`.
pub fn k_difference<M: Monomial>(a: &SheafClass<M>, b: &SheafClass<M>) -> Result<SheafClass<M>> {
    Ok(SheafClass {
        rank: &a.rank - &b.rank,
        chern: a.chern.mul(&b.chern.inverse()?),
    })
}

/// Total Chern class `1 + Σ_{i>=1} Σ_π c^{(slot)}_{i,π} ⊠ π` of the universal
/// sheaf of class `class` pulled back from tensor slot `slot` of `n_slots`,
/// with `c_{1,ϖ}` replaced by the scalar `deg class`.
pub fn free_slot_chern(
    slot: usize,
    n_slots: usize,
    class: &NumClass,
    curve: &CurveModel,
    truncation: u32,
) -> KunnethClass<TensorMono<HMono>> {
    let unit = TensorMono(vec![HMono::one(); n_slots]);
    let mut poly = Poly::monomial(KunnethMono {
        coeff: unit.clone(),
        x: XBasis::One,
    });
    poly.add_term(
        KunnethMono {
            coeff: unit.clone(),
            x: XBasis::Point,
        },
        Coeff::from_integer(class.degree.clone()),
    );
    for g in Gen::all(curve, truncation) {
        let mut slots = unit.0.clone();
        slots[slot] = HMono::gen(g);
        poly.add_term(
            KunnethMono {
                coeff: TensorMono(slots),
                x: g.x,
            },
            Coeff::one(),
        );
    }
    KunnethClass::new(unit, poly, truncation)
}

/// Product of the slot total Chern classes: the total Chern class of
/// `⊕_k pr_k^* 𝔈_{α_k}` on `Π_k Coh_{α_k} × X`. No slots gives the unit.
pub fn kunneth_total_chern(
    slots: &[NumClass],
    curve: &CurveModel,
    truncation: u32,
) -> KunnethClass<TensorMono<HMono>> {
    let unit = TensorMono(vec![HMono::one(); slots.len()]);
    slots
        .iter()
        .enumerate()
        .fold(KunnethClass::one(unit, truncation), |acc, (k, class)| {
            acc.mul(&free_slot_chern(k, slots.len(), class, curve, truncation))
        })
}

/// Sheaf data of the universal sheaf on `Coh_α × X` (one slot).
pub fn universal_sheaf(
    class: &NumClass,
    curve: &CurveModel,
    truncation: u32,
) -> SheafClass<TensorMono<HMono>> {
    SheafClass {
        rank: class.rank.clone(),
        chern: free_slot_chern(0, 1, class, curve, truncation),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const G2: CurveModel = CurveModel::new(2);

    fn q(n: i64) -> Coeff {
        Coeff::from_integer(n.into())
    }

    fn gen_term(slots: usize, slot: usize, i: u32, x: XBasis) -> TensorMono<HMono> {
        let mut v = vec![HMono::one(); slots];
        v[slot] = HMono::gen(Gen::new(i, x).unwrap());
        TensorMono(v)
    }

    #[test]
    fn one_slot_degree_two() {
        let c = kunneth_total_chern(&[NumClass::new(2, 5)], &G2, 2);
        // 1, c11, four c(1,pa), d, c(2,w)
        assert_eq!(c.poly().len(), 8);
        assert_eq!(c.point_scalar(), q(5));
        assert_eq!(
            c.component(XBasis::Point, 4),
            Poly::monomial(gen_term(1, 0, 2, XBasis::Point))
        );
        assert_eq!(
            c.component(XBasis::One, 2),
            Poly::monomial(gen_term(1, 0, 1, XBasis::One))
        );
    }

    #[test]
    fn zero_slots_is_unit() {
        let c = kunneth_total_chern(&[], &G2, 4);
        assert_eq!(c, KunnethClass::one(TensorMono(vec![]), 4));
    }

    #[test]
    fn degrees_add_under_whitney() {
        let c = kunneth_total_chern(&[NumClass::new(1, 3), NumClass::new(0, -7)], &G2, 2);
        assert_eq!(c.point_scalar(), q(-4));
    }

    #[test]
    fn unit_class_has_zero_character() {
        let one = KunnethClass::one(TensorMono::<HMono>(vec![]), 6);
        let ch = chern_to_chchar(&one, &BigInt::zero()).unwrap();
        assert!(ch.poly().is_zero());
    }

    #[test]
    fn line_bundle_character() {
        // L = 3 ⊠ ϖ + c(1,p1) ⊠ p1 squares to zero
        let unit = TensorMono(vec![HMono::one()]);
        let mut l = Poly::term(
            KunnethMono {
                coeff: unit.clone(),
                x: XBasis::Point,
            },
            q(3),
        );
        l.add_term(
            KunnethMono {
                coeff: gen_term(1, 0, 1, XBasis::lower(1)),
                x: XBasis::lower(1),
            },
            q(1),
        );
        let lc = KunnethClass::new(unit.clone(), l, 6);
        assert!(lc.mul(&lc).poly().is_zero());
        let c = KunnethClass::one(unit.clone(), 6).add(&lc);
        let ch = chern_to_chchar(&c, &BigInt::one()).unwrap();
        assert_eq!(ch, KunnethClass::one(unit, 6).add(&lc));
    }

    #[test]
    fn inverse_and_log_exp() {
        let c = free_slot_chern(0, 1, &NumClass::new(1, 2), &G2, 5);
        let inv = c.inverse().unwrap();
        assert_eq!(c.mul(&inv), KunnethClass::one(c.unit().clone(), 5));
        assert_eq!(c.log().unwrap().exp().unwrap(), c);
        assert!(c.scale(&q(2)).log().is_err());
    }

    #[test]
    fn twist_changes_numerical_class() {
        let e = universal_sheaf(&NumClass::new(2, 1), &G2, 4);
        let t = e.twist(&BigInt::from(3)).unwrap();
        assert_eq!(t.numerical_class().unwrap(), NumClass::new(2, 7));
        assert_eq!(t.twist(&BigInt::from(-3)).unwrap(), e);
        assert_eq!(e.twist(&BigInt::zero()).unwrap(), e);
    }

    #[test]
    fn rank_zero_twist_touches_point_components_only() {
        let e = universal_sheaf(&NumClass::new(0, 2), &G2, 4);
        let t = e.twist(&BigInt::from(2)).unwrap();
        assert_eq!(t.numerical_class().unwrap(), NumClass::new(0, 2));
        let diff = t.chern.sub(&e.chern);
        assert!(!diff.poly().is_zero());
        assert!(diff.poly().terms().all(|(m, _)| m.x == XBasis::Point));
    }

    #[test]
    fn difference_basics() {
        let a = universal_sheaf(&NumClass::new(1, 2), &G2, 4);
        let unit = a.chern.unit().clone();
        let zero = SheafClass::zero(unit.clone(), 4);
        assert_eq!(
            a.difference(&a).unwrap(),
            SheafClass {
                rank: BigInt::zero(),
                chern: KunnethClass::one(unit, 4)
            }
        );
        assert_eq!(a.difference(&zero).unwrap(), a);
    }

    fn two_slot_sheaves(
        d1: i64,
        d2: i64,
        n: u32,
    ) -> (SheafClass<TensorMono<HMono>>, SheafClass<TensorMono<HMono>>) {
        let a = SheafClass {
            rank: 1.into(),
            chern: free_slot_chern(0, 2, &NumClass::new(1, d1), &G2, n),
        };
        let b = SheafClass {
            rank: 2.into(),
            chern: free_slot_chern(1, 2, &NumClass::new(2, d2), &G2, n),
        };
        (a, b)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn whitney_difference(d1 in -3i64..4, d2 in -3i64..4) {
            let (a, b) = two_slot_sheaves(d1, d2, 4);
            let sum = a.direct_sum(&b);
            prop_assert_eq!(sum.difference(&b).unwrap(), a);
        }

        #[test]
        fn character_is_additive(d1 in -3i64..4, d2 in -3i64..4) {
            let (a, b) = two_slot_sheaves(d1, d2, 4);
            let lhs = a.direct_sum(&b).chern_character().unwrap();
            let rhs = a.chern_character().unwrap().add(&b.chern_character().unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn character_roundtrip(d in -3i64..4, r in 0i64..3) {
            let e = universal_sheaf(&NumClass::new(r, d), &G2, 5);
            let back = SheafClass::from_chern_character(&e.chern_character().unwrap()).unwrap();
            prop_assert_eq!(back, e);
        }
    }
}
