//! The Whitney coproduct `Δ_{α1,α2}: ℍ → ℍ ⊗ ℍ`.
//!
//! Pulling the universal sheaf back along `⊕: Coh_{α1} × Coh_{α2} → Coh_{α1+α2}`
//! gives `pr_1^* 𝔈_{α1} ⊕ pr_2^* 𝔈_{α2}`, so `Δ(c_{i,π})` is the `(i, π)`
//! Künneth component of `c(𝔈_{α1}) c(𝔈_{α2})`. Since `c_{1,ϖ}` is the scalar
//! degree, the result depends on `α1, α2` through their degrees.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ktheory::{CurveModel, NumClass};

use super::algebra::{coeff_mul, Monomial, Poly, TensorMono};
use super::hpoly::{Gen, HMono, HPoly};
use super::kunneth::kunneth_total_chern;

/// An element of `ℍ^{⊗s}`.
pub type TensorPoly = Poly<TensorMono<HMono>>;

/// Evaluates `Σ c·m` by replacing each generator with its image, multiplying
/// images in normal order. `factors` lists a monomial's generators in order.
fn evaluate<K: Ord + Clone, M: Ord + Clone, T: Monomial>(
    p: &Poly<M>,
    unit: &T,
    truncation: u32,
    factors: impl Fn(&M) -> Vec<(K, u32)>,
    mut image: impl FnMut(&K) -> Result<Poly<T>>,
) -> Result<Poly<T>> {
    let mut cache: BTreeMap<K, Poly<T>> = BTreeMap::new();
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        let mut value = Poly::monomial(unit.clone());
        for (k, e) in factors(m) {
            if !cache.contains_key(&k) {
                let img = image(&k)?;
                cache.insert(k.clone(), img);
            }
            let img = &cache[&k];
            for _ in 0..e {
                value = value.mul_truncated(img, truncation);
            }
        }
        out += &value.scale(c);
    }
    Ok(out)
}

/// Algebra homomorphism out of `ℍ` given on generators.
pub fn substitute<T: Monomial>(
    p: &HPoly,
    unit: &T,
    truncation: u32,
    image: impl FnMut(&Gen) -> Result<Poly<T>>,
) -> Result<Poly<T>> {
    evaluate(p, unit, truncation, |m: &HMono| m.factors().to_vec(), image)
}

/// Algebra homomorphism out of `ℍ^{⊗s}` given on `(slot, generator)`.
pub fn substitute_tensor<T: Monomial>(
    p: &TensorPoly,
    unit: &T,
    truncation: u32,
    image: impl FnMut(&(usize, Gen)) -> Result<Poly<T>>,
) -> Result<Poly<T>> {
    evaluate(
        p,
        unit,
        truncation,
        |m: &TensorMono<HMono>| {
            m.0.iter()
                .enumerate()
                .flat_map(|(slot, h)| h.factors().iter().map(move |&(g, e)| ((slot, g), e)))
                .collect()
        },
        image,
    )
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

/// `p` placed in tensor slot `slot` of `n_slots`.
pub fn embed(p: &HPoly, slot: usize, n_slots: usize) -> TensorPoly {
    p.map_monomials(|m| {
        let mut v = vec![HMono::one(); n_slots];
        v[slot] = m.clone();
        Some((false, TensorMono(v)))
    })
}

/// `Δ^{(s-1)}` for fixed slot classes, with the images of all generators read
/// off `c(⊕_k pr_k^* 𝔈_{β_k})` once.
#[derive(Clone, Debug)]
pub struct Whitney {
    images: BTreeMap<Gen, TensorPoly>,
    slots: usize,
    truncation: u32,
}

impl Whitney {
    pub fn new(classes: &[NumClass], curve: &CurveModel, truncation: u32) -> Self {
        let total = kunneth_total_chern(classes, curve, truncation);
        let mut images: BTreeMap<Gen, TensorPoly> = BTreeMap::new();
        for (m, c) in total.poly().terms() {
            let degree = m.degree();
            if degree % 2 == 1 {
                continue;
            }
            if let Ok(g) = Gen::new(degree / 2, m.x) {
                images
                    .entry(g)
                    .or_default()
                    .add_term(m.coeff.clone(), c.clone());
            }
        }
        Whitney {
            images,
            slots: classes.len(),
            truncation,
        }
    }

    /// Image of one generator.
    pub fn image(&self, g: &Gen) -> TensorPoly {
        self.images.get(g).cloned().unwrap_or_default()
    }

    pub fn apply(&self, p: &HPoly) -> Result<TensorPoly> {
        check_degree(p, self.truncation)?;
        let unit = TensorMono(vec![HMono::one(); self.slots]);
        substitute(p, &unit, self.truncation, |g| Ok(self.image(g)))
    }

    /// Applies the map to tensor slot `slot` of `p`, which gains `slots - 1`
    /// new slots right after it. Pure tensors in increasing slots multiply
    /// without signs, so each term only needs the image of its own slot.
    pub fn apply_at(&self, p: &TensorPoly, slot: usize) -> Result<TensorPoly> {
        check_degree(p, self.truncation)?;
        let mut cache: BTreeMap<HMono, TensorPoly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            let h = &m.0[slot];
            if !cache.contains_key(h) {
                let img = match h.factors() {
                    [] => Poly::monomial(TensorMono(vec![HMono::one(); self.slots])),
                    [(g, 1)] => self.image(g),
                    _ => self.apply(&Poly::monomial(h.clone()))?,
                };
                cache.insert(h.clone(), img);
            }
            for (split, c2) in cache[h].terms() {
                let mut v = Vec::with_capacity(m.0.len() + self.slots - 1);
                v.extend_from_slice(&m.0[..slot]);
                v.extend_from_slice(&split.0);
                v.extend_from_slice(&m.0[slot + 1..]);
                out.add_term(TensorMono(v), coeff_mul(c, c2));
            }
        }
        Ok(out)
    }
}

/// `Δ_{α1,α2}(p)`.
pub fn coproduct(
    p: &HPoly,
    a1: &NumClass,
    a2: &NumClass,
    curve: &CurveModel,
    truncation: u32,
) -> Result<TensorPoly> {
    iterated_coproduct(p, &[a1.clone(), a2.clone()], curve, truncation)
}

/// The iterated coproduct `ℍ → ℍ^{⊗s}` for slot classes `(β_1, …, β_s)`,
/// computed in one step from `c(⊕_k pr_k^* 𝔈_{β_k})`.
pub fn iterated_coproduct(
    p: &HPoly,
    classes: &[NumClass],
    curve: &CurveModel,
    truncation: u32,
) -> Result<TensorPoly> {
    check_degree(p, truncation)?;
    Whitney::new(classes, curve, truncation).apply(p)
}

/// Applies `Δ_{left,right}` to tensor slot `slot`, producing `s + 1` slots.
pub fn coproduct_at(
    p: &TensorPoly,
    slot: usize,
    left: &NumClass,
    right: &NumClass,
    curve: &CurveModel,
    truncation: u32,
) -> Result<TensorPoly> {
    check_degree(p, truncation)?;
    Whitney::new(&[left.clone(), right.clone()], curve, truncation).apply_at(p, slot)
}

/// The signed flip `a ⊗ b ↦ (-1)^{|a||b|} b ⊗ a` on `ℍ ⊗ ℍ`.
pub fn flip(p: &TensorPoly) -> TensorPoly {
    p.map_monomials(|m| {
        let (a, b) = (&m.0[0], &m.0[1]);
        Some((
            a.is_odd() && b.is_odd(),
            TensorMono(vec![b.clone(), a.clone()]),
        ))
    })
}

/// Applies the counit to tensor slot `slot`: keeps the degree-zero part there
/// and removes the slot.
pub fn counit_at(p: &TensorPoly, slot: usize) -> TensorPoly {
    p.map_monomials(|m| {
        m.0[slot].is_one().then(|| {
            let mut v = m.0.clone();
            v.remove(slot);
            (false, TensorMono(v))
        })
    })
}
