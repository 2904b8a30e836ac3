//! The tautological algebra `ℍ = Q[c_{i,π}]`.
//!
//! Generators are `c_{i,π}` for `i >= 2` and any basis class `π`, plus
//! `c_{1,π}` for `π != ϖ`, of degree `2i - deg π`. Monomials are stored in
//! normal order: generators sorted by `(i, π)`, odd ones with exponent one.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::ktheory::CurveModel;

use super::algebra::{Coeff, Monomial, Poly, Render};
use super::xcoh::XBasis;

/// A generator `c_{i,π}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Gen {
    pub i: u32,
    pub x: XBasis,
}

impl Gen {
    pub fn new(i: u32, x: XBasis) -> Result<Self> {
        if i == 0 || (i == 1 && x == XBasis::Point) {
            return Err(Error::InvalidGenerator {
                i,
                basis: format!("{x:?}"),
            });
        }
        Ok(Gen { i, x })
    }

    pub fn degree(&self) -> u32 {
        2 * self.i - self.x.degree()
    }

    pub fn is_odd(&self) -> bool {
        self.x.degree() == 1
    }

    /// All generators of degree `<= max_degree`, in normal order.
    pub fn all(curve: &CurveModel, max_degree: u32) -> Vec<Gen> {
        let basis = XBasis::basis(curve);
        let mut out = Vec::new();
        for i in 1..=max_degree / 2 + 1 {
            for &x in &basis {
                if let Ok(g) = Gen::new(i, x) {
                    if g.degree() <= max_degree {
                        out.push(g);
                    }
                }
            }
        }
        out
    }

    pub fn render(&self, curve: &CurveModel) -> String {
        format!("c({},{})", self.i, self.x.label(curve))
    }
}

/// A normal-ordered monomial in the generators of `ℍ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct HMono(Vec<(Gen, u32)>);

impl HMono {
    pub fn one() -> Self {
        HMono(Vec::new())
    }

    pub fn gen(g: Gen) -> Self {
        HMono(vec![(g, 1)])
    }

    /// Builds a monomial from `(generator, exponent)` pairs in any order.
    /// Returns the Koszul sign of sorting, or `None` if an odd generator repeats.
    pub fn from_factors(factors: &[(Gen, u32)]) -> Option<(bool, Self)> {
        let mut acc = (false, HMono::one());
        for &(g, e) in factors {
            for _ in 0..e {
                let (neg, m) = acc.1.mul(&HMono::gen(g))?;
                acc = (acc.0 ^ neg, m);
            }
        }
        Some(acc)
    }

    pub fn factors(&self) -> &[(Gen, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// All normal-ordered monomials of degree `<= max_degree`, sorted by degree.
    pub fn all(curve: &CurveModel, max_degree: u32) -> Vec<HMono> {
        let gens = Gen::all(curve, max_degree);
        let mut out = Vec::new();
        let mut acc = Vec::new();
        fn rec(
            gens: &[Gen],
            idx: usize,
            budget: u32,
            acc: &mut Vec<(Gen, u32)>,
            out: &mut Vec<HMono>,
        ) {
            if idx == gens.len() {
                out.push(HMono(acc.clone()));
                return;
            }
            let g = gens[idx];
            rec(gens, idx + 1, budget, acc, out);
            let d = g.degree();
            let max_exp = if g.is_odd() { 1 } else { budget / d.max(1) };
            for e in 1..=max_exp {
                if d * e > budget {
                    break;
                }
                acc.push((g, e));
                rec(gens, idx + 1, budget - d * e, acc, out);
                acc.pop();
            }
        }
        rec(&gens, 0, max_degree, &mut acc, &mut out);
        out.sort_by_key(|m| (m.degree(), m.clone()));
        out
    }
}

impl Monomial for HMono {
    fn degree(&self) -> u32 {
        self.0.iter().map(|(g, e)| g.degree() * e).sum()
    }

    fn mul(&self, rhs: &Self) -> Option<(bool, Self)> {
        // Sign: each odd generator of rhs passes the larger odd generators of lhs.
        let mut negative = false;
        for (g, _) in rhs.0.iter().filter(|(g, _)| g.is_odd()) {
            let passed = self.0.iter().filter(|(h, _)| h.is_odd() && h > g).count();
            negative ^= passed % 2 == 1;
        }
        let mut out = Vec::with_capacity(self.0.len() + rhs.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), rhs.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(ga, ea)), Some(&&(gb, eb))) => {
                    if ga == gb {
                        if ga.is_odd() {
                            return None;
                        }
                        out.push((ga, ea + eb));
                        a.next();
                        b.next();
                    } else if ga < gb {
                        out.push((ga, ea));
                        a.next();
                    } else {
                        out.push((gb, eb));
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&x)) => {
                    out.push(x);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Some((negative, HMono(out)))
    }
}

impl Render for HMono {
    fn render(&self, curve: &CurveModel) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|(g, e)| {
                if *e == 1 {
                    g.render(curve)
                } else {
                    format!("{}^{}", g.render(curve), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    fn is_unit(&self) -> bool {
        self.0.is_empty()
    }
}

/// An element of `ℍ`.
pub type HPoly = Poly<HMono>;

/// `c_{i,π}` as a polynomial.
pub fn generator(i: u32, x: XBasis) -> Result<HPoly> {
    Ok(Poly::monomial(HMono::gen(Gen::new(i, x)?)))
}

/// The unit of `ℍ`.
pub fn hpoly_one() -> HPoly {
    Poly::monomial(HMono::one())
}

/// Product in `ℍ`, with Koszul signs.
pub fn hpoly_mul(p: &HPoly, q: &HPoly) -> HPoly {
    p * q
}

/// Parses a polynomial such as `3/2*c(2,w)*c(1,p1) - c(1,1)^2 + 5`.
///
/// Factors in a product are multiplied left to right, so `c(1,p2)*c(1,p1)`
/// is stored as `-c(1,p1)*c(1,p2)`.
pub fn parse_hpoly(s: &str, curve: &CurveModel) -> Result<HPoly> {
    let mut parser = Parser {
        src: s,
        pos: 0,
        curve,
    };
    let p = parser.sum()?;
    parser.skip_ws();
    if parser.pos != s.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    curve: &'a CurveModel,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn sum(&mut self) -> Result<HPoly> {
        let mut negative = self.eat('-');
        let mut acc = HPoly::zero();
        loop {
            let t = self.product()?;
            acc = if negative { &acc - &t } else { &acc + &t };
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<HPoly> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn number(&mut self) -> Option<u64> {
        self.skip_ws();
        let digits: String = self
            .rest()
            .chars()
            .take_while(char::is_ascii_digit)
            .collect();
        if digits.is_empty() {
            return None;
        }
        self.pos += digits.len();
        digits.parse().ok()
    }

    fn factor(&mut self) -> Result<HPoly> {
        self.skip_ws();
        if self.eat('(') {
            let inner = self.sum()?;
            if !self.eat(')') {
                return Err(self.error("expected `)`"));
            }
            return self.power(inner);
        }
        if let Some(n) = self.number() {
            let mut c = Coeff::from_integer(n.into());
            if self.eat('/') {
                let d = self
                    .number()
                    .ok_or_else(|| self.error("expected denominator"))?;
                if d == 0 {
                    return Err(self.error("zero denominator"));
                }
                c /= Coeff::from_integer(d.into());
            }
            return Ok(HPoly::scalar(c, &HMono::one()));
        }
        if self.rest().starts_with('c') {
            self.pos += 1;
            if !self.eat('(') {
                return Err(self.error("expected `(` after `c`"));
            }
            let i = self
                .number()
                .ok_or_else(|| self.error("expected generator index"))?;
            if !self.eat(',') {
                return Err(self.error("expected `,`"));
            }
            self.skip_ws();
            let label: String = self
                .rest()
                .chars()
                .take_while(|ch| ch.is_ascii_alphanumeric())
                .collect();
            self.pos += label.len();
            let x = XBasis::parse(&label, self.curve)?;
            if !self.eat(')') {
                return Err(self.error("expected `)`"));
            }
            let i = u32::try_from(i).map_err(|_| self.error("generator index too large"))?;
            let g = generator(i, x)?;
            return self.power(g);
        }
        Err(self.error("expected a number, `c(i,x)` or `(`"))
    }

    fn power(&mut self, base: HPoly) -> Result<HPoly> {
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self
            .number()
            .ok_or_else(|| self.error("expected exponent"))?;
        let mut acc = hpoly_one();
        for _ in 0..e {
            acc = &acc * &base;
        }
        Ok(acc)
    }
}

/// Wrapper that renders an [`HPoly`] for a given curve.
pub struct Rendered<'a, M: Ord>(pub &'a Poly<M>, pub &'a CurveModel);

impl<M: Ord + Clone + Render> fmt::Display for Rendered<'_, M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.render(self.1))
    }
}

/// `true` when `p` is exactly the unit.
pub fn is_unit_poly(p: &HPoly) -> bool {
    p.len() == 1 && p.coeff(&HMono::one()).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const G2: CurveModel = CurveModel::new(2);

    fn c(i: u32, x: &str) -> HPoly {
        generator(i, XBasis::parse(x, &G2).unwrap()).unwrap()
    }

    #[test]
    fn generator_rules() {
        assert!(Gen::new(1, XBasis::Point).is_err());
        assert!(Gen::new(0, XBasis::One).is_err());
        assert_eq!(Gen::new(2, XBasis::Point).unwrap().degree(), 2);
        assert_eq!(Gen::new(1, XBasis::lower(1)).unwrap().degree(), 1);
        assert_eq!(Gen::new(3, XBasis::One).unwrap().degree(), 6);
        // degree <= 2 in genus 2: c(1,1), c(1,p1..p4), c(2,w)
        assert_eq!(Gen::all(&G2, 2).len(), 6);
    }

    #[test]
    fn odd_square_vanishes() {
        let p1 = c(1, "p1");
        assert!((&p1 * &p1).is_zero());
    }

    #[test]
    fn odd_generators_anticommute() {
        let (p1, p2) = (c(1, "p1"), c(1, "p2"));
        assert_eq!(&p1 * &p2, -&(&p2 * &p1));
        assert!(!(&p1 * &p2).is_zero());
    }

    #[test]
    fn even_generators_commute() {
        let (a, b) = (c(1, "1"), c(2, "w"));
        assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn parse_and_render_roundtrip() {
        let p = parse_hpoly("3/2*c(2,w)*c(1,p1) - c(1,1)^2 + 5", &G2).unwrap();
        assert_eq!(p.render(&G2), "5 - c(1,1)^2 + 3/2*c(1,p1)*c(2,w)");
        assert_eq!(parse_hpoly(&p.render(&G2), &G2).unwrap(), p);
        let q = parse_hpoly("c(1,p2)*c(1,p1)", &G2).unwrap();
        assert_eq!(q.render(&G2), "-c(1,p1)*c(1,p2)");
        assert_eq!(parse_hpoly("(c(1,1) + 1)^2", &G2).unwrap().len(), 3);
        assert_eq!(parse_hpoly("0", &G2).unwrap().render(&G2), "0");
        for bad in ["c(1,w)", "c(1,p9)", "c(1 p1)", "3/0", "c(2,w) +", "x"] {
            assert!(parse_hpoly(bad, &G2).is_err(), "{bad}");
        }
    }

    #[test]
    fn monomial_basis_counts() {
        // genus 0: generators c(i,1) in degree 2i and c(i,w) in degree 2i-2 (i >= 2)
        let ms = HMono::all(&CurveModel::new(0), 4);
        let count = |d| ms.iter().filter(|m| m.degree() == d).count();
        assert_eq!((count(0), count(2), count(4)), (1, 2, 5));
    }

    fn gen_strategy() -> impl Strategy<Value = Gen> {
        let gens = Gen::all(&G2, 5);
        (0..gens.len()).prop_map(move |k| gens[k])
    }

    fn poly_strategy() -> impl Strategy<Value = HPoly> {
        prop::collection::vec(
            (prop::collection::vec(gen_strategy(), 0..3), -3i64..4),
            0..4,
        )
        .prop_map(|terms| {
            let mut p = HPoly::zero();
            for (gens, c) in terms {
                let factors: Vec<(Gen, u32)> = gens.into_iter().map(|g| (g, 1)).collect();
                if let Some((neg, m)) = HMono::from_factors(&factors) {
                    let c = Coeff::from_integer(c.into());
                    p.add_term(m, if neg { -c } else { c });
                }
            }
            p
        })
    }

    proptest! {
        #[test]
        fn associative(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn unital(a in poly_strategy()) {
            prop_assert_eq!(&a * &hpoly_one(), a.clone());
            prop_assert_eq!(&hpoly_one() * &a, a);
        }

        #[test]
        fn graded_commutative(a in gen_strategy(), b in gen_strategy()) {
            let (pa, pb) = (Poly::monomial(HMono::gen(a)), Poly::monomial(HMono::gen(b)));
            let sign = if a.degree() * b.degree() % 2 == 1 { -1 } else { 1 };
            prop_assert_eq!(&pa * &pb, (&pb * &pa).scale(&Coeff::from_integer(sign.into())));
        }

        #[test]
        fn distributive(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
