//! Acceptance suite: one PASS/FAIL line per criterion, each with its time bound.
//!
//! Runs without the libtest harness so the report is printed on every run.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use higgs_coha::grcoha::{
    fundamental_class, generation_shadow, leading_product, strata_sheaf_classes, GenClass,
    StratumMono,
};
use higgs_coha::jordan::{enumerate_rank0, JordanType, RowClasses};
use higgs_coha::ktheory::{dim_higgs, euler_coh, euler_higgs};
use higgs_coha::tautalg::{
    chchar_to_chern, chern_to_chchar, flip, generator, hpoly_one, k_difference,
    poincare_coh_positive_rank, poincare_coh_torsion, substitute, Coeff, Gen, HMono, HPoly,
    KunnethClass, KunnethMono, Monomial, Poly, SheafClass, TensorPoly, Whitney, XBasis,
};
use higgs_coha::{CurveModel, NumClass};

type Check = Result<String, String>;
/// Number, name, time bound and check of one criterion.
type Criterion = (u32, &'static str, Duration, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64) -> Coeff {
    Coeff::from_integer(n.into())
}

// ---------------------------------------------------------------- criterion 1

fn euler_grid() -> Check {
    let mut pairs = 0u64;
    for g in 0..=4u32 {
        let curve = CurveModel::new(g);
        let classes: Vec<NumClass> = (-3..=3i64)
            .flat_map(|r| (-4..=4i64).map(move |d| NumClass::new(r, d)))
            .collect();
        for a in &classes {
            for b in &classes {
                let sym = euler_coh(a, b, &curve) + euler_coh(b, a, &curve);
                let higgs = euler_higgs(a, b, &curve);
                ensure(sym == higgs, || {
                    format!("g={g} a={a} b={b}: {sym} != {higgs}")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

// ---------------------------------------------------------------- criterion 2

/// Partitions of `n` as weakly decreasing part lists.
fn partitions(n: u64) -> Vec<Vec<u64>> {
    fn go(n: u64, max: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            acc.push(p);
            go(n - p, p, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `λ ⊴ μ` on partitions of the same size.
fn dominated(l: &[u64], m: &[u64]) -> bool {
    let (mut sl, mut sm) = (0, 0);
    for k in 0..l.len().max(m.len()) {
        sl += l.get(k).copied().unwrap_or(0);
        sm += m.get(k).copied().unwrap_or(0);
        if sl > sm {
            return false;
        }
    }
    true
}

/// A rank-0 Jordan type `((0,m_1), …, (0,m_s))` has `m_i` parts equal to `i`.
fn to_partition(t: &JordanType) -> Vec<u64> {
    let mut parts = Vec::new();
    for (i, a) in t.entries().iter().enumerate().rev() {
        let m: u64 = a.degree.clone().try_into().unwrap();
        parts.extend(std::iter::repeat_n(i as u64 + 1, m as usize));
    }
    parts
}

fn poset_suite() -> Check {
    let curve = CurveModel::new(2);
    let p = [1usize, 1, 2, 3, 5, 7, 11, 15, 22];
    for d in 0..=8u64 {
        let types = enumerate_rank0(d);
        ensure(types.len() == p[d as usize], || {
            format!("d={d}: {} types", types.len())
        })?;
        let le = |a: &JordanType, b: &JordanType| a.preceq(b, &curve);
        for a in &types {
            ensure(le(a, a), || format!("{a} not reflexive"))?;
            for b in &types {
                if le(a, b) && le(b, a) {
                    ensure(a == b, || format!("{a} ~ {b}"))?;
                }
                for c in &types {
                    if le(a, b) && le(b, c) {
                        ensure(le(a, c), || format!("{a} {b} {c} not transitive"))?;
                    }
                }
            }
        }
        let zero = JordanType::zero_section(NumClass::new(0, d as i64)).unwrap();
        let minima: Vec<_> = types
            .iter()
            .filter(|a| types.iter().all(|b| le(a, b)))
            .collect();
        ensure(minima == vec![&zero], || {
            format!("d={d}: minima {minima:?}")
        })?;

        let mut image: Vec<Vec<u64>> = types.iter().map(to_partition).collect();
        for a in &types {
            for b in &types {
                let want = dominated(&to_partition(a), &to_partition(b));
                ensure(le(a, b) == want, || {
                    format!("{a} ⪯ {b} disagrees with dominance")
                })?;
            }
        }
        image.sort();
        let mut all = partitions(d);
        all.sort();
        ensure(image == all, || {
            format!("d={d}: not a bijection onto partitions")
        })?;
    }
    Ok("d <= 8".into())
}

// ---------------------------------------------------------------- criterion 3

/// Counts products `Π g^{e_g}` (odd `g` at most once) by degree.
fn count_monomials(gens: &[(u32, bool)], max: u32) -> Vec<u64> {
    fn go(gens: &[(u32, bool)], budget: u32, used: u32, counts: &mut [u64]) {
        let Some((&(deg, odd), rest)) = gens.split_first() else {
            counts[used as usize] += 1;
            return;
        };
        let top = if odd { 1 } else { budget / deg };
        let mut e = 0;
        while e <= top && e * deg <= budget {
            go(rest, budget - e * deg, used + e * deg, counts);
            e += 1;
        }
    }
    let mut counts = vec![0; max as usize + 1];
    go(gens, max, 0, &mut counts);
    counts
}

/// Multisets of size `d` of basis vectors `(degree, odd)`, odd ones at most once.
fn count_super_symmetric(basis: &[(u32, bool)], d: u32, max: u32) -> Vec<u64> {
    fn go(basis: &[(u32, bool)], left: u32, budget: u32, used: u32, counts: &mut [u64]) {
        if left == 0 {
            counts[used as usize] += 1;
            return;
        }
        let Some((&(deg, odd), rest)) = basis.split_first() else {
            return;
        };
        let top = if odd { 1 } else { left };
        for e in 0..=top.min(left) {
            if e * deg > budget {
                break;
            }
            go(rest, left - e, budget - e * deg, used + e * deg, counts);
        }
    }
    let mut counts = vec![0; max as usize + 1];
    go(basis, d, max, 0, &mut counts);
    counts
}

fn series_oracles() -> Check {
    for g in 0..=3u32 {
        let n = 10;
        // c_{i,1}: 2i, c_{i,π_k}: 2i-1, c_{i,ϖ}: 2i-2 (i >= 2)
        let mut gens = Vec::new();
        for i in 1..=n / 2 + 1 {
            if 2 * i <= n {
                gens.push((2 * i, false));
            }
            if 2 * i - 1 <= n {
                gens.extend(std::iter::repeat_n((2 * i - 1, true), 2 * g as usize));
            }
            if i >= 2 && 2 * i - 2 <= n {
                gens.push((2 * i - 2, false));
            }
        }
        let want = count_monomials(&gens, n);
        let got = poincare_coh_positive_rank(&CurveModel::new(g), n);
        for (k, w) in want.iter().enumerate() {
            let w = q(*w as i64);
            ensure(got.coeff(k as u32) == w, || {
                format!("rank>0 g={g} q^{k}: {} != {w}", got.coeff(k as u32))
            })?;
        }
    }
    for g in 0..=2u32 {
        let n = 8;
        let mut basis = Vec::new();
        for (deg, odd, mult) in [(0, false, 1), (1, true, 2 * g), (2, false, 1)] {
            let mut k = deg;
            while k <= n {
                basis.extend(std::iter::repeat_n((k, odd), mult as usize));
                k += 2;
            }
        }
        for d in 0..=4u32 {
            let want = count_super_symmetric(&basis, d, n);
            let got = poincare_coh_torsion(&CurveModel::new(g), d, n);
            for (k, w) in want.iter().enumerate() {
                let w = q(*w as i64);
                ensure(got.coeff(k as u32) == w, || {
                    format!("torsion g={g} d={d} q^{k}: {} != {w}", got.coeff(k as u32))
                })?;
            }
        }
    }
    Ok("rank>0 to q^10, torsion to q^8".into())
}

// ---------------------------------------------------------------- criterion 4

fn hopf_suite() -> Check {
    let n = 12;
    let mut checked = 0u64;
    for genus in 0..=3u32 {
        let curve = CurveModel::new(genus);
        let gens: Vec<Gen> = Gen::all(&curve, n)
            .into_iter()
            .filter(|g| 2 * g.i <= n)
            .collect();
        // Δ only sees degrees; ranks are varied anyway.
        let class = |d: i64| NumClass::new(1 + d.rem_euclid(2), d);
        let mut maps: HashMap<(i64, i64), Whitney> = HashMap::new();
        let mut images: HashMap<(i64, i64, Gen), TensorPoly> = HashMap::new();
        let mut delta = |d1: i64, d2: i64, g: Gen| -> TensorPoly {
            images
                .entry((d1, d2, g))
                .or_insert_with(|| {
                    maps.entry((d1, d2))
                        .or_insert_with(|| Whitney::new(&[class(d1), class(d2)], &curve, n))
                        .image(&g)
                })
                .clone()
        };
        let mut splits: HashMap<(i64, i64), Whitney> = HashMap::new();
        for d1 in -3..=3i64 {
            for d2 in -3..=3i64 {
                for &g in &gens {
                    let fwd = delta(d1, d2, g);
                    ensure(flip(&fwd) == delta(d2, d1, g), || {
                        format!("g={genus} cocommutativity fails for {g:?} at ({d1},{d2})")
                    })?;
                    if g.i == 1 {
                        let p: HPoly = generator(g.i, g.x).unwrap();
                        let want = &embed2(&p, 0) + &embed2(&p, 1);
                        ensure(fwd == want, || format!("g={genus} Δ({g:?}) not primitive"))?;
                    }
                }
                for d3 in -3..=3i64 {
                    for &g in &gens {
                        let l = splits
                            .entry((d1, d2))
                            .or_insert_with(|| Whitney::new(&[class(d1), class(d2)], &curve, n))
                            .apply_at(&delta(d1 + d2, d3, g), 0)
                            .map_err(|e| e.to_string())?;
                        let r = splits
                            .entry((d2, d3))
                            .or_insert_with(|| Whitney::new(&[class(d2), class(d3)], &curve, n))
                            .apply_at(&delta(d1, d2 + d3, g), 1)
                            .map_err(|e| e.to_string())?;
                        ensure(l == r, || {
                            format!("g={genus} coassociativity fails for {g:?} at ({d1},{d2},{d3})")
                        })?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} coassociativity checks"))
}

fn embed2(p: &HPoly, slot: usize) -> TensorPoly {
    higgs_coha::tautalg::embed(p, slot, 2)
}

// ---------------------------------------------------------------- criterion 5

/// A random class `1 + Σ c·m ⊠ x` on `ℍ`, with even total degree and
/// coefficient degree at most `n`.
fn random_unipotent(
    rng: &mut ChaCha8Rng,
    curve: &CurveModel,
    n: u32,
    terms: usize,
) -> KunnethClass<HMono> {
    let gens = Gen::all(curve, n);
    let basis = XBasis::basis(curve);
    let mut poly = Poly::monomial(KunnethMono {
        coeff: HMono::one(),
        x: XBasis::One,
    });
    let mut added = 0;
    while added < terms {
        let k = rng.gen_range(1..=3);
        let factors: Vec<(Gen, u32)> = (0..k)
            .map(|_| (gens[rng.gen_range(0..gens.len())], 1))
            .collect();
        let Some((neg, m)) = HMono::from_factors(&factors) else {
            continue;
        };
        if m.degree() > n {
            continue;
        }
        let x = basis[rng.gen_range(0..basis.len())];
        if (m.degree() + x.degree()) % 2 == 1 {
            continue;
        }
        let mut c = Coeff::new(
            rng.gen_range(-5..=5i64).into(),
            rng.gen_range(1..=4i64).into(),
        );
        if neg {
            c = -c;
        }
        poly.add_term(KunnethMono { coeff: m, x }, c);
        added += 1;
    }
    KunnethClass::new(HMono::one(), poly, n)
}

fn random_sheaf(rng: &mut ChaCha8Rng, curve: &CurveModel, n: u32) -> SheafClass<HMono> {
    let rank = BigInt::from(rng.gen_range(0..=4));
    SheafClass::new(rank, random_unipotent(rng, curve, n, 4)).unwrap()
}

fn chern_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut trials = 0;
    for genus in 0..=2u32 {
        let curve = CurveModel::new(genus);
        for _ in 0..15 {
            let c = random_unipotent(&mut rng, &curve, 8, 5);
            let rank = BigInt::from(rng.gen_range(0..=3));
            let ch = chern_to_chchar(&c, &rank).map_err(|e| e.to_string())?;
            let (r2, c2) = chchar_to_chern(&ch).map_err(|e| e.to_string())?;
            ensure(r2 == rank && c2 == c, || {
                format!("c -> ch -> c fails at g={genus}")
            })?;

            // random ch with constant term equal to the rank
            let mut ch = random_unipotent(&mut rng, &curve, 8, 5);
            ch = ch
                .sub(&KunnethClass::one(HMono::one(), 8))
                .add(&KunnethClass::one(HMono::one(), 8).scale(&q(2)));
            let (r, c) = chchar_to_chern(&ch).map_err(|e| e.to_string())?;
            ensure(
                chern_to_chchar(&c, &r).map_err(|e| e.to_string())? == ch,
                || format!("ch -> c -> ch fails at g={genus}"),
            )?;
            trials += 2;
        }
    }
    for genus in 0..=3u32 {
        let curve = CurveModel::new(genus);
        let ell = curve.canonical_degree();
        for _ in 0..10 {
            let e = random_sheaf(&mut rng, &curve, 8);
            let back = e
                .twist(&ell)
                .and_then(|t| t.twist(&-ell.clone()))
                .map_err(|e| e.to_string())?;
            ensure(back == e, || {
                format!("twist by ±ℓ is not the identity at g={genus}")
            })?;
            let back = e
                .twist(&-ell.clone())
                .and_then(|t| t.twist(&ell))
                .map_err(|e| e.to_string())?;
            ensure(back == e, || {
                format!("twist by ∓ℓ is not the identity at g={genus}")
            })?;
            trials += 2;
        }
        for _ in 0..10 {
            let a = random_sheaf(&mut rng, &curve, 6);
            let b = random_sheaf(&mut rng, &curve, 6);
            let diff = k_difference(&a.direct_sum(&b), &b).map_err(|e| e.to_string())?;
            ensure(diff == a, || format!("c(A+B)/c(B) != c(A) at g={genus}"))?;
            trials += 1;
        }
    }
    Ok(format!("{trials} random identities"))
}

// ---------------------------------------------------------------- criterion 6

fn sequences(grid: &[NumClass], s: usize) -> Vec<Vec<NumClass>> {
    let mut out = vec![Vec::new()];
    for _ in 0..s {
        out = out
            .into_iter()
            .flat_map(|v| {
                grid.iter().map(move |c| {
                    let mut w = v.clone();
                    w.push(c.clone());
                    w
                })
            })
            .collect();
    }
    out
}

/// `P_1(c(𝔈_1)) ⋯ P_s(c(𝔈_s))` by direct substitution into the row sheaves.
fn restricted_payload(
    t: &JordanType,
    polys_by_row: &[HPoly],
    curve: &CurveModel,
    n: u32,
    unit: &StratumMono,
) -> Poly<StratumMono> {
    let rows = strata_sheaf_classes(t, curve, n).unwrap();
    polys_by_row
        .iter()
        .zip(&rows)
        .fold(Poly::monomial(unit.clone()), |acc, (p, row)| {
            let img = substitute(p, unit, n, |g| Ok(row.chern.component(g.x, 2 * g.i))).unwrap();
            acc.mul_truncated(&img, n)
        })
}

fn random_hpoly(rng: &mut ChaCha8Rng, curve: &CurveModel, n: u32) -> HPoly {
    let monos = HMono::all(curve, n);
    let mut p = Poly::zero();
    for _ in 0..3 {
        p.add_term(
            monos[rng.gen_range(0..monos.len())].clone(),
            q(rng.gen_range(-3..=3)),
        );
    }
    p
}

fn generation_formula() -> Check {
    let grid: Vec<NumClass> = (0..=1i64)
        .flat_map(|r| (-2..=2i64).map(move |d| NumClass::new(r, d)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut decodable, mut multiplicative) = (0u64, 0u64);
    for genus in 0..=2u32 {
        let curve = CurveModel::new(genus);
        for s in 1..=4 {
            for rows in sequences(&grid, s) {
                let Ok(t) = RowClasses::new(rows.clone()).to_type(&curve) else {
                    continue;
                };
                decodable += 1;
                let top_first: Vec<NumClass> = rows.iter().rev().cloned().collect();
                let units: Vec<GenClass> = top_first
                    .iter()
                    .map(|a| fundamental_class(a).unwrap())
                    .collect();
                let x = leading_product(&units, &curve, 4).map_err(|e| e.to_string())?;
                ensure(x.jordan_type() == &t, || {
                    format!("{rows:?} decoded to {}", x.jordan_type())
                })?;
                let unit = higgs_coha::grcoha::slot_units(x.kinds());
                ensure(*x.payload() == Poly::monomial(unit.clone()), || {
                    format!(
                        "unit product over {t} has payload {}",
                        x.payload().render(&curve)
                    )
                })?;

                let sheaves = strata_sheaf_classes(&t, &curve, 0).map_err(|e| e.to_string())?;
                for (i, (e, gamma)) in sheaves.iter().zip(&rows).enumerate() {
                    let got = e.numerical_class().map_err(|e| e.to_string())?;
                    ensure(&got == gamma, || {
                        format!("{t}: row {} has class {got}, want {gamma}", i + 1)
                    })?;
                }

                if s <= 3 && genus >= 1 && decodable % 7 == 0 {
                    let n = 3;
                    let by_row: Vec<HPoly> =
                        (0..s).map(|_| random_hpoly(&mut rng, &curve, 2)).collect();
                    let extra = random_hpoly(&mut rng, &curve, 1);
                    let k = rng.gen_range(0..s);
                    let lp = |polys: &[HPoly]| {
                        let factors: Vec<GenClass> = top_first
                            .iter()
                            .zip(polys.iter().rev())
                            .map(|(a, p)| GenClass::new(a.clone(), p.clone()).unwrap())
                            .collect();
                        leading_product(&factors, &curve, n).unwrap()
                    };
                    let got = lp(&by_row);
                    let want = restricted_payload(&t, &by_row, &curve, n, &unit);
                    ensure(*got.payload() == want, || {
                        format!("{t}: payload differs from P_1(c(E_1))⋯P_s(c(E_s))")
                    })?;
                    // P'·P_k in row k splits as (P_1, …, P_{k-1}, P', 1, …) times (1, …, P_k, …, P_s)
                    let mut joint = by_row.clone();
                    joint[k] = &extra * &by_row[k];
                    let mut low = vec![hpoly_one(); s];
                    low[..k].clone_from_slice(&by_row[..k]);
                    low[k] = extra.clone();
                    let mut high = by_row.clone();
                    high[..k].fill(hpoly_one());
                    let rhs = lp(&low).payload().mul_truncated(lp(&high).payload(), n);
                    ensure(*lp(&joint).payload() == rhs, || {
                        format!("{t}: payload is not multiplicative in row {}", k + 1)
                    })?;
                    multiplicative += 1;
                }
            }
        }
    }
    ensure(multiplicative > 0, || "no multiplicativity samples".into())?;
    Ok(format!(
        "{decodable} decodable sequences, {multiplicative} payload samples"
    ))
}

// ---------------------------------------------------------------- criterion 7

fn generation_shadow_suite() -> Check {
    let mut strata = 0;
    for genus in 0..=2u32 {
        let curve = CurveModel::new(genus);
        for d in 0..=4u64 {
            for t in enumerate_rank0(d) {
                let report = generation_shadow(&t, &curve, 4).map_err(|e| e.to_string())?;
                ensure(report.is_complete(), || {
                    format!("g={genus} {t}: {:?}", report.degrees)
                })?;
                ensure(report.degrees.len() == 5, || {
                    format!("{t}: degrees {:?}", report.degrees)
                })?;
                strata += 1;
            }
        }
    }
    Ok(format!("{strata} strata"))
}

// ---------------------------------------------------------------- criterion 8

fn dimension_bookkeeping() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..100 {
        let curve = CurveModel::new(rng.gen_range(0..=4));
        let s = rng.gen_range(1..=5);
        let rows: Vec<NumClass> = (0..s)
            .map(|_| NumClass::new(rng.gen_range(0..=4i64), rng.gen_range(-6..=6i64)))
            .collect();
        let got = RowClasses::new(rows.clone()).dim_q_correspondence(&curve);

        let dim = |a: &NumClass| -euler_higgs(a, a, &curve);
        let total: NumClass = rows.iter().sum();
        let ext = dim(&total) - rows.iter().map(dim).sum::<BigInt>();
        let mut pairwise = BigInt::zero();
        for i in 0..s {
            for j in i + 1..s {
                pairwise += euler_higgs(&rows[i], &rows[j], &curve);
            }
        }
        let pairwise = BigInt::from(-2) * pairwise;
        ensure(got == ext && got == pairwise, || {
            format!("trial {trial}: {got} vs {ext} vs {pairwise} for {rows:?}")
        })?;
        ensure(rows.iter().all(|a| dim_higgs(a, &curve) == dim(a)), || {
            "dim_higgs".into()
        })?;
    }
    Ok("100 row sequences".into())
}

// ----------------------------------------------------------------------------

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "Euler-form identity", Duration::from_secs(1), euler_grid),
        (
            2,
            "poset and dominance",
            Duration::from_secs(5),
            poset_suite,
        ),
        (3, "series oracles", Duration::from_secs(30), series_oracles),
        (4, "Hopf identities", Duration::from_secs(60), hopf_suite),
        (5, "Chern calculus", Duration::from_secs(10), chern_suite),
        (
            6,
            "generation formula",
            Duration::from_secs(30),
            generation_formula,
        ),
        (
            7,
            "gr-generation shadow",
            Duration::from_secs(60),
            generation_shadow_suite,
        ),
        (
            8,
            "dimension bookkeeping",
            Duration::from_secs(1),
            dimension_bookkeeping,
        ),
    ];
    let mut failed = 0;
    for (n, name, bound, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match (&outcome, elapsed <= bound) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over time bound")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} criterion {n} {name}: {detail} ({:.2}s, bound {}s)",
            elapsed.as_secs_f64(),
            bound.as_secs()
        );
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
