//! Acceptance suite: one PASS/FAIL line per criterion.

use std::time::Instant;

use gd2::algebra::{is_square_in_quadratic_field, roots_in_base, simplest_between, BaseField, Fe, Poly, QuadExtElement, SquareClass};
use gd2::brauer::{hilbert_global, hilbert_local, support};
use gd2::galois::{check_relations, classify_type, make_galois_data, GaloisData, GaloisType, TypeLabel};
use gd2::invariants::{absolute_invariant, standard_model};
use gd2::models::{build_model, twist_relation, Sign, TwistRelation};
use gd2::modular::{hauptmodul_h, verify_qcurve_identity, UpperHalfPoint};
use gd2::quotients::{cm_parameters, endomorphism_algebra, exceptional_parameters, is_cm_parameter, quotient_j_invariants, EndoKind};
use gd2::tower::is_curve_automorphism;
use gd2::{Case, Error};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn q() -> BaseField {
    BaseField::Rationals
}

fn one() -> SquareClass {
    SquareClass::trivial(q())
}

fn random_t(rng: &mut StdRng) -> Fe {
    loop {
        let t = q().frac(rng.gen_range(-50..=50), rng.gen_range(1..=50)).unwrap();
        if !t.is_zero() && t != q().frac(1, 4).unwrap() {
            return t;
        }
    }
}

fn random_data(rng: &mut StdRng, case: Case) -> GaloisData {
    let k = q();
    loop {
        let u = rng.gen_range(-20i64..=20);
        let v = rng.gen_range(-20i64..=20);
        if u == 0 || v == 0 {
            continue;
        }
        let w = [1i64, -1, 2, -2][rng.gen_range(0..4)];
        if let Ok(d) = make_galois_data(case, &k.int(u), &k.int(v), Some(&k.int(w))) {
            return d;
        }
    }
}

fn criterion_1(rng: &mut StdRng) -> Outcome {
    for _ in 0..100 {
        let t = random_t(rng);
        for case in [Case::D8, Case::D12] {
            let got = absolute_invariant(&standard_model(&t, case), case).map_err(|e| format!("t = {t}: {e}"))?;
            if got != t {
                return Err(format!("{case} t = {t} gave {got}"));
            }
        }
    }
    Ok("100 parameters, both cases".into())
}

fn criterion_2(rng: &mut StdRng) -> Outcome {
    let mut n = 0;
    for case in [Case::D8, Case::D12] {
        for _ in 0..100 {
            let d = random_data(rng, case);
            let signs: &[Sign] = if case == Case::D8 { &[Sign::Plus, Sign::Minus] } else { &[Sign::Plus] };
            for &sign in signs {
                let m = build_model(&d, sign, &one()).map_err(|e| format!("{d}: {e}"))?;
                let t = absolute_invariant(&m.f, case).map_err(|e| format!("{d}: {e}"))?;
                if t != d.u {
                    return Err(format!("{d} sign {sign}: invariant {t}"));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} models"))
}

fn criterion_3(rng: &mut StdRng) -> Outcome {
    for case in [Case::D8, Case::D12] {
        for _ in 0..25 {
            let d = random_data(rng, case);
            let m = build_model(&d, Sign::Plus, &one()).map_err(|e| e.to_string())?;
            let r = m.automorphisms().map_err(|e| e.to_string())?;
            if !check_relations(&r) {
                return Err(format!("{d}: relations fail"));
            }
            for g in [&r.u, &r.v] {
                if !is_curve_automorphism(&m.f, g).map_err(|e| e.to_string())? {
                    return Err(format!("{d}: {g} is not an automorphism"));
                }
            }
        }
    }
    Ok("25 data per case".into())
}

fn squarefree(n: i64) -> bool {
    let n = n.abs();
    (2..=n).take_while(|p| p * p <= n).all(|p| n % (p * p) != 0)
}

struct GridPoint {
    case: Case,
    u: i64,
    v: i64,
    w: i64,
    data: Option<GaloisData>,
}

fn grid() -> (Vec<GridPoint>, Vec<String>, usize) {
    let k = q();
    let vals: Vec<i64> = (-20..=20).filter(|&x| x != 0 && squarefree(x)).collect();
    let mut pts = Vec::new();
    let mut mismatches = Vec::new();
    let mut bound_failures = 0;
    for case in [Case::D8, Case::D12] {
        let ws: &[i64] = if case == Case::D8 { &[1, -1, 2, -2] } else { &[1] };
        for &u in &vals {
            for &v in &vals {
                for &w in ws {
                    let (uf, vf, wf) = (k.int(u), k.int(v), k.int(w));
                    let sym = gd2::galois::obstruction_symbol(case, &uf, &vf, &wf).unwrap();
                    let trivial = sym.is_trivial().unwrap();
                    let res = make_galois_data(case, &uf, &vf, Some(&wf));
                    if let Err(Error::SearchBoundExceeded(_)) = res {
                        bound_failures += 1;
                    }
                    if res.is_ok() != trivial {
                        let why = match &res {
                            Err(Error::NoStructure(_)) => "no point on the conic",
                            Err(_) => "error",
                            Ok(_) => "data despite obstruction",
                        };
                        mismatches.push(format!("{case} u={u} v={v} w={w} ({why})"));
                    }
                    pts.push(GridPoint { case, u, v, w, data: res.ok() });
                }
            }
        }
    }
    (pts, mismatches, bound_failures)
}

fn criterion_4(g: &(Vec<GridPoint>, Vec<String>, usize), secs: f64) -> Outcome {
    let (pts, mism, bf) = g;
    let d12_mism = mism.iter().filter(|m| m.starts_with("D12")).count();
    let conic = mism.iter().filter(|m| m.contains("no point on the conic")).count();
    let summary = format!(
        "{} grid points, {} mismatches ({} D8, {} D12; {} with trivial symbol but no point on the conic), {} search-bound failures, grid built in {secs:.2}s",
        pts.len(),
        mism.len(),
        mism.len() - d12_mism,
        d12_mism,
        conic,
        bf
    );
    if mism.is_empty() && *bf == 0 {
        Ok(summary)
    } else {
        Err(format!("{summary}; first: {}", mism.first().cloned().unwrap_or_default()))
    }
}

fn criterion_5(rng: &mut StdRng) -> Outcome {
    let k = q();
    let rand_q = |rng: &mut StdRng| loop {
        let n: i64 = rng.gen_range(-200..=200);
        let d: i64 = rng.gen_range(1..=60);
        if n != 0 {
            return BigRational::new(n.into(), d.into());
        }
    };
    for _ in 0..200 {
        let (a, b, c) = (rand_q(rng), rand_q(rng), rand_q(rng));
        let bc = &b * &c;
        let mut places = support(&a, &bc).map_err(|e| e.to_string())?;
        places.extend(support(&a, &b).map_err(|e| e.to_string())?);
        places.extend(support(&a, &c).map_err(|e| e.to_string())?);
        places.sort();
        places.dedup();
        let l = |x: &BigRational, y: &BigRational, p| hilbert_local(x, y, p).unwrap();
        let mut prod = 1;
        for p in &places {
            if l(&a, &b, p) != l(&b, &a, p) {
                return Err(format!("symmetry fails for ({a}, {b}) at {p}"));
            }
            if l(&a, &bc, p) != l(&a, &b, p) * l(&a, &c, p) {
                return Err(format!("bilinearity fails for {a}, {b}, {c} at {p}"));
            }
            if l(&a, &(-&a), p) != 1 {
                return Err(format!("({a}, -{a}) nontrivial at {p}"));
            }
            prod *= l(&a, &b, p);
        }
        if prod != 1 {
            return Err(format!("product formula fails for ({a}, {b})"));
        }
        let fa = k.rational(&a).unwrap();
        if !hilbert_global(&fa, &(-&fa)).unwrap() {
            return Err(format!("({a}, -{a}) nontrivial"));
        }
    }
    Ok("200 random pairs".into())
}

// ---- twist oracle ----

fn rho(d: &GaloisData) -> QuadExtElement {
    let k = q();
    let half = k.frac(1, 2).unwrap();
    QuadExtElement::new(&d.w * &half, -&(&(&d.w * &d.z) * &half), d.u.clone())
}

/// D8: the fields k(sqrt u, sqrt v, sqrt rho) agree (Kummer theory over k(sqrt u)).
fn same_field_d8(a: &GaloisData, b: &GaloisData) -> bool {
    let p = rho(a).mul(&rho(b));
    let vv = QuadExtElement::new(a.v.clone(), q().zero(), a.u.clone());
    is_square_in_quadratic_field(&p).is_some() || is_square_in_quadratic_field(&p.mul(&vv)).is_some()
}

fn cubic(d: &GaloisData) -> Poly<Fe> {
    let k = q();
    Poly::new(
        vec![-&(&d.z / k.int(4)), -&(&(&k.int(3) * &d.u) / k.int(4)), k.zero(), k.one()],
        k.zero(),
    )
}

fn complex_roots(f: &Poly<Fe>) -> [Complex64; 3] {
    let c: Vec<f64> = f.coeffs().iter().map(|x| x.to_f64()).collect();
    let ev = |x: Complex64| ((x + c[2]) * x + c[1]) * x + c[0];
    let mut r = [Complex64::new(0.4, 0.9), Complex64::new(0.4, 0.9).powi(2), Complex64::new(0.4, 0.9).powi(3)];
    for _ in 0..500 {
        for i in 0..3 {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..3 {
                if i != j {
                    den *= r[i] - r[j];
                }
            }
            r[i] -= ev(r[i]) / den;
        }
    }
    r
}

fn recognize(x: f64) -> BigRational {
    let eps = 1e-9 * x.abs().max(1.0);
    let lo = BigRational::from_float(x - eps).unwrap();
    let hi = BigRational::from_float(x + eps).unwrap();
    simplest_between(&lo, &hi)
}

/// D12: the cubic fields agree, searched by expressing a root of one cubic as a
/// quadratic polynomial in a root of the other and verifying exactly.
fn same_field_d12(a: &GaloisData, b: &GaloisData) -> bool {
    let (fa, fb) = (cubic(a), cubic(b));
    let (ra, rb) = (!roots_in_base(&fa).is_empty(), !roots_in_base(&fb).is_empty());
    if ra || rb {
        return ra && rb;
    }
    let al = complex_roots(&fa);
    let be = complex_roots(&fb);
    let k = q();
    for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        // Vandermonde solve by Cramer's rule
        let m = |i: usize| [Complex64::new(1.0, 0.0), al[i], al[i] * al[i]];
        let rows = [m(0), m(1), m(2)];
        let rhs = [be[perm[0]], be[perm[1]], be[perm[2]]];
        let det3 = |r: [[Complex64; 3]; 3]| {
            r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
        };
        let d = det3(rows);
        let coef: Vec<BigRational> = (0..3)
            .map(|c| {
                let mut r = rows;
                for i in 0..3 {
                    r[i][c] = rhs[i];
                }
                recognize((det3(r) / d).re)
            })
            .collect();
        let g = Poly::new(coef.iter().map(|x| k.rational(x).unwrap()).collect(), k.zero());
        if fb.compose(&g).rem(&fa).map(|r| r.is_zero()).unwrap_or(false) {
            return true;
        }
    }
    false
}

fn same_field(a: &GaloisData, b: &GaloisData) -> bool {
    match a.case {
        Case::D8 => same_field_d8(a, b),
        Case::D12 => same_field_d12(a, b),
    }
}

/// Another point on the conic through d, along a line of slope m.
fn other_point(d: &GaloisData, m: i64) -> Option<GaloisData> {
    let k = q();
    let m = k.int(m);
    let (c1, c2, c0) = match d.case {
        Case::D8 => (d.u.clone(), &d.u * &d.v, k.one()),
        Case::D12 => (k.one(), &k.int(3) * &d.v, &d.u * &(&d.u * &d.u)),
    };
    let _ = c0;
    let den = &c1 + &(&c2 * &(&m * &m));
    let num = &k.int(-2) * &(&(&c1 * &d.z) + &(&(&c2 * &d.s) * &m));
    let l = num.try_div(&den).ok()?;
    let z = &d.z + &l;
    let s = &d.s + &(&m * &l);
    GaloisData::new(d.case, d.u.clone(), d.v.clone(), z, d.w.clone(), s).ok()
}

/// Square classes d with the twist by d isomorphic to the model.
fn oracle_twist_classes(d: &GaloisData) -> Vec<SquareClass> {
    let k = q();
    let cls = |x: &Fe| SquareClass::of(x).unwrap();
    let mut gens = Vec::new();
    match d.case {
        Case::D8 => {
            gens.push(cls(&d.v));
            if let Some(r) = d.u.sqrt() {
                let half = k.frac(1, 2).unwrap();
                let m = &(&d.w * &half) * &(&k.one() - &(&d.z * &r));
                let m = if m.is_zero() { &(&d.w * &half) * &(&k.one() + &(&d.z * &r)) } else { m };
                gens.push(cls(&m));
            }
        }
        Case::D12 => {
            if !roots_in_base(&cubic(d)).is_empty() {
                gens.push(cls(&d.u));
            }
        }
    }
    let mut out = vec![one()];
    for g in gens {
        let more: Vec<SquareClass> = out.iter().map(|x| x.mul(&g)).collect();
        for x in more {
            if !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

fn criterion_6(rng: &mut StdRng) -> Outcome {
    let k = q();
    let twists = [1i64, -1, 2, 3, -3, 5, 6, -6];
    let mut counts = [0usize; 4];
    let mut different = 0;
    for i in 0..50 {
        let case = if i % 2 == 0 { Case::D8 } else { Case::D12 };
        let a = random_data(rng, case);
        let kind = i / 2 % 4;
        let pick = |rng: &mut StdRng| SquareClass::of(&k.int(twists[rng.gen_range(0..twists.len())])).unwrap();
        let (da, db) = (pick(rng), pick(rng));
        let ma = build_model(&a, Sign::Plus, &da).map_err(|e| e.to_string())?;
        let ctx = |r: &TwistRelation| format!("{a} kind {kind}: got {r}");
        match kind {
            // twist pairs
            0 => {
                let mb = build_model(&a, Sign::Plus, &db).map_err(|e| e.to_string())?;
                let r = twist_relation(&ma, &mb).map_err(|e| e.to_string())?;
                let expect_iso = oracle_twist_classes(&a).contains(&da.mul(&db));
                let ok = match &r {
                    TwistRelation::Identical => da == db,
                    TwistRelation::Hyperelliptic(_) => r.is_isomorphic() == expect_iso,
                    _ => false,
                };
                if !ok {
                    return Err(ctx(&r));
                }
            }
            // sign flips
            1 if case == Case::D8 => {
                let mb = build_model(&a, Sign::Minus, &da).map_err(|e| e.to_string())?;
                let r = twist_relation(&ma, &mb).map_err(|e| e.to_string())?;
                let v = SquareClass::of(&a.v).unwrap();
                let k2_trivial = v.is_trivial() || v == SquareClass::of(&a.u).unwrap();
                let hyper = matches!(r, TwistRelation::Hyperelliptic(_) | TwistRelation::Identical);
                if hyper != k2_trivial || r == TwistRelation::Inequivalent {
                    return Err(ctx(&r));
                }
            }
            // other points of the conic, same (u, v)
            1 | 2 => {
                let Some(b) = other_point(&a, rng.gen_range(-3..=3)) else { continue };
                if b.u == k.frac(1, 4).unwrap() {
                    continue;
                }
                let mb = build_model(&b, Sign::Plus, &db).map_err(|e| e.to_string())?;
                let r = twist_relation(&ma, &mb).map_err(|e| format!("{a} vs {b}: {e}"))?;
                let same = same_field(&a, &b);
                if (r != TwistRelation::Inequivalent) != same {
                    return Err(format!("{a} vs {b}: {r}, oracle {same}"));
                }
                different += usize::from(!same);
            }
            // different (u, v)
            _ => {
                let b = random_data(rng, case);
                let mb = build_model(&b, Sign::Plus, &db).map_err(|e| e.to_string())?;
                let r = twist_relation(&ma, &mb).map_err(|e| e.to_string())?;
                let same_uv = a.u == b.u && SquareClass::of(&a.v).unwrap() == SquareClass::of(&b.v).unwrap();
                let expect_inequivalent = !same_uv || !same_field(&a, &b);
                if (r == TwistRelation::Inequivalent) != expect_inequivalent {
                    return Err(format!("{a} vs {b}: {r}"));
                }
            }
        }
        counts[kind] += 1;
    }
    Ok(format!(
        "50 pairs: {} twist, {} sign/conic, {} conic ({} with different fields), {} unrelated",
        counts[0], counts[1], counts[2], different, counts[3]
    ))
}

fn criterion_7() -> Outcome {
    for case in [Case::D8, Case::D12] {
        for t in exceptional_parameters(case) {
            let p = quotient_j_invariants(&t, case).map_err(|e| e.to_string())?;
            if !p.is_rational() {
                return Err(format!("{case} t = {t}: j not rational"));
            }
        }
    }
    let cm: usize = [Case::D8, Case::D12]
        .iter()
        .map(|&c| cm_parameters(c).iter().filter(|t| is_cm_parameter(t, c)).count())
        .sum();
    if cm != 26 {
        return Err(format!("{cm} of 26 CM parameters accepted"));
    }
    // direct substitution of sqrt t = 1/4
    let r = BigRational::new(1.into(), 4.into());
    let n = |x: i64| BigRational::from_integer(BigInt::from(x));
    let j = |r: &BigRational| {
        let a = n(3) - n(10) * r;
        let b = n(1) - n(2) * r;
        let c = n(1) + n(2) * r;
        n(64) * &a * &a * &a / (b * &c * &c)
    };
    let want = (q().rational(&j(&r)).unwrap(), q().rational(&j(&-&r)).unwrap());
    let got = quotient_j_invariants(&q().frac(1, 16).unwrap(), Case::D8).unwrap().rational_values();
    if got.as_ref() != Some(&want) {
        return Err(format!("t = 1/16: {got:?} vs {want:?}"));
    }
    Ok(format!("3 exceptional values rational, 26 CM values, t = 1/16 gives ({}, {})", want.0, want.1))
}

fn criterion_8(rng: &mut StdRng) -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let tau = UpperHalfPoint::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.5)).unwrap();
        let n = 2 + (i % 2) as u32;
        let r = verify_qcurve_identity(tau, n, 1e-6).map_err(|e| e.to_string())?;
        worst = worst.max(r.error);
        if !r.pass {
            return Err(format!("tau = {tau}, N = {n}: error {}", r.error));
        }
    }
    let h0 = hauptmodul_h(UpperHalfPoint::new(0.0, 1.0).unwrap(), 2).unwrap().h0;
    if (h0 - 520.0).norm() > 1e-8 {
        return Err(format!("h0(i) = {h0}"));
    }
    Ok(format!("20 points, worst error {worst:.2e}, h0(i) = 520"))
}

fn criterion_9(g: &(Vec<GridPoint>, Vec<String>, usize)) -> Outcome {
    use EndoKind::*;
    use TypeLabel::*;
    let d8 = [
        (I, M2Q),
        (C2A, QuadField(-1)),
        (C2B, QxQ),
        (C2C, QuadField(2)),
        (C4, QuadField(-1)),
        (V4, QOnly),
        (D8, QOnly),
    ];
    let d12 = [
        (I, M2Q),
        (C2A, QuadField(-3)),
        (C2B, QxQ),
        (C2C, QuadField(3)),
        (C3, QuadField(-3)),
        (C6, QuadField(-3)),
        (V4, QOnly),
        (D6A, QOnly),
        (D12, QOnly),
    ];
    let mut rows = 0;
    for (case, table) in [(Case::D8, &d8[..]), (Case::D12, &d12[..])] {
        for &(label, kind) in table {
            let Ok(gt) = GaloisType::new(case, label) else { continue };
            let e = endomorphism_algebra(&gt, None, None).map_err(|e| e.to_string())?;
            if e.kind != kind {
                return Err(format!("{case} {label}: {} instead of {kind}", e.kind));
            }
            rows += 1;
        }
    }
    // conditions hold on every structure that exists on the grid
    let k = q();
    let mut checked = 0;
    for p in &g.0 {
        let Some(d) = &p.data else { continue };
        if p.u * 4 == 1 {
            continue;
        }
        let (gt, _) = classify_type(d).map_err(|e| e.to_string())?;
        let e = endomorphism_algebra(&gt, Some(&k.int(p.u)), Some(&k.int(p.w))).map_err(|e| e.to_string())?;
        if let Some(h) = e.condition_holds {
            checked += 1;
            if !h {
                return Err(format!(
                    "{} u={} v={} w={} type {}: condition {} fails",
                    p.case,
                    p.u,
                    p.v,
                    p.w,
                    gt,
                    e.condition.unwrap()
                ));
            }
        }
    }
    Ok(format!("{rows} table rows, {checked} conditions checked on the grid"))
}

fn main() {
    let mut failed = 0;
    let mut report = |n: usize, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(m) => println!("criterion {n}: PASS ({secs:.2}s) {m}"),
            Err(m) => {
                failed += 1;
                println!("criterion {n}: FAIL ({secs:.2}s) {m}")
            }
        }
    };
    report(1, &mut || criterion_1(&mut StdRng::seed_from_u64(1)));
    report(2, &mut || criterion_2(&mut StdRng::seed_from_u64(2)));
    report(3, &mut || criterion_3(&mut StdRng::seed_from_u64(3)));
    let t = Instant::now();
    let g = grid();
    let grid_secs = t.elapsed().as_secs_f64();
    report(4, &mut || criterion_4(&g, grid_secs));
    report(5, &mut || criterion_5(&mut StdRng::seed_from_u64(5)));
    report(6, &mut || criterion_6(&mut StdRng::seed_from_u64(6)));
    report(7, &mut criterion_7);
    report(8, &mut || criterion_8(&mut StdRng::seed_from_u64(8)));
    report(9, &mut || criterion_9(&g));
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
