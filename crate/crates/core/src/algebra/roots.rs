use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{BaseField, Fe, Poly};

/// Distinct roots in the base field, sorted.
pub fn roots_in_base(f: &Poly<Fe>) -> Vec<Fe> {
    if f.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let mut out = match f.lc().field() {
        BaseField::Rationals => rational_roots(f),
        BaseField::Prime(p) => prime_field_roots(f, p),
    };
    out.sort_by_key(|a| a.lift());
    out.dedup();
    out
}

fn squarefree_core(f: &Poly<Fe>) -> Poly<Fe> {
    let d = f.derivative();
    if d.is_zero() {
        return f.monic();
    }
    let g = f.gcd(&d);
    f.divrem(&g).unwrap().0.monic()
}

/// Sign of f(x) for rational x.
fn sign_at(f: &[BigRational], x: &BigRational) -> i32 {
    let mut acc = BigRational::zero();
    for c in f.iter().rev() {
        acc = acc * x + c;
    }
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

fn variations(chain: &[Vec<BigRational>], x: &BigRational) -> usize {
    let mut last = 0;
    let mut n = 0;
    for p in chain {
        let s = sign_at(p, x);
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

/// Simplest rational in the closed interval [lo, hi], lo <= hi.
pub fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if fl == *lo {
        return lo.clone();
    }
    if fl + BigRational::one() <= *hi {
        return lo.ceil();
    }
    let fl = lo.floor();
    let a = lo - &fl;
    let b = hi - &fl;
    // 1/b <= 1/x <= 1/a
    let inner = simplest_between(&b.recip(), &a.recip());
    fl + inner.recip()
}

fn rational_roots(f: &Poly<Fe>) -> Vec<Fe> {
    let g = squarefree_core(f);
    let coeffs: Vec<BigRational> = g.coeffs().iter().map(|c| c.lift()).collect();
    let mut out = Vec::new();
    let mut coeffs = coeffs;
    if coeffs[0].is_zero() {
        out.push(Fe::Q(BigRational::zero()));
        coeffs.remove(0);
    }
    if coeffs.len() <= 1 {
        return out;
    }
    // primitive integer form to bound denominators of roots
    let lcm = coeffs.iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let lead = ints.last().unwrap().abs();
    let maxc = ints.iter().map(|c| c.abs()).max().unwrap();
    let bound = BigRational::new(maxc, lead.clone()) + BigRational::one();
    let width = BigRational::new(BigInt::one(), &lead * &lead);

    let to_poly = |v: &Vec<BigRational>| {
        Poly::new(v.iter().cloned().map(Fe::Q).collect(), Fe::Q(BigRational::zero()))
    };
    let p0 = to_poly(&coeffs);
    let mut chain = vec![p0.clone(), p0.derivative()];
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]).unwrap();
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    let chain: Vec<Vec<BigRational>> =
        chain.iter().map(|p| p.coeffs().iter().map(|c| c.lift()).collect()).collect();

    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let count = variations(&chain, &lo) as i64 - variations(&chain, &hi) as i64;
        if count <= 0 {
            continue;
        }
        if count == 1 && &hi - &lo < width {
            let cand = simplest_between(&lo, &hi);
            if sign_at(&coeffs, &cand) == 0 {
                out.push(Fe::Q(cand));
            }
            continue;
        }
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out
}

fn prime_field_roots(f: &Poly<Fe>, p: u64) -> Vec<Fe> {
    let k = BaseField::Prime(p);
    if p <= 2000 {
        return (0..p as i64).map(|a| k.int(a)).filter(|a| f.eval(a).is_zero()).collect();
    }
    let x = Poly::x(&k.zero());
    let g = f.monic();
    let xp = x.powmod(p, &g);
    let split = g.gcd(&xp.sub(&x));
    let mut out = Vec::new();
    split_linear(&split, p, 0, &mut out);
    out
}

fn split_linear(g: &Poly<Fe>, p: u64, start: i64, out: &mut Vec<Fe>) {
    let k = BaseField::Prime(p);
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            out.push(-(g.coeff(0) / g.coeff(1)));
            return;
        }
        _ => {}
    }
    let mut delta = start;
    loop {
        let shift = Poly::new(vec![k.int(delta), k.one()], k.zero());
        let h = shift.powmod((p - 1) / 2, g).sub(&Poly::one(&k.zero()));
        let d = g.gcd(&h);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && dd < g.degree().unwrap() {
            let rest = g.divrem(&d).unwrap().0;
            split_linear(&d, p, delta + 1, out);
            split_linear(&rest, p, delta + 1, out);
            return;
        }
        delta += 1;
    }
}
