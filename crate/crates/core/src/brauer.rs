use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebra::{factorize, jacobi, squarefree_part, BaseField, Fe};
use crate::error::{Error, Result};
use crate::settings;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Prime(BigUint),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

fn valuation(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut v = 0;
    let mut m = n.clone();
    while (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    (v, m)
}

fn mod_small(n: &BigInt, m: u32) -> u32 {
    n.mod_floor(&BigInt::from(m)).to_u32().unwrap()
}

/// Local Hilbert symbol of two nonzero rationals.
pub fn hilbert_local(a: &BigRational, b: &BigRational, place: &Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    // numer*denom has the same square class and is an integer
    let a = a.numer() * a.denom();
    let b = b.numer() * b.denom();
    match place {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(p) if p == &BigUint::from(2u32) => {
            let two = BigInt::from(2);
            let (al, u) = valuation(&a, &two);
            let (be, v) = valuation(&b, &two);
            let eps = |x: &BigInt| if mod_small(x, 4) == 3 { 1 } else { 0 };
            let omega = |x: &BigInt| {
                let r = mod_small(x, 8);
                if r == 3 || r == 5 {
                    1
                } else {
                    0
                }
            };
            let e = eps(&u) * eps(&v) + al * omega(&v) + be * omega(&u);
            Ok(if e % 2 == 0 { 1 } else { -1 })
        }
        Place::Prime(p) => {
            let pi = BigInt::from(p.clone());
            let (al, u) = valuation(&a, &pi);
            let (be, v) = valuation(&b, &pi);
            let eps_p = mod_small(&((&pi - 1) / 2), 2);
            let mut s = if (al * be * eps_p) % 2 == 1 { -1 } else { 1 };
            if be % 2 == 1 {
                s *= jacobi(&u, p);
            }
            if al % 2 == 1 {
                s *= jacobi(&v, p);
            }
            Ok(s)
        }
    }
}

/// Places where the symbol can be nontrivial: 2, infinity and primes dividing a or b.
pub fn support(a: &BigRational, b: &BigRational) -> Result<Vec<Place>> {
    let mut primes: Vec<BigUint> = vec![BigUint::from(2u32)];
    for x in [a, b] {
        let s = squarefree_part(x)?;
        for (p, _) in factorize(s.magnitude())? {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.sort();
    let mut out: Vec<Place> = primes.into_iter().map(Place::Prime).collect();
    out.push(Place::Infinity);
    Ok(out)
}

/// The class (a, b) in the 2-torsion of the Brauer group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionSymbol {
    pub a: Fe,
    pub b: Fe,
}

impl QuaternionSymbol {
    pub fn new(a: Fe, b: Fe) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(QuaternionSymbol { a, b })
    }

    /// Places with local symbol -1.
    pub fn ramified_places(&self) -> Result<Vec<Place>> {
        match (&self.a, &self.b) {
            (Fe::Q(a), Fe::Q(b)) => {
                let mut out = Vec::new();
                for pl in support(a, b)? {
                    if hilbert_local(a, b, &pl)? == -1 {
                        out.push(pl);
                    }
                }
                Ok(out)
            }
            // every quaternion algebra over a finite field splits
            _ => Ok(vec![]),
        }
    }

    pub fn is_trivial(&self) -> Result<bool> {
        Ok(self.ramified_places()?.is_empty())
    }
}

impl fmt::Display for QuaternionSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Global triviality of (a, b).
pub fn hilbert_global(a: &Fe, b: &Fe) -> Result<bool> {
    QuaternionSymbol::new(a.clone(), b.clone())?.is_trivial()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonZero {
    Any,
    Second,
    Both,
}

/// A solution of a x^2 + b z^2 = target, None when provably unsolvable.
pub fn solve_conic(a: &Fe, b: &Fe, target: &Fe) -> Result<Option<(Fe, Fe)>> {
    solve_conic_with(a, b, target, NonZero::Any)
}

pub fn solve_conic_with(a: &Fe, b: &Fe, target: &Fe, req: NonZero) -> Result<Option<(Fe, Fe)>> {
    if a.is_zero() || b.is_zero() || target.is_zero() {
        return Err(Error::ZeroInput);
    }
    let k = a.field();
    match k {
        BaseField::Prime(p) => Ok(solve_conic_fp(a, b, target, req, p)),
        BaseField::Rationals => {
            let an = a / target;
            let bn = b / target;
            if !hilbert_global(&an, &bn)? {
                return Ok(None);
            }
            // an = sa * alpha^2, bn = sb * beta^2
            let sa = squarefree_part(an.as_rational().unwrap())?;
            let sb = squarefree_part(bn.as_rational().unwrap())?;
            let alpha = (&an / &k.rational(&BigRational::from_integer(sa.clone()))?).sqrt().unwrap();
            let beta = (&bn / &k.rational(&BigRational::from_integer(sb.clone()))?).sqrt().unwrap();
            let (p, q, w) = search_ternary(&sa, &sb, req)?;
            let wq = BigRational::from_integer(w);
            let x = Fe::Q(BigRational::from_integer(p) / &wq) / alpha;
            let z = Fe::Q(BigRational::from_integer(q) / &wq) / beta;
            debug_assert_eq!(&(&(a * &(&x * &x)) + &(b * &(&z * &z))), target);
            Ok(Some((x, z)))
        }
    }
}

/// Smallest-shell (p, q, w) with sa p^2 + sb q^2 = w^2, w > 0.
fn search_ternary(sa: &BigInt, sb: &BigInt, req: NonZero) -> Result<(BigInt, BigInt, BigInt)> {
    let h = settings::search_bound();
    for n in 1..=h {
        for qq in 0..=n {
            let lo = if qq < n { n } else { 0 };
            for pp in lo..=n {
                match req {
                    NonZero::Second if qq == 0 => continue,
                    NonZero::Both if qq == 0 || pp == 0 => continue,
                    _ => {}
                }
                let p = BigInt::from(pp);
                let q = BigInt::from(qq);
                let s = sa * &p * &p + sb * &q * &q;
                if !s.is_positive() {
                    continue;
                }
                let r = s.sqrt();
                if &r * &r == s {
                    return Ok((p, q, r));
                }
            }
        }
    }
    Err(Error::SearchBoundExceeded(h))
}

fn solve_conic_fp(a: &Fe, b: &Fe, t: &Fe, req: NonZero, p: u64) -> Option<(Fe, Fe)> {
    let k = BaseField::Prime(p);
    for xi in 0..p {
        let x = k.int(xi as i64);
        if req == NonZero::Both && x.is_zero() {
            continue;
        }
        let r = (t - &(a * &(&x * &x))) / b.clone();
        if let Some(z) = r.sqrt() {
            if req != NonZero::Any && z.is_zero() {
                continue;
            }
            return Some((x, z));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn global_examples() {
        let k = BaseField::Rationals;
        assert!(!hilbert_global(&k.int(-1), &k.int(-1)).unwrap());
        assert!(hilbert_global(&k.int(2), &k.int(-1)).unwrap());
        assert!(hilbert_global(&k.int(1), &k.int(-7)).unwrap());
        let r = QuaternionSymbol::new(k.int(-1), k.int(-1)).unwrap().ramified_places().unwrap();
        assert_eq!(r, vec![Place::Prime(2u32.into()), Place::Infinity]);
    }

    #[test]
    fn local_values() {
        assert_eq!(hilbert_local(&q(3), &q(3), &Place::Prime(3u32.into())).unwrap(), -1);
        assert_eq!(hilbert_local(&q(2), &q(5), &Place::Prime(5u32.into())).unwrap(), -1);
        assert_eq!(hilbert_local(&q(2), &q(7), &Place::Prime(7u32.into())).unwrap(), 1);
        assert_eq!(hilbert_local(&q(-1), &q(3), &Place::Prime(2u32.into())).unwrap(), -1);
    }

    #[test]
    fn conic_examples() {
        let k = BaseField::Rationals;
        let one = k.one();
        assert_eq!(solve_conic(&one, &one, &one).unwrap(), Some((k.one(), k.zero())));
        let half = k.frac(1, 2).unwrap();
        assert_eq!(solve_conic(&k.int(2), &k.int(2), &one).unwrap(), Some((half.clone(), half)));
        assert_eq!(solve_conic(&k.int(3), &k.int(3), &one).unwrap(), None);
    }

    #[test]
    fn conic_over_fp() {
        let k = BaseField::prime(7).unwrap();
        let (x, z) = solve_conic_with(&k.int(3), &k.int(5), &k.int(1), NonZero::Both).unwrap().unwrap();
        assert!(!x.is_zero() && !z.is_zero());
        assert_eq!(&(&k.int(3) * &(&x * &x)) + &(&k.int(5) * &(&z * &z)), k.one());
    }
}
