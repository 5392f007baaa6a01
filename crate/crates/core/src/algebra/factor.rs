use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{legendre_u64, BaseField, Fe};
use crate::error::{Error, Result};
use crate::settings;

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &b in &MR_BASES {
        if n == b {
            return true;
        }
        if n.is_multiple_of(b) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &MR_BASES[..12] {
        let mut x = super::field::powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = super::field::mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with the first thirteen prime bases.
/// Deterministic below 3.3 * 10^24.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(m) = n.to_u64() {
        return is_prime_u64(m);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'outer: for &a in &MR_BASES {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn mr_is_deterministic(n: &BigUint) -> bool {
    let limit: BigUint = "3317044064679887385961981".parse().unwrap();
    n < &limit
}

/// Prime factorization of a positive integer by trial division up to the
/// configured bound, with primality checks on the cofactor.
pub fn factorize(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    factor_inner(n, false)
}

fn factor_inner(n: &BigUint, allow_semiprime: bool) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let bound = settings::factor_bound();
    let mut out = Vec::new();
    let mut m = n.clone();
    let push = |out: &mut Vec<(BigUint, u32)>, p: BigUint, e: u32| {
        if e > 0 {
            out.push((p, e));
        }
    };
    for p in [2u64, 3] {
        let mut e = 0;
        let bp = BigUint::from(p);
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        push(&mut out, bp, e);
    }
    let mut p: u64 = 5;
    let mut step = 2;
    while p <= bound {
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        push(&mut out, bp, e);
        p += step;
        step = 6 - step;
    }
    if m.is_one() {
        return Ok(out);
    }
    let b = BigUint::from(p);
    if &b * &b > m {
        out.push((m, 1));
        return Ok(out);
    }
    if is_probable_prime(&m) {
        if mr_is_deterministic(&m) || &b * &b * &b > m {
            out.push((m, 1));
            return Ok(out);
        }
        return Err(Error::FactorizationTooHard(m.to_string()));
    }
    if &b * &b * &b > m {
        // no prime factor below b, so m is a product of two primes
        let r = m.sqrt();
        if &r * &r == m {
            out.push((r, 2));
            return Ok(out);
        }
        if allow_semiprime {
            // distinct primes p*q: contributes to the squarefree part as a whole
            out.push((m, 1));
            return Ok(out);
        }
    }
    Err(Error::FactorizationTooHard(m.to_string()))
}

/// Squarefree integer representing the square class of a nonzero rational.
pub fn squarefree_part(q: &BigRational) -> Result<BigInt> {
    if q.is_zero() {
        return Err(Error::ZeroInput);
    }
    let n = q.numer() * q.denom();
    let sign = n.sign();
    let mut r = BigUint::one();
    for (p, e) in factor_inner(n.magnitude(), true)? {
        if e % 2 == 1 {
            r *= p;
        }
    }
    Ok(BigInt::from_biguint(if sign == Sign::Minus { Sign::Minus } else { Sign::Plus }, r))
}

/// Class of a nonzero element in k^*/k^*2.
/// Over Q the representative is a squarefree integer, over F_p it is 1 or the
/// least nonresidue.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SquareClass {
    field: BaseField,
    rep: BigInt,
}

impl SquareClass {
    pub fn of(x: &Fe) -> Result<SquareClass> {
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        let field = x.field();
        let rep = match x {
            Fe::Q(q) => squarefree_part(q)?,
            Fe::Fp { v, p } => {
                if legendre_u64(*v, *p) == 1 {
                    BigInt::one()
                } else {
                    BigInt::from(field.least_nonresidue().unwrap())
                }
            }
        };
        Ok(SquareClass { field, rep })
    }

    pub fn trivial(field: BaseField) -> SquareClass {
        SquareClass { field, rep: BigInt::one() }
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn rep(&self) -> &BigInt {
        &self.rep
    }

    pub fn is_trivial(&self) -> bool {
        self.rep.is_one()
    }

    pub fn to_fe(&self) -> Fe {
        self.field
            .rational(&BigRational::from_integer(self.rep.clone()))
            .expect("representative is a unit")
    }

    pub fn mul(&self, o: &SquareClass) -> SquareClass {
        assert_eq!(self.field, o.field);
        match self.field {
            BaseField::Rationals => {
                let g = self.rep.gcd(&o.rep);
                let rep = (&self.rep / &g) * (&o.rep / &g);
                SquareClass { field: self.field, rep }
            }
            BaseField::Prime(_) => {
                if self.is_trivial() == o.is_trivial() {
                    SquareClass::trivial(self.field)
                } else if self.is_trivial() {
                    o.clone()
                } else {
                    self.clone()
                }
            }
        }
    }

    pub fn abs_rep(&self) -> BigInt {
        self.rep.abs()
    }
}

impl std::fmt::Display for SquareClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.rep)
    }
}
