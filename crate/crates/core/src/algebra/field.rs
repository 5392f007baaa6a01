use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor::is_prime_u64;
use super::Field;
use crate::error::{Error, Result};

/// The ground field: the rationals or a prime field of odd characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

impl BaseField {
    pub fn prime(p: u64) -> Result<BaseField> {
        if p == 2 {
            return Err(Error::UnsupportedCharacteristic(2));
        }
        if !is_prime_u64(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(BaseField::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::Rationals => 0,
            BaseField::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Fe {
        self.int(0)
    }

    pub fn one(&self) -> Fe {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Fe {
        match self {
            BaseField::Rationals => Fe::Q(BigRational::from_integer(BigInt::from(n))),
            BaseField::Prime(p) => Fe::Fp { v: reduce_i128(n as i128, *p), p: *p },
        }
    }

    pub fn frac(&self, n: i64, d: i64) -> Result<Fe> {
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        self.rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// Image of a rational number; fails over F_p when p divides the denominator.
    pub fn rational(&self, q: &BigRational) -> Result<Fe> {
        match self {
            BaseField::Rationals => Ok(Fe::Q(q.clone())),
            BaseField::Prime(p) => {
                let n = reduce_big(q.numer(), *p);
                let d = reduce_big(q.denom(), *p);
                if d == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Fe::Fp { v: mulmod(n, inv_mod(d, *p), *p), p: *p })
            }
        }
    }

    pub fn parse(&self, s: &str) -> Result<Fe> {
        let q = parse_rational(s)?;
        self.rational(&q)
    }

    /// Parses "q", "Q", "fp:7" or "F7".
    pub fn parse_spec(s: &str) -> Result<BaseField> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "qq" || t == "rationals" {
            return Ok(BaseField::Rationals);
        }
        let digits = t
            .strip_prefix("fp:")
            .or_else(|| t.strip_prefix("f_"))
            .or_else(|| t.strip_prefix('f'))
            .ok_or_else(|| Error::Parse(format!("unknown field '{s}'")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field '{s}'")))?;
        BaseField::prime(p).map_err(|e| match e {
            Error::Invalid(m) => Error::Parse(m),
            other => other,
        })
    }

    /// Least quadratic nonresidue, or None over Q.
    pub fn least_nonresidue(&self) -> Option<u64> {
        match self {
            BaseField::Rationals => None,
            BaseField::Prime(p) => (2..*p).find(|&a| legendre_u64(a, *p) == -1),
        }
    }

    pub fn name(&self) -> String {
        match self {
            BaseField::Rationals => "Q".to_string(),
            BaseField::Prime(p) => format!("F_{p}"),
        }
    }
}

/// Exact element of a base field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Fe {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl Fe {
    pub fn field(&self) -> BaseField {
        match self {
            Fe::Q(_) => BaseField::Rationals,
            Fe::Fp { p, .. } => BaseField::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Fe::Q(q) => q.is_zero(),
            Fe::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Fe::Q(q) => q.is_one(),
            Fe::Fp { v, .. } => *v == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Fe::Q(q) => Some(q),
            Fe::Fp { .. } => None,
        }
    }

    /// Rational lift: the element itself over Q, the least nonnegative residue over F_p.
    pub fn lift(&self) -> BigRational {
        match self {
            Fe::Q(q) => q.clone(),
            Fe::Fp { v, .. } => BigRational::from_integer(BigInt::from(*v)),
        }
    }

    pub fn inv(&self) -> Option<Fe> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Fe::Q(q) => Fe::Q(q.recip()),
            Fe::Fp { v, p } => Fe::Fp { v: inv_mod(*v, *p), p: *p },
        })
    }

    pub fn try_div(&self, o: &Fe) -> Result<Fe> {
        let i = o.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &i)
    }

    pub fn pow(&self, e: i64) -> Fe {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        let mut base = self.clone();
        let mut acc = self.field().one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// A square root in the base field, if one exists.
    pub fn sqrt(&self) -> Option<Fe> {
        match self {
            Fe::Q(q) => {
                if q.is_negative() {
                    return None;
                }
                let n = exact_sqrt(q.numer())?;
                let d = exact_sqrt(q.denom())?;
                Some(Fe::Q(BigRational::new(n, d)))
            }
            Fe::Fp { v, p } => sqrt_mod(*v, *p).map(|r| Fe::Fp { v: r, p: *p }),
        }
    }

    pub fn is_square(&self) -> bool {
        match self {
            Fe::Q(_) => self.sqrt().is_some(),
            Fe::Fp { v, p } => *v == 0 || legendre_u64(*v, *p) == 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Fe::Q(q) => q.is_negative(),
            Fe::Fp { .. } => false,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Fe::Q(q) => rational_to_f64(q),
            Fe::Fp { v, .. } => *v as f64,
        }
    }

    pub fn from_rational(q: BigRational) -> Fe {
        Fe::Q(q)
    }

    fn check(&self, o: &Fe) {
        if self.field() != o.field() {
            panic!("field mismatch: {} vs {}", self.field().name(), o.field().name());
        }
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fe::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Fe::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

impl Field for Fe {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero(&self) -> bool {
        Fe::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
    fn int_like(&self, n: i64) -> Self {
        self.field().int(n)
    }
}

fn add_fe(a: &Fe, b: &Fe) -> Fe {
    a.check(b);
    match (a, b) {
        (Fe::Q(x), Fe::Q(y)) => Fe::Q(x + y),
        (Fe::Fp { v: x, p }, Fe::Fp { v: y, .. }) => Fe::Fp { v: addmod(*x, *y, *p), p: *p },
        _ => unreachable!(),
    }
}

fn sub_fe(a: &Fe, b: &Fe) -> Fe {
    a.check(b);
    match (a, b) {
        (Fe::Q(x), Fe::Q(y)) => Fe::Q(x - y),
        (Fe::Fp { v: x, p }, Fe::Fp { v: y, .. }) => {
            Fe::Fp { v: addmod(*x, *p - *y % *p, *p), p: *p }
        }
        _ => unreachable!(),
    }
}

fn mul_fe(a: &Fe, b: &Fe) -> Fe {
    a.check(b);
    match (a, b) {
        (Fe::Q(x), Fe::Q(y)) => Fe::Q(x * y),
        (Fe::Fp { v: x, p }, Fe::Fp { v: y, .. }) => Fe::Fp { v: mulmod(*x, *y, *p), p: *p },
        _ => unreachable!(),
    }
}

fn div_fe(a: &Fe, b: &Fe) -> Fe {
    a.check(b);
    let i = b.inv().expect("division by zero");
    mul_fe(a, &i)
}

fn neg_fe(a: &Fe) -> Fe {
    match a {
        Fe::Q(x) => Fe::Q(-x),
        Fe::Fp { v, p } => Fe::Fp { v: (*p - *v) % *p, p: *p },
    }
}

macro_rules! fe_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Fe> for &Fe {
            type Output = Fe;
            fn $m(self, o: &Fe) -> Fe {
                $f(self, o)
            }
        }
        impl $tr<Fe> for Fe {
            type Output = Fe;
            fn $m(self, o: Fe) -> Fe {
                $f(&self, &o)
            }
        }
        impl $tr<&Fe> for Fe {
            type Output = Fe;
            fn $m(self, o: &Fe) -> Fe {
                $f(&self, o)
            }
        }
        impl $tr<Fe> for &Fe {
            type Output = Fe;
            fn $m(self, o: Fe) -> Fe {
                $f(self, &o)
            }
        }
    };
}

fe_binop!(Add, add, add_fe);
fe_binop!(Sub, sub, sub_fe);
fe_binop!(Mul, mul, mul_fe);
fe_binop!(Div, div, div_fe);

impl Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        neg_fe(self)
    }
}

impl Neg for Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        neg_fe(&self)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("not a rational number: '{s}'"));
    if t.is_empty() {
        return Err(bad());
    }
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t.as_str(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let shift = q.numer().bits().max(q.denom().bits()) as i64 - 60;
            let sh = shift.max(0) as usize;
            let n = (q.numer() >> sh).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> sh).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

pub(crate) fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

pub(crate) fn reduce_i128(n: i128, p: u64) -> u64 {
    n.rem_euclid(p as i128) as u64
}

pub(crate) fn reduce_big(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

pub(crate) fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    powmod(a, p - 2, p)
}

/// Legendre symbol (a/p) for an odd prime p: 0, 1 or -1.
pub(crate) fn legendre_u64(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if powmod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Tonelli-Shanks square root modulo an odd prime.
pub(crate) fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre_u64(a, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(powmod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| legendre_u64(z, p) == -1).unwrap();
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(a, q, p);
    let mut r = powmod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mulmod(t2, t2, p);
            i += 1;
        }
        let b = powmod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r)
}

/// Jacobi symbol (a/n) for odd positive n.
pub(crate) fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    let n = BigInt::from(n.clone());
    let mut a = a.mod_floor(&n);
    let mut n = n;
    let mut result = 1;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a /= 2;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}
