use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{BaseField, Fe, Poly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    D8,
    D12,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::D8 => "D8",
            Case::D12 => "D12",
        })
    }
}

impl FromStr for Case {
    type Err = Error;
    fn from_str(s: &str) -> Result<Case> {
        match s.to_ascii_lowercase().as_str() {
            "d8" => Ok(Case::D8),
            "d12" => Ok(Case::D12),
            _ => Err(Error::Parse(format!("unknown case '{s}'"))),
        }
    }
}

/// Clebsch (A, B, C, D) and Igusa (I2, I4, I6, I10) values.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantSet {
    pub clebsch: Option<[Fe; 4]>,
    pub igusa: [Fe; 4],
}

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

// binary forms: c[i] is the coefficient of x^i y^(n-i)
fn deriv_x(f: &[Q]) -> Vec<Q> {
    (0..f.len() - 1).map(|i| &f[i + 1] * q(i as i64 + 1)).collect()
}

fn deriv_y(f: &[Q]) -> Vec<Q> {
    let n = f.len() - 1;
    (0..n).map(|i| &f[i] * q((n - i) as i64)).collect()
}

fn partial(f: &[Q], a: usize, b: usize) -> Vec<Q> {
    let mut g = f.to_vec();
    for _ in 0..a {
        g = deriv_x(&g);
    }
    for _ in 0..b {
        g = deriv_y(&g);
    }
    g
}

fn form_mul(f: &[Q], g: &[Q]) -> Vec<Q> {
    let mut r = vec![Q::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            r[i + j] += a * b;
        }
    }
    r
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |a, i| a * (n - i) as i64 / (i as i64 + 1))
}

/// k-th transvectant of two binary forms.
pub fn transvectant(f: &[Q], g: &[Q], k: usize) -> Vec<Q> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let mut s = vec![Q::zero(); m + n - 2 * k + 1];
    for j in 0..=k {
        let p = form_mul(&partial(f, k - j, j), &partial(g, j, k - j));
        let c = binom(k, j) * if j % 2 == 0 { 1 } else { -1 };
        for (i, x) in p.iter().enumerate() {
            s[i] += x * q(c);
        }
    }
    let fac = Q::new(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n));
    s.into_iter().map(|c| c * &fac).collect()
}

/// Clebsch invariants of the sextic with coefficients a0..a6 (a_i of X^i).
pub fn clebsch_over_q(a: &[Q; 7]) -> [Q; 4] {
    let f = a.to_vec();
    let i = transvectant(&f, &f, 4);
    let delta = transvectant(&i, &i, 2);
    let y1 = transvectant(&f, &i, 4);
    let y2 = transvectant(&i, &y1, 2);
    let y3 = transvectant(&i, &y2, 2);
    [
        transvectant(&f, &f, 6)[0].clone(),
        transvectant(&i, &i, 4)[0].clone(),
        transvectant(&i, &delta, 4)[0].clone(),
        transvectant(&y3, &y1, 2)[0].clone(),
    ]
}

pub fn igusa_from_clebsch(c: &[Q; 4]) -> [Q; 4] {
    let [a, b, cc, d] = c;
    let a2 = a * a;
    let a3 = &a2 * a;
    let a5 = &a3 * &a2;
    [
        a * q(-120),
        &a2 * q(-720) + b * q(6750),
        &a3 * q(8640) - a * b * q(108000) + cc * q(202500),
        &a5 * q(-62208) + &a3 * b * q(972000) + &a2 * cc * q(1620000)
            - a * b * b * q(3037500)
            - b * cc * q(6075000)
            - d * q(4556250),
    ]
}

fn sextic_coeffs(f: &Poly<Fe>) -> Result<[Fe; 7]> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.degree().unwrap() > 6 {
        return Err(Error::Invalid("degree exceeds 6".into()));
    }
    Ok(std::array::from_fn(|i| f.coeff(i)))
}

pub fn compute_invariants(f: &Poly<Fe>) -> Result<InvariantSet> {
    let a = sextic_coeffs(f)?;
    let k = a[0].field();
    let lifted: [Q; 7] = std::array::from_fn(|i| a[i].lift());
    let c = clebsch_over_q(&lifted);
    let ig = igusa_from_clebsch(&c);
    let igusa = [k.rational(&ig[0])?, k.rational(&ig[1])?, k.rational(&ig[2])?, k.rational(&ig[3])?];
    let clebsch = match k.characteristic() {
        3 | 5 => None,
        _ => Some([k.rational(&c[0])?, k.rational(&c[1])?, k.rational(&c[2])?, k.rational(&c[3])?]),
    };
    Ok(InvariantSet { clebsch, igusa })
}

/// Whether the binary sextic attached to F has a repeated root (infinity included).
pub fn has_repeated_root(f: &Poly<Fe>) -> bool {
    match f.degree() {
        Some(5) | Some(6) => f.discriminant().is_zero(),
        _ => true,
    }
}

fn div(n: Fe, d: Fe, what: &'static str) -> Result<Fe> {
    if d.is_zero() {
        return Err(Error::VanishingDenominator(what));
    }
    Ok(n / d)
}

pub fn absolute_invariant(f: &Poly<Fe>, case: Case) -> Result<Fe> {
    sextic_coeffs(f)?;
    let k = f.lc().field();
    if case == Case::D12 && k.characteristic() == 3 {
        return Err(Error::UnsupportedCharacteristic(3));
    }
    if has_repeated_root(f) {
        return Err(Error::RepeatedRoot);
    }
    let inv = compute_invariants(f)?;
    let [i2, i4, i6, _] = inv.igusa.clone();
    match (k.characteristic(), case) {
        (5, Case::D8) => div(i4, &i2 * &i2, "I2"),
        (5, Case::D12) => div(-i4, &i2 * &i2, "I2"),
        (3, _) => {
            let i23 = &i2 * &(&i2 * &i2);
            div(&i23 * &k.int(2), i6 - i23, "I6 - I2^3")
        }
        _ => {
            let [a, b, c, d] = inv.clebsch.unwrap();
            match case {
                Case::D8 => {
                    let n = &k.int(8) * &(&c * &(&(&k.int(6) * &b) - &(&a * &a))) + &k.int(9) * &d;
                    div(n, &k.int(900) * &d, "c10")
                }
                Case::D12 => {
                    let n = &(&k.int(3) * &b) * &c - d.clone();
                    div(n, &k.int(50) * &d, "c10")
                }
            }
        }
    }
}

/// (cX+d)^6 F((aX+b)/(cX+d)) for a matrix [[a, b], [c, d]] over the base field.
pub fn transform_sextic(f: &Poly<Fe>, m: &[[Fe; 2]; 2]) -> Poly<Fe> {
    let k = f.coeff(0).field();
    let num = Poly::new(vec![m[0][1].clone(), m[0][0].clone()], k.zero());
    let den = Poly::new(vec![m[1][1].clone(), m[1][0].clone()], k.zero());
    let mut acc = Poly::zero(&k.zero());
    for i in 0..=6 {
        let c = f.coeff(i);
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&num.pow(i as u32).mul(&den.pow(6 - i as u32)).scale(&c));
    }
    acc
}

/// X^5 + X^3 + tX or X^6 + X^3 + t.
pub fn standard_model(t: &Fe, case: Case) -> Poly<Fe> {
    let k: BaseField = t.field();
    match case {
        Case::D8 => Poly::new(vec![k.zero(), t.clone(), k.zero(), k.one(), k.zero(), k.one()], k.zero()),
        Case::D12 => Poly::new(
            vec![t.clone(), k.zero(), k.zero(), k.one(), k.zero(), k.zero(), k.one()],
            k.zero(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, poly_from_ints};

    #[test]
    fn standard_models_over_q() {
        let k = BaseField::Rationals;
        let f = poly_from_ints(k, &[0, 7, 0, 1, 0, 1]);
        assert_eq!(absolute_invariant(&f, Case::D8).unwrap(), k.int(7));
        let f = poly_from_ints(k, &[5, 0, 0, 1, 0, 0, 1]);
        assert_eq!(absolute_invariant(&f, Case::D12).unwrap(), k.int(5));
        let f = poly_from_ints(k, &[3, 0, 0, 1, 0, 0, 1]);
        assert_eq!(absolute_invariant(&f, Case::D12).unwrap(), k.int(3));
    }

    #[test]
    fn excluded_value_has_vanishing_i10() {
        let k = BaseField::Rationals;
        let f = parse_poly("X^5+X^3+(1/4)X", k).unwrap();
        let inv = compute_invariants(&f).unwrap();
        assert!(inv.igusa[3].is_zero());
        assert!(matches!(absolute_invariant(&f, Case::D8), Err(Error::RepeatedRoot)));
    }

    #[test]
    fn small_characteristic_branches() {
        let k5 = BaseField::prime(5).unwrap();
        let f = poly_from_ints(k5, &[0, 2, 0, 1, 0, 1]);
        assert_eq!(absolute_invariant(&f, Case::D8).unwrap(), k5.int(2));
        assert!(compute_invariants(&f).unwrap().clebsch.is_none());
        let f = poly_from_ints(k5, &[3, 0, 0, 1, 0, 0, 1]);
        assert_eq!(absolute_invariant(&f, Case::D12).unwrap(), k5.int(3));
        let k3 = BaseField::prime(3).unwrap();
        let f = poly_from_ints(k3, &[0, 2, 0, 1, 0, 1]);
        assert_eq!(absolute_invariant(&f, Case::D8).unwrap(), k3.int(2));
        let f = poly_from_ints(k3, &[1, 0, 0, 1, 0, 0, 1]);
        assert!(matches!(absolute_invariant(&f, Case::D12), Err(Error::UnsupportedCharacteristic(3))));
    }

    #[test]
    fn covariance_exponent() {
        let k = BaseField::Rationals;
        let f = poly_from_ints(k, &[3, 1, 4, 1, 5, 9, 2]);
        let m = [[k.int(2), k.int(3)], [k.int(1), k.int(5)]];
        let g = transform_sextic(&f, &m);
        let a = compute_invariants(&f).unwrap().igusa;
        let b = compute_invariants(&g).unwrap().igusa;
        for (d, (x, y)) in [2i64, 4, 6, 10].iter().zip(a.iter().zip(b.iter())) {
            assert_eq!(y, &(x * &k.int(7).pow(3 * d)));
        }
    }
}
