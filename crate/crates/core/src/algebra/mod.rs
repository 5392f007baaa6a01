mod factor;
mod field;
mod poly;
mod quad;
mod roots;

pub use factor::{factorize, is_prime_u64, is_probable_prime, squarefree_part, SquareClass};
pub use field::{parse_rational, rational_to_f64, BaseField, Fe};
pub(crate) use field::jacobi;
pub use poly::Poly;
pub use quad::{is_square_in_quadratic_field, QuadExtElement};
pub use roots::{roots_in_base, simplest_between};

use crate::error::{Error, Result};

/// Minimal field interface shared by base elements and tower elements.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn int_like(&self, n: i64) -> Self;

    fn is_one(&self) -> bool {
        self.minus(&self.one_like()).is_zero()
    }
}

/// Discriminant of a nonconstant polynomial.
pub fn poly_discriminant(f: &Poly<Fe>) -> Result<Fe> {
    match f.degree() {
        None | Some(0) => Err(Error::Invalid("constant polynomial".into())),
        _ => Ok(f.discriminant()),
    }
}

/// Polynomial from small integer coefficients, lowest degree first.
pub fn poly_from_ints(k: BaseField, c: &[i64]) -> Poly<Fe> {
    Poly::new(c.iter().map(|&a| k.int(a)).collect(), k.zero())
}

/// Parses expressions like "X^5+X^3+2*X", "X/4", "(1/4)X^2" or "x^6 - 3".
pub fn parse_poly(s: &str, k: BaseField) -> Result<Poly<Fe>> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |m: &str| Error::Parse(format!("bad polynomial '{s}': {m}"));
    if t.is_empty() {
        return Err(bad("empty"));
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for ch in t.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if (ch == '+' || ch == '-') && depth == 0 && !cur.is_empty() && !cur.ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut coeffs: Vec<Fe> = Vec::new();
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (-1, b.to_string()),
            None => (1, term.trim_start_matches('+').to_string()),
        };
        if body.is_empty() {
            return Err(bad("empty term"));
        }
        let lower = body.replace('x', "X");
        let (coef, deg) = match lower.find('X') {
            None => (parse_coef(&lower).ok_or_else(|| bad("coefficient"))?, 0usize),
            Some(pos) => {
                let pre = lower[..pos].trim_end_matches('*');
                let post = &lower[pos + 1..];
                let (exp, tail) = match post.strip_prefix('^') {
                    Some(rest) => {
                        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
                        let e: usize = rest[..end].parse().map_err(|_| bad("exponent"))?;
                        (e, &rest[end..])
                    }
                    None => (1, post),
                };
                let mut c = if pre.is_empty() {
                    num_rational::BigRational::from_integer(1.into())
                } else {
                    parse_coef(pre).ok_or_else(|| bad("coefficient"))?
                };
                if !tail.is_empty() {
                    let d = tail.strip_prefix('/').ok_or_else(|| bad("trailing text"))?;
                    let d = parse_coef(d).ok_or_else(|| bad("divisor"))?;
                    if num_traits::Zero::is_zero(&d) {
                        return Err(bad("division by zero"));
                    }
                    c /= d;
                }
                (c, exp)
            }
        };
        let c = k.rational(&(coef * num_rational::BigRational::from_integer(sign.into())))?;
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, k.zero());
        }
        coeffs[deg] = &coeffs[deg] + &c;
    }
    Ok(Poly::new(coeffs, k.zero()))
}

fn parse_coef(s: &str) -> Option<num_rational::BigRational> {
    let s = s.trim_end_matches('*');
    let s = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(s);
    parse_rational(s).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let k = BaseField::Rationals;
        assert_eq!(parse_poly("X^5+X^3+2*X", k).unwrap(), poly_from_ints(k, &[0, 2, 0, 1, 0, 1]));
        let f = parse_poly("X^5+X^3+X/4", k).unwrap();
        assert_eq!(f.coeff(1), k.frac(1, 4).unwrap());
        let f = parse_poly("(1/4)X^2 - 3", k).unwrap();
        assert_eq!(f.coeffs(), &[k.int(-3), k.zero(), k.frac(1, 4).unwrap()]);
        assert!(parse_poly("X^^2", k).is_err());
        assert_eq!(parse_poly("-x", k).unwrap().to_string(), "-X");
    }

    #[test]
    fn discriminant_examples() {
        let k = BaseField::Rationals;
        assert_eq!(poly_discriminant(&poly_from_ints(k, &[1, 0, 1])).unwrap(), k.int(-4));
        let f = parse_poly("X^5+X^3+(1/4)X", k).unwrap();
        assert!(poly_discriminant(&f).unwrap().is_zero());
        assert!(!poly_discriminant(&poly_from_ints(k, &[2, 0, 0, 1, 0, 0, 1])).unwrap().is_zero());
        assert!(poly_discriminant(&poly_from_ints(k, &[3])).is_err());
    }

    #[test]
    fn squarefree_examples() {
        use num_bigint::BigInt;
        let q = |n: i64| num_rational::BigRational::from_integer(n.into());
        assert_eq!(squarefree_part(&q(1)).unwrap(), BigInt::from(1));
        assert_eq!(squarefree_part(&q(12)).unwrap(), BigInt::from(3));
        assert_eq!(squarefree_part(&q(-18)).unwrap(), BigInt::from(-2));
    }
}
