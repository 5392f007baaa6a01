use std::fmt;

use super::{roots_in_base, Fe, Poly};

/// x + y*sqrt(u) over the base field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExtElement {
    pub x: Fe,
    pub y: Fe,
    pub u: Fe,
}

impl QuadExtElement {
    pub fn new(x: Fe, y: Fe, u: Fe) -> Self {
        QuadExtElement { x, y, u }
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadExtElement::new(&self.x + &o.x, &self.y + &o.y, self.u.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuadExtElement::new(&self.x - &o.x, &self.y - &o.y, self.u.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let x = &self.x * &o.x + &self.u * &(&self.y * &o.y);
        let y = &self.x * &o.y + &self.y * &o.x;
        QuadExtElement::new(x, y, self.u.clone())
    }

    pub fn conj(&self) -> Self {
        QuadExtElement::new(self.x.clone(), -&self.y, self.u.clone())
    }

    pub fn norm(&self) -> Fe {
        &self.x * &self.x - &self.u * &(&self.y * &self.y)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        let c = self.conj();
        Some(QuadExtElement::new(&c.x * &n, &c.y * &n, self.u.clone()))
    }
}

impl fmt::Display for QuadExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})*sqrt({})", self.x, self.y, self.u)
    }
}

/// A square root of e in k(sqrt u), if one exists.
pub fn is_square_in_quadratic_field(e: &QuadExtElement) -> Option<QuadExtElement> {
    let k = e.x.field();
    let u = &e.u;
    if let Some(r) = u.sqrt() {
        // k(sqrt u) = k
        let s = (&e.x + &(&e.y * &r)).sqrt()?;
        return Some(QuadExtElement::new(s, k.zero(), u.clone()));
    }
    // t0 = a^2 with a^2 + u b^2 = x and 2ab = y
    let quarter = k.frac(1, 4).ok()?;
    let t = Poly::new(
        vec![&(u * &(&e.y * &e.y)) * &quarter, -&e.x, k.one()],
        k.zero(),
    );
    for t0 in roots_in_base(&t) {
        let Some(a) = t0.sqrt() else { continue };
        let Some(b) = (&e.x - &t0).try_div(u).ok().and_then(|q| q.sqrt()) else { continue };
        for b in [b.clone(), -&b] {
            let r = QuadExtElement::new(a.clone(), b, u.clone());
            if r.mul(&r) == *e {
                return Some(r);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BaseField;

    #[test]
    fn examples() {
        let k = BaseField::Rationals;
        let e = QuadExtElement::new(k.int(3), k.int(2), k.int(2));
        let r = is_square_in_quadratic_field(&e).unwrap();
        assert_eq!(r.mul(&r), e);
        assert_eq!(r.x.to_string().trim_start_matches('-'), "1");

        let e = QuadExtElement::new(k.int(2), k.zero(), k.int(2));
        let r = is_square_in_quadratic_field(&e).unwrap();
        assert_eq!((r.x.clone(), r.y.clone().pow(2)), (k.zero(), k.one()));

        let e = QuadExtElement::new(k.int(3), k.zero(), k.int(2));
        assert!(is_square_in_quadratic_field(&e).is_none());
    }

    #[test]
    fn inverse() {
        let k = BaseField::Rationals;
        let e = QuadExtElement::new(k.int(1), k.int(1), k.int(2));
        let i = e.inv().unwrap();
        assert_eq!(i, QuadExtElement::new(k.int(-1), k.int(1), k.int(2)));
    }
}
