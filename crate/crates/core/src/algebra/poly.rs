use std::fmt;

use super::Field;

/// Dense univariate polynomial, coefficients lowest degree first.
#[derive(Clone, Debug)]
pub struct Poly<T: Field> {
    coeffs: Vec<T>,
    zero: T,
}

impl<T: Field> PartialEq for Poly<T> {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs
    }
}

impl<T: Field> Poly<T> {
    pub fn new(coeffs: Vec<T>, zero: T) -> Self {
        let mut p = Poly { coeffs, zero: zero.zero_like() };
        p.trim();
        p
    }

    pub fn zero(z: &T) -> Self {
        Poly { coeffs: vec![], zero: z.zero_like() }
    }

    pub fn one(z: &T) -> Self {
        Poly::constant(z.one_like())
    }

    pub fn constant(c: T) -> Self {
        let z = c.zero_like();
        Poly::new(vec![c], z)
    }

    pub fn x(z: &T) -> Self {
        Poly::new(vec![z.zero_like(), z.one_like()], z.zero_like())
    }

    /// x - r
    pub fn linear_root(r: &T) -> Self {
        Poly::new(vec![r.negated(), r.one_like()], r.zero_like())
    }

    pub fn monomial(c: T, d: usize) -> Self {
        let z = c.zero_like();
        let mut v = vec![z.clone(); d];
        v.push(c);
        Poly::new(v, z)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn zero_elem(&self) -> &T {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with the zero polynomial counted as -1.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn lc(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i).plus(&o.coeff(i))).collect();
        Poly::new(v, self.zero.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i).minus(&o.coeff(i))).collect();
        Poly::new(v, self.zero.clone())
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.negated()).collect(), self.zero.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.zero);
        }
        let mut v = vec![self.zero.clone(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].plus(&a.times(b));
            }
        }
        Poly::new(v, self.zero.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.times(c)).collect(), self.zero.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one(&self.zero);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; None when dividing by zero.
    pub fn divrem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let inv = d.lc().inverse()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Some((Poly::zero(&self.zero), self.clone()));
        }
        let mut q = vec![self.zero.clone(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].times(&inv);
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    r[i + j] = r[i + j].minus(&c.times(b));
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        Some((Poly::new(q, self.zero.clone()), Poly::new(r, self.zero.clone())))
    }

    pub fn rem(&self, d: &Self) -> Option<Self> {
        self.divrem(d).map(|x| x.1)
    }

    pub fn monic(&self) -> Self {
        match self.lc().inverse() {
            Some(i) if !self.is_zero() => self.scale(&i),
            _ => self.clone(),
        }
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s*self + t*o = g, g monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let z = &self.zero;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(z), Poly::zero(z));
        let (mut t0, mut t1) = (Poly::zero(z), Poly::one(z));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).unwrap();
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        match r0.lc().inverse() {
            Some(i) if !r0.is_zero() => (r0.scale(&i), s0.scale(&i), t0.scale(&i)),
            _ => (r0, s0, t0),
        }
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.times(&c.int_like(i as i64)))
            .collect();
        Poly::new(v, self.zero.clone())
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    /// self(g)
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero(&self.zero);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// self^e mod m
    pub fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m).unwrap();
        let mut acc = Poly::one(&self.zero).rem(m).unwrap();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m).unwrap();
            }
            base = base.mul(&base).rem(m).unwrap();
            e >>= 1;
        }
        acc
    }

    /// Resultant with respect to the actual degrees of both arguments.
    pub fn resultant(&self, o: &Self) -> T {
        let z = self.zero.clone();
        if self.is_zero() || o.is_zero() {
            return z;
        }
        let mut f = self.clone();
        let mut g = o.clone();
        let mut acc = z.one_like();
        loop {
            let m = f.degree().unwrap();
            let n = g.degree().unwrap();
            if n == 0 {
                return acc.times(&pow_t(&g.lc(), m));
            }
            if m == 0 {
                return acc.times(&pow_t(&f.lc(), n));
            }
            if m < n {
                if (m * n) % 2 == 1 {
                    acc = acc.negated();
                }
                std::mem::swap(&mut f, &mut g);
                continue;
            }
            let r = f.rem(&g).unwrap();
            if r.is_zero() {
                return z;
            }
            let k = r.degree().unwrap();
            if (m * n) % 2 == 1 {
                acc = acc.negated();
            }
            acc = acc.times(&pow_t(&g.lc(), m - k));
            f = g;
            g = r;
        }
    }

    /// Discriminant with the derivative taken at formal degree n-1.
    pub fn discriminant(&self) -> T {
        let z = self.zero.clone();
        let Some(m) = self.degree() else { return z };
        if m == 0 {
            return z.one_like();
        }
        let d = self.derivative();
        let Some(dd) = d.degree() else { return z };
        let mut r = self.resultant(&d).times(&pow_t(&self.lc(), m - 1 - dd));
        if (m * (m - 1) / 2) % 2 == 1 {
            r = r.negated();
        }
        r.times(&self.lc().inverse().unwrap())
    }

    pub fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        if d.is_zero() {
            return self.degree().unwrap_or(0) == 0;
        }
        self.gcd(&d).degree() == Some(0)
    }

    pub fn map<U: Field>(&self, zero: &U, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect(), zero.zero_like())
    }
}

fn pow_t<T: Field>(x: &T, e: usize) -> T {
    let mut acc = x.one_like();
    for _ in 0..e {
        acc = acc.times(x);
    }
    acc
}

impl<T: Field + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(b) => (true, b.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = body == "1";
            let coef = if body.contains('/') && i > 0 { format!("({body})") } else { body };
            match i {
                0 => write!(f, "{coef}")?,
                _ => {
                    if !unit {
                        write!(f, "{coef}")?;
                    }
                    if i == 1 {
                        write!(f, "X")?;
                    } else {
                        write!(f, "X^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
