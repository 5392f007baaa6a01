//! Floating-point q-expansions: Dedekind eta, the hauptmoduls of X*(2), X*(3) and j.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::settings;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UpperHalfPoint {
    pub re: f64,
    pub im: f64,
}

impl UpperHalfPoint {
    /// Below im = 0.05 the default truncation no longer converges to double precision.
    pub const MIN_IM: f64 = 0.05;

    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(re.is_finite() && im.is_finite()) || im < Self::MIN_IM {
            return Err(Error::Invalid(format!("tau = {re}+{im}i is not in the supported region im >= {}", Self::MIN_IM)));
        }
        Ok(UpperHalfPoint { re, im })
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    fn scaled(self, n: u32) -> UpperHalfPoint {
        UpperHalfPoint { re: self.re * n as f64, im: self.im * n as f64 }
    }
}

impl fmt::Display for UpperHalfPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.re, self.im)
    }
}

impl FromStr for UpperHalfPoint {
    type Err = Error;
    /// Accepts "a+bi", "a-bi", "bi", "i", "a+i".
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cannot parse '{s}' as a complex number a+bi"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = t.strip_suffix('i').ok_or_else(bad)?;
        let split = body
            .char_indices()
            .rev()
            .find(|&(i, c)| (c == '+' || c == '-') && i > 0 && !matches!(&body[i - 1..i], "e" | "E"))
            .map(|(i, _)| i);
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let re: f64 = re.parse().map_err(|_| bad())?;
        let im: f64 = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            x => x.parse().map_err(|_| bad())?,
        };
        UpperHalfPoint::new(re, im)
    }
}

fn nome(tau: Complex64) -> Complex64 {
    (Complex64::i() * 2.0 * PI * tau).exp()
}

/// A truncated Laurent series sum c_k q^k for k >= -1.
#[derive(Clone, Debug)]
pub struct QSeries {
    pub terms: usize,
    /// coeffs[k] multiplies q^(k-1).
    pub coeffs: Vec<f64>,
}

impl QSeries {
    pub fn eval(&self, q: Complex64) -> Complex64 {
        let mut acc = Complex64::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c;
        }
        acc / q
    }
}

fn exact_j_coefficients(terms: usize) -> Vec<BigInt> {
    // j = E4^3 / (q prod (1-q^n)^24)
    let m = terms + 2;
    let mut e4 = vec![BigInt::zero(); m];
    e4[0] = 1.into();
    for (n, c) in e4.iter_mut().enumerate().skip(1) {
        let s: u64 = (1..=n as u64).filter(|d| (n as u64).is_multiple_of(*d)).map(|d| d * d * d).sum();
        *c = BigInt::from(240u64 * s);
    }
    let mul = |a: &[BigInt], b: &[BigInt]| {
        let mut r = vec![BigInt::zero(); m];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(m - i) {
                r[i + j] += x * y;
            }
        }
        r
    };
    let num = mul(&mul(&e4, &e4), &e4);
    let mut den = vec![BigInt::zero(); m];
    den[0] = 1.into();
    for n in 1..m {
        for _ in 0..24 {
            for k in (n..m).rev() {
                let d = den[k - n].clone();
                den[k] -= d;
            }
        }
    }
    // den has constant term 1, so the quotient stays integral
    let mut out = vec![BigInt::zero(); m];
    for k in 0..m {
        let mut c = num[k].clone();
        for i in 1..=k {
            c -= &den[i] * &out[k - i];
        }
        out[k] = c;
    }
    out.truncate(terms + 2);
    out
}

/// The j-function q-expansion, 1/q + 744 + 196884 q + ..., up to q^terms.
pub fn j_series(terms: usize) -> QSeries {
    static CACHE: OnceLock<Mutex<Vec<(usize, QSeries)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut g = cache.lock().unwrap();
    if let Some((_, s)) = g.iter().find(|(n, _)| *n == terms) {
        return s.clone();
    }
    let coeffs = exact_j_coefficients(terms).iter().map(|c| c.to_f64().unwrap()).collect();
    let s = QSeries { terms, coeffs };
    g.push((terms, s.clone()));
    s
}

pub fn eta_with(tau: UpperHalfPoint, terms: usize) -> Complex64 {
    let t = tau.to_complex();
    let q = nome(t);
    let mut p = Complex64::new(1.0, 0.0);
    let mut qn = q;
    for _ in 0..terms {
        p *= Complex64::new(1.0, 0.0) - qn;
        qn *= q;
    }
    (Complex64::i() * 2.0 * PI * t / 24.0).exp() * p
}

pub fn eta(tau: UpperHalfPoint) -> Complex64 {
    eta_with(tau, settings::qseries_terms())
}

pub fn j_with(tau: UpperHalfPoint, terms: usize) -> Complex64 {
    j_series(terms).eval(nome(tau.to_complex()))
}

pub fn j_invariant(tau: UpperHalfPoint) -> Complex64 {
    j_with(tau, settings::qseries_terms())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hauptmodul {
    pub h0: Complex64,
    pub h: Complex64,
}

fn level(n: u32) -> Result<(i32, f64, f64, f64, f64)> {
    // exponent, scale, constant term of the eta quotient, numerator shift, pole
    match n {
        2 => Ok((24, 4096.0, 24.0, 104.0, 152.0)),
        3 => Ok((12, 729.0, 12.0, 42.0, 66.0)),
        _ => Err(Error::Unsupported(format!("X*({n})"))),
    }
}

pub fn hauptmodul_with(tau: UpperHalfPoint, n: u32, terms: usize) -> Result<Hauptmodul> {
    let (e, scale, c, shift, pole) = level(n)?;
    let r = (eta_with(tau, terms) / eta_with(tau.scaled(n), terms)).powi(e);
    let h0 = r + scale / r;
    // the Mobius map expects h0 normalized to constant term zero in q
    let d = h0 + c - pole;
    if d.norm() < 1e-12 * h0.norm().max(1.0) {
        return Err(Error::Pole("h"));
    }
    Ok(Hauptmodul { h0, h: (h0 + c + shift) / (d * 4.0) })
}

pub fn hauptmodul_h(tau: UpperHalfPoint, n: u32) -> Result<Hauptmodul> {
    hauptmodul_with(tau, n, settings::qseries_terms())
}

/// The j-pair attached to h and a chosen square root r of h.
pub fn qcurve_j_pair(r: Complex64, n: u32) -> Result<(Complex64, Complex64)> {
    let one = Complex64::new(1.0, 0.0);
    let f = |e: f64| -> Result<Complex64> {
        let r = r * e;
        let (num, den) = match n {
            2 => (64.0 * (3.0 + 10.0 * r).powi(3), (one + 2.0 * r) * (one - 2.0 * r).powi(2)),
            3 => (6912.0 * (2.0 + 5.0 * r).powi(3) * (-r), (one + 2.0 * r) * (one - 2.0 * r).powi(3)),
            _ => return Err(Error::Unsupported(format!("degree {n}"))),
        };
        if den.norm() < 1e-300 {
            return Err(Error::Pole("j formula"));
        }
        Ok(num / den)
    };
    Ok((f(1.0)?, f(-1.0)?))
}

#[derive(Clone, Debug, PartialEq)]
pub struct QCheckReport {
    pub tau: UpperHalfPoint,
    pub n: u32,
    pub h: Complex64,
    pub j_tau: Complex64,
    pub j_ntau: Complex64,
    pub formula: (Complex64, Complex64),
    /// Best-match error, relative to max(1, |j|) per entry.
    pub error: f64,
    pub tol: f64,
    pub pass: bool,
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(1.0)
}

pub fn verify_qcurve_identity(tau: UpperHalfPoint, n: u32, tol: f64) -> Result<QCheckReport> {
    let terms = settings::qseries_terms();
    let hm = hauptmodul_with(tau, n, terms)?;
    let h = hm.h;
    if h.norm() < 1e-9 || (h - 0.25).norm() < 1e-9 {
        return Err(Error::Pole("h near an excluded value"));
    }
    let jt = j_with(tau, terms);
    let jn = j_with(tau.scaled(n), terms);
    let mut best: Option<(f64, (Complex64, Complex64))> = None;
    let r = h.sqrt();
    for root in [r, -r] {
        let (a, b) = qcurve_j_pair(root, n)?;
        for (x, y) in [(a, b), (b, a)] {
            let err = rel(jt, x).max(rel(jn, y));
            if best.is_none_or(|(e, _)| err < e) {
                best = Some((err, (x, y)));
            }
        }
    }
    let (error, formula) = best.unwrap();
    Ok(QCheckReport { tau, n, h, j_tau: jt, j_ntau: jn, formula, error, tol, pass: error < tol })
}
