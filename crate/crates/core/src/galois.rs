use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{BaseField, Fe, Field, Poly, SquareClass};
use crate::brauer::{hilbert_global, solve_conic_with, NonZero, QuaternionSymbol};
use crate::error::{Error, Result};
use crate::tower::{Matrix2, TowerElement, TowerSpec};
use crate::Case;

/// Parameters (u, v, z, w, s) of a Galois structure with explicit witness s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisData {
    pub case: Case,
    pub u: Fe,
    pub v: Fe,
    pub z: Fe,
    pub w: Fe,
    pub s: Fe,
}

impl GaloisData {
    pub fn new(case: Case, u: Fe, v: Fe, z: Fe, w: Fe, s: Fe) -> Result<GaloisData> {
        let d = GaloisData { case, u, v, z, w, s };
        d.check()?;
        Ok(d)
    }

    /// Completes (u, v, z, w) with a witness s, when the congruence holds.
    pub fn from_z(case: Case, u: Fe, v: Fe, z: Fe, w: Option<Fe>) -> Result<GaloisData> {
        let k = u.field();
        let w = w.unwrap_or_else(|| k.one());
        let s2 = match case {
            Case::D8 => (&k.one() - &(&(&z * &z) * &u)).try_div(&(&u * &v))?,
            Case::D12 => (&(&u * &(&u * &u)) - &(&z * &z)).try_div(&(&k.int(3) * &v))?,
        };
        let s = s2
            .sqrt()
            .ok_or_else(|| Error::Invalid(format!("z = {z} does not satisfy the congruence for u = {u}, v = {v}")))?;
        GaloisData::new(case, u, v, z, w, s)
    }

    pub fn field(&self) -> BaseField {
        self.u.field()
    }

    fn check(&self) -> Result<()> {
        let k = self.field();
        if self.u.is_zero() || self.v.is_zero() || self.w.is_zero() {
            return Err(Error::ZeroInput);
        }
        for x in [&self.v, &self.z, &self.w, &self.s] {
            if x.field() != k {
                return Err(Error::FieldMismatch);
            }
        }
        if self.case == Case::D12 && k.characteristic() == 3 {
            return Err(Error::UnsupportedCharacteristic(3));
        }
        let (u, v, z, s) = (&self.u, &self.v, &self.z, &self.s);
        let ok = match self.case {
            Case::D8 => &k.one() - &(&(z * z) * u) == &(&(s * s) * u) * v,
            Case::D12 => &(u * &(u * u)) - &(z * z) == &(&k.int(3) * &(s * s)) * v,
        };
        if !ok {
            return Err(Error::Invalid(format!("witness identity fails for {self}")));
        }
        Ok(())
    }

    /// A square root of u in k, when u is a square.
    fn root_u(&self) -> Option<Fe> {
        self.u.sqrt()
    }

    /// m = w(1 - z sqrt u)/2 in k when u is a square, sign chosen so that m != 0.
    pub fn m_in_k(&self) -> Option<Fe> {
        let r = self.root_u()?;
        let k = self.field();
        let half = k.frac(1, 2).unwrap();
        for r in [r.clone(), -r] {
            let m = &(&self.w * &(&k.one() - &(&self.z * &r))) * &half;
            if !m.is_zero() {
                return Some(m);
            }
        }
        None
    }
}

impl fmt::Display for GaloisData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}(u={}, v={}, z={}, w={}, s={})",
            self.case, self.u, self.v, self.z, self.w, self.s
        )
    }
}

/// The realizability obstruction: (-v, w) for D8, (u, -3v) for D12.
pub fn obstruction_symbol(case: Case, u: &Fe, v: &Fe, w: &Fe) -> Result<QuaternionSymbol> {
    let k = u.field();
    match case {
        Case::D8 => QuaternionSymbol::new(-v, w.clone()),
        Case::D12 => QuaternionSymbol::new(u.clone(), &k.int(-3) * v),
    }
}

/// Finds z and s for the given u, v (and w for D8).
pub fn make_galois_data(case: Case, u: &Fe, v: &Fe, w: Option<&Fe>) -> Result<GaloisData> {
    let k = u.field();
    if u.is_zero() || v.is_zero() {
        return Err(Error::ZeroInput);
    }
    let w = w.cloned().unwrap_or_else(|| k.one());
    if w.is_zero() {
        return Err(Error::ZeroInput);
    }
    if case == Case::D12 && k.characteristic() == 3 {
        return Err(Error::UnsupportedCharacteristic(3));
    }
    let sym = obstruction_symbol(case, u, v, &w)?;
    if !sym.is_trivial()? {
        return Err(Error::Obstructed(sym.to_string()));
    }
    match case {
        Case::D8 => {
            // u z^2 + uv s^2 = 1
            let sol = solve_conic_with(u, &(u * v), &k.one(), NonZero::Second)?;
            let (z, s) = sol.ok_or_else(|| {
                Error::NoStructure(format!(
                    "1 - z^2 u = s^2 uv has no solution: ({u}, {}) is nontrivial",
                    -v
                ))
            })?;
            GaloisData::new(case, u.clone(), v.clone(), z, w, s)
        }
        Case::D12 => {
            // z^2 + 3v s^2 = u^3
            let u3 = u * &(u * u);
            let sol = solve_conic_with(&k.one(), &(&k.int(3) * v), &u3, NonZero::Second)?;
            let (z, s) = sol.ok_or_else(|| Error::Obstructed(sym.to_string()))?;
            GaloisData::new(case, u.clone(), v.clone(), z, k.one(), s)
        }
    }
}

/// Re-encodes a D8 structure with a different w, keeping the field K.
pub fn change_w(d: &GaloisData, w2: &Fe) -> Result<GaloisData> {
    if d.case != Case::D8 {
        return Err(Error::CaseMismatch);
    }
    if w2.is_zero() {
        return Err(Error::ZeroInput);
    }
    if w2 == &d.w {
        return Ok(d.clone());
    }
    let k = d.field();
    let (u, v, z, w) = (&d.u, &d.v, &d.z, &d.w);
    let mismatch = || {
        Error::Obstructed(format!("({}, {}) differs from ({}, {})", -v, w, -v, w2))
    };
    let one = k.one();
    let (z2, s2) = match d.root_u() {
        None => {
            // w(1 - z sqrt u)(a + b sqrt u)^2 = w2 (1 - z2 sqrt u), b = c + a z
            let ww = w * w2;
            let ca = &ww * &(&one - &(&(z * z) * u));
            let cc = &ww * u;
            let (a0, c0) = solve_conic_with(&ca, &cc, &one, NonZero::Any)?.ok_or_else(mismatch)?;
            let a = w2 * &a0;
            let c = w2 * &c0;
            let b = &c + &(&a * z);
            let nrm = &(&a * &a) + &(&(&b * &b) * u);
            let z2 = (w * &(&(z * &nrm) - &(&k.int(2) * &(&a * &b)))).try_div(w2)?;
            let g = &(&a * &a) - &(&(&b * &b) * u);
            let s2 = (&(w * &d.s) * &g).try_div(w2)?;
            (z2, s2)
        }
        Some(_) => {
            // m w2 x^2 + v m w2 y^2 = 1, then z2 = (1 - 2 m w2 x^2)/sqrt u
            let m = d.m_in_k().ok_or_else(mismatch)?;
            let r = {
                let r = d.root_u().unwrap();
                let half = k.frac(1, 2).unwrap();
                if &(w * &(&one - &(z * &r))) * &half == m {
                    r
                } else {
                    -r
                }
            };
            let mw = &m * w2;
            let (x, y) = solve_conic_with(&mw, &(v * &mw), &one, NonZero::Both)?.ok_or_else(mismatch)?;
            let z2 = (&one - &(&k.int(2) * &(&mw * &(&x * &x)))).try_div(&r)?;
            let s2 = (&k.int(2) * &(&mw * &(&x * &y))).try_div(&r)?;
            (z2, s2)
        }
    };
    let out = GaloisData::new(Case::D8, u.clone(), v.clone(), z2, w2.clone(), s2)
        .map_err(|e| Error::Internal(format!("change of w produced invalid data: {e}")))?;
    Ok(out)
}

/// Whether two D8 encodings describe the same structure.
pub fn same_structure(d1: &GaloisData, d2: &GaloisData) -> Result<bool> {
    if d1.case != Case::D8 || d2.case != Case::D8 {
        return Err(Error::CaseMismatch);
    }
    if d1 == d2 {
        return Ok(true);
    }
    if SquareClass::of(&d1.u)? != SquareClass::of(&d2.u)? || SquareClass::of(&d1.v)? != SquareClass::of(&d2.v)? {
        return Ok(false);
    }
    let a = hilbert_global(&-&d1.v, &d1.w)?;
    let b = hilbert_global(&-&d2.v, &d2.w)?;
    Ok(a == b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeLabel {
    I,
    C2A,
    C2B,
    C2C,
    C3,
    C4,
    C6,
    V4,
    V4A,
    V4B,
    D6A,
    D6B,
    D8,
    D12,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for TypeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<TypeLabel> {
        use TypeLabel::*;
        Ok(match s.to_ascii_uppercase().as_str() {
            "I" => I,
            "C2A" => C2A,
            "C2B" => C2B,
            "C2C" => C2C,
            "C3" => C3,
            "C4" => C4,
            "C6" => C6,
            "V4" => V4,
            "V4A" => V4A,
            "V4B" => V4B,
            "D6A" => D6A,
            "D6B" => D6B,
            "D8" => D8,
            "D12" => D12,
            _ => return Err(Error::Parse(format!("unknown type '{s}'"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaloisType {
    pub case: Case,
    pub label: TypeLabel,
}

impl GaloisType {
    pub fn new(case: Case, label: TypeLabel) -> Result<GaloisType> {
        use TypeLabel::*;
        let ok = match case {
            Case::D8 => matches!(label, I | C2A | C2B | C2C | C4 | V4A | V4B | D8),
            Case::D12 => matches!(label, I | C2A | C2B | C2C | C3 | C6 | V4 | D6A | D6B | D12),
        };
        if !ok {
            return Err(Error::Invalid(format!("{label} is not a {case} type")));
        }
        Ok(GaloisType { case, label })
    }
}

impl fmt::Display for GaloisType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FieldTowerDescription {
    pub k1: SquareClass,
    pub k2: SquareClass,
    pub deg_k: usize,
    pub deg_k1: usize,
    pub deg_k2: usize,
    pub deg_k3: Option<usize>,
    pub k_name: String,
    pub k1_name: String,
    pub k2_name: String,
    pub k3_name: Option<String>,
    /// Radicands (and the cubic for D12) generating K.
    pub generators: Vec<String>,
    /// Whether the remarks-column condition of the row holds.
    pub remark_holds: bool,
}

pub fn quadratic_field_name(c: &SquareClass) -> String {
    let k = c.field();
    match k {
        BaseField::Rationals if c.is_trivial() => "Q".into(),
        BaseField::Rationals => format!("Q(sqrt {})", c.rep()),
        BaseField::Prime(p) if c.is_trivial() => format!("F_{p}"),
        BaseField::Prime(p) => format!("F_{p}^2"),
    }
}

/// Tower under construction, remembering a label for each layer kept.
struct Builder {
    spec: Arc<TowerSpec>,
    labels: Vec<String>,
}

impl Builder {
    fn new(k: BaseField) -> Self {
        Builder { spec: TowerSpec::base(k), labels: vec![] }
    }

    fn sqrt(&mut self, r: &TowerElement, label: impl Fn() -> String) -> Result<TowerElement> {
        let before = self.spec.degree();
        let (spec, root) = self.spec.adjoin_sqrt(r)?;
        if spec.degree() != before {
            self.labels.push(label());
        }
        self.spec = spec;
        Ok(root)
    }

    fn cubic(&mut self, p: &Fe, q: &Fe, label: impl Fn() -> String) -> Result<TowerElement> {
        let before = self.spec.degree();
        let (spec, root) = self.spec.adjoin_cubic(p, q)?;
        if spec.degree() != before {
            self.labels.push(label());
        }
        self.spec = spec;
        Ok(root)
    }

    fn name(&self) -> String {
        match self.spec.field() {
            BaseField::Rationals if self.labels.is_empty() => "Q".into(),
            BaseField::Rationals => format!("Q({})", self.labels.join(", ")),
            BaseField::Prime(p) if self.spec.degree() == 1 => format!("F_{p}"),
            BaseField::Prime(p) => format!("F_{p}^{}", self.spec.degree()),
        }
    }
}

fn class_label(x: &Fe) -> String {
    match SquareClass::of(x) {
        Ok(c) => format!("sqrt {}", c.rep()),
        Err(_) => format!("sqrt {x}"),
    }
}

fn cubic_poly(d: &GaloisData) -> (Fe, Fe) {
    let k = d.field();
    let p = -(&(&k.int(3) * &d.u) / k.int(4));
    let q = -(&d.z / &k.int(4));
    (p, q)
}

fn cubic_label(p: &Fe, q: &Fe) -> String {
    let k = p.field();
    let f = Poly::new(vec![q.clone(), p.clone(), k.zero(), k.one()], k.zero());
    format!("root of {f}")
}

pub fn classify_type(d: &GaloisData) -> Result<(GaloisType, FieldTowerDescription)> {
    d.check()?;
    let k = d.field();
    let c1 = SquareClass::of(&d.u)?;
    let c2 = SquareClass::of(&d.v)?;
    let deg_k1 = if c1.is_trivial() { 1 } else { 2 };
    let deg_k2 = if c2.is_trivial() { 1 } else { 2 };
    let k1_eq_k2 = c1 == c2;
    use TypeLabel::*;
    match d.case {
        Case::D8 => {
            let mut b = Builder::new(k);
            let ru = b.sqrt(&b.spec.embed(&d.u), || class_label(&d.u))?;
            let ru = match d.root_u() {
                // pick the sign of sqrt u with m != 0
                Some(r) => {
                    let half = k.frac(1, 2).unwrap();
                    let m = &(&d.w * &(&k.one() - &(&d.z * &r))) * &half;
                    TowerElement::from_fe(&b.spec, &if m.is_zero() { -r } else { r })
                }
                None => ru,
            };
            b.sqrt(&b.spec.embed(&d.v), || class_label(&d.v))?;
            let half = k.frac(1, 2).unwrap();
            let one = b.spec.one();
            let wz = b.spec.embed(&d.z).mul(&ru);
            let m = one.sub(&wz).scale(&d.w).scale(&half);
            let mbar = one.add(&wz).scale(&d.w).scale(&half);
            let ulab = c1.rep().to_string();
            let fmt_m = |sign: &str| {
                if let Some(x) = m.to_base() {
                    let _ = sign;
                    return class_label(&x);
                }
                format!("sqrt({}*(1{}{}*sqrt {})/2)", d.w, sign, d.z, ulab)
            };
            if !m.is_zero() {
                let l = fmt_m("-");
                b.sqrt(&m, || l.clone())?;
            }
            if !mbar.is_zero() {
                let m2 = mbar.clone();
                let l = match m2.to_base() {
                    Some(x) => class_label(&x),
                    None => format!("sqrt({}*(1+{}*sqrt {})/2)", d.w, d.z, ulab),
                };
                let mb = mbar.lift_to(&b.spec)?;
                b.sqrt(&mb, || l.clone())?;
            }
            let deg_k = b.spec.degree();
            let label = match (deg_k, deg_k2, deg_k1) {
                (1, 1, 1) => I,
                (2, 1, 1) => C2A,
                (2, 2, 1) => C2B,
                (2, 2, 2) if k1_eq_k2 => C2C,
                (4, 1, 2) => C4,
                (4, 2, 1) => V4A,
                (4, 2, 2) if k1_eq_k2 => V4B,
                (8, 2, 2) => D8,
                row => return Err(Error::Internal(format!("no table row for degrees {row:?} of {d}"))),
            };
            let remark_holds = match label {
                C4 => hilbert_global(&d.u, &k.int(-1))?,
                D8 => hilbert_global(&d.u, &-&d.v)?,
                _ => true,
            };
            let generators = vec![
                format!("{}", d.v),
                format!("{}*(1-{}*sqrt({}))/2", d.w, d.z, d.u),
                format!("{}*(1+{}*sqrt({}))/2", d.w, d.z, d.u),
            ];
            Ok((
                GaloisType { case: Case::D8, label },
                FieldTowerDescription {
                    k1: c1.clone(),
                    k2: c2.clone(),
                    deg_k,
                    deg_k1,
                    deg_k2,
                    deg_k3: None,
                    k_name: b.name(),
                    k1_name: quadratic_field_name(&c1),
                    k2_name: quadratic_field_name(&c2),
                    k3_name: None,
                    generators,
                    remark_holds,
                },
            ))
        }
        Case::D12 => {
            let (p, q) = cubic_poly(d);
            let mut b = Builder::new(k);
            b.cubic(&p, &q, || cubic_label(&p, &q))?;
            b.sqrt(&b.spec.embed(&d.v), || class_label(&d.v))?;
            let deg_k3 = b.spec.degree();
            let k3_name = b.name();
            b.sqrt(&b.spec.embed(&d.u), || class_label(&d.u))?;
            let deg_k = b.spec.degree();
            let label = match (deg_k, deg_k3, deg_k2, deg_k1) {
                (1, 1, 1, 1) => I,
                (2, 1, 1, 2) => C2A,
                (2, 2, 2, 1) => C2B,
                (2, 2, 2, 2) if k1_eq_k2 => C2C,
                (3, 3, 1, 1) => C3,
                (6, 3, 1, 2) => C6,
                (4, 2, 2, 2) if !k1_eq_k2 => V4,
                (6, 6, 2, 1) => D6A,
                (6, 6, 2, 2) if k1_eq_k2 => D6B,
                (12, 6, 2, 2) if !k1_eq_k2 => D12,
                row => return Err(Error::Internal(format!("no table row for degrees {row:?} of {d}"))),
            };
            Ok((
                GaloisType { case: Case::D12, label },
                FieldTowerDescription {
                    k1: c1.clone(),
                    k2: c2.clone(),
                    deg_k,
                    deg_k1,
                    deg_k2,
                    deg_k3: Some(deg_k3),
                    k_name: b.name(),
                    k1_name: quadratic_field_name(&c1),
                    k2_name: quadratic_field_name(&c2),
                    k3_name: Some(k3_name),
                    generators: vec![format!("{}", d.v), format!("{}", d.u), cubic_label(&p, &q)],
                    remark_holds: true,
                },
            ))
        }
    }
}

/// Generator matrices over a tower.
#[derive(Clone, Debug)]
pub struct Realization {
    pub spec: Arc<TowerSpec>,
    pub u: Matrix2,
    pub v: Matrix2,
    /// The data actually used (w normalized to 1 for D8).
    pub data: GaloisData,
}

pub fn realize_matrices(d: &GaloisData) -> Result<Realization> {
    d.check()?;
    let k = d.field();
    let sym = obstruction_symbol(d.case, &d.u, &d.v, &d.w)?;
    if !sym.is_trivial()? {
        return Err(Error::Obstructed(sym.to_string()));
    }
    let half = k.frac(1, 2).unwrap();
    match d.case {
        Case::D8 => {
            let d = change_w(d, &k.one())?;
            let base = TowerSpec::base(k);
            let (s1, mut ru) = base.adjoin_sqrt(&base.embed(&d.u))?;
            let one = s1.one();
            if one.sub(&ru.scale(&d.z)).is_zero() {
                ru = ru.neg();
            }
            let a2 = one.sub(&ru.scale(&d.z)).scale(&half);
            let (s2, alpha) = s1.adjoin_sqrt(&a2)?;
            let (s3, rv) = s2.adjoin_sqrt(&s2.embed(&d.v))?;
            let alpha = alpha.lift_to(&s3)?;
            let ru = ru.lift_to(&s3)?;
            let beta = ru.scale(&(&(&d.s * &d.v) * &half)).div(&alpha)?;
            let vinv = k.one() / d.v.clone();
            let u = Matrix2::new(alpha.clone(), beta.clone(), beta.scale(&vinv), alpha.neg());
            let v = Matrix2::new(s3.zero(), rv.neg(), rv.inv()?, s3.zero());
            Ok(Realization { spec: s3, u, v, data: d })
        }
        Case::D12 => {
            let (p, q) = cubic_poly(d);
            let base = TowerSpec::base(k);
            let (s1, alpha0) = if d.s.is_zero() {
                let m = d.z.try_div(&d.u)?;
                (base.clone(), base.embed(&-(&m * &half)))
            } else {
                base.adjoin_cubic(&p, &q)?
            };
            let (s2, rv) = s1.adjoin_sqrt(&s1.embed(&d.v))?;
            let (s3, ru) = s2.adjoin_sqrt(&s2.embed(&d.u))?;
            let alpha = alpha0.lift_to(&s3)?;
            let rv = rv.lift_to(&s3)?;
            let beta = if d.s.is_zero() {
                let m = d.z.try_div(&d.u)?;
                rv.scale(&(&m * &half))
            } else {
                // (u^2 + z alpha - 2u alpha^2) / (3s)
                let a2 = alpha.mul(&alpha);
                let num = s3
                    .embed(&(&d.u * &d.u))
                    .add(&alpha.scale(&d.z))
                    .sub(&a2.scale(&(&k.int(2) * &d.u)));
                num.scale(&(k.one() / (&k.int(3) * &d.s)))
            };
            let iu = ru.inv()?;
            let three_over_v = k.int(3) / d.v.clone();
            let u = Matrix2::new(alpha.clone(), beta.clone(), beta.scale(&three_over_v), alpha.neg()).scale(&iu);
            let h = s3.embed(&half);
            let v = Matrix2::new(
                h.clone(),
                rv.mul(&h),
                rv.inv()?.scale(&(&k.int(-3) * &half)),
                h,
            );
            Ok(Realization { spec: s3, u, v, data: d.clone() })
        }
    }
}

/// Checks the defining relations of the realized group.
pub fn check_relations(r: &Realization) -> bool {
    let (u, v) = (&r.u, &r.v);
    let id = Matrix2::identity(&r.spec);
    let minus = id.neg();
    let uu = u.mul(u) == id;
    match r.data.case {
        Case::D8 => {
            uu && v.mul(v) == minus
                && u.mul(v) == v.mul(u).neg()
                && Matrix2::group_order(&[u.clone(), v.clone()], 64) == Some(8)
        }
        Case::D12 => {
            uu && v.pow(3) == minus
                && v.mul(u) == u.mul(&v.mul(v)).neg()
                && Matrix2::group_order(&[u.clone(), v.clone()], 64) == Some(12)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    #[test]
    fn make_data_examples() {
        let k = q();
        let d = make_galois_data(Case::D8, &k.int(1), &k.int(1), None).unwrap();
        assert_eq!((d.z, d.s), (k.zero(), k.one()));
        let d = make_galois_data(Case::D8, &k.int(3), &k.int(-6), None).unwrap();
        assert_eq!((d.z, d.s), (k.one(), k.frac(1, 3).unwrap()));
        let d = make_galois_data(Case::D12, &k.int(1), &k.int(-1), None).unwrap();
        assert_eq!((d.z, d.s), (k.int(2), k.one()));
        let e = make_galois_data(Case::D8, &k.int(-1), &k.int(1), None).unwrap_err();
        assert!(matches!(e, Error::NoStructure(_)));
        let e = make_galois_data(Case::D8, &k.int(1), &k.int(1), Some(&k.int(-1))).unwrap_err();
        assert!(matches!(e, Error::Obstructed(_)));
    }

    #[test]
    fn classify_examples() {
        let k = q();
        let d = GaloisData::from_z(Case::D8, k.int(1), k.int(1), k.zero(), None).unwrap();
        let (t, f) = classify_type(&d).unwrap();
        assert_eq!(t.label, TypeLabel::C2A);
        assert_eq!(f.k_name, "Q(sqrt 2)");
        let d = GaloisData::from_z(Case::D8, k.int(2), k.int(2), k.zero(), None).unwrap();
        let (t, f) = classify_type(&d).unwrap();
        assert_eq!(t.label, TypeLabel::C2C);
        assert_eq!(f.k_name, "Q(sqrt 2)");
        let d = GaloisData::new(Case::D12, k.one(), k.one(), k.one(), k.one(), k.zero()).unwrap();
        assert_eq!(classify_type(&d).unwrap().0.label, TypeLabel::I);
    }

    #[test]
    fn same_structure_examples() {
        let k = q();
        let d1 = GaloisData::from_z(Case::D8, k.int(1), k.int(1), k.zero(), Some(k.int(1))).unwrap();
        let d2 = GaloisData::from_z(Case::D8, k.int(1), k.int(1), k.zero(), Some(k.int(2))).unwrap();
        let d3 = GaloisData::from_z(Case::D8, k.int(1), k.int(1), k.zero(), Some(k.int(-1))).unwrap();
        assert!(same_structure(&d1, &d1).unwrap());
        assert!(same_structure(&d1, &d2).unwrap());
        assert!(!same_structure(&d1, &d3).unwrap());
        // the re-encoding with w = 2 describes the same field as w = 1
        let e = change_w(&d1, &k.int(2)).unwrap();
        assert_eq!(classify_type(&e).unwrap().1.deg_k, classify_type(&d1).unwrap().1.deg_k);
    }

    #[test]
    fn matrices_examples() {
        let k = q();
        let d = GaloisData::from_z(Case::D8, k.int(1), k.int(1), k.zero(), None).unwrap();
        let r = realize_matrices(&d).unwrap();
        assert!(check_relations(&r));
        assert_eq!(r.u.a, r.u.b);
        let d = GaloisData::new(Case::D12, k.one(), k.one(), k.one(), k.one(), k.zero()).unwrap();
        let r = realize_matrices(&d).unwrap();
        assert!(check_relations(&r));
        let d = make_galois_data(Case::D12, &k.int(7), &k.int(2), None).unwrap();
        let r = realize_matrices(&d).unwrap();
        assert!(check_relations(&r));
    }
}
