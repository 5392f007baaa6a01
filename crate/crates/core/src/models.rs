use std::fmt;

use crate::algebra::{
    is_square_in_quadratic_field, roots_in_base, BaseField, Fe, Poly, QuadExtElement, SquareClass,
};
use crate::error::{Error, Result};
use crate::galois::{change_w, classify_type, realize_matrices, GaloisData, Realization};
use crate::invariants::{absolute_invariant, has_repeated_root};
use crate::Case;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sign> {
        match s {
            "+" | "plus" | "p" => Ok(Sign::Plus),
            "-" | "minus" | "m" => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("unknown sign '{s}'"))),
        }
    }
}

/// Y^2 = F with F = d times the normalized family member.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveModel {
    pub case: Case,
    pub data: GaloisData,
    pub sign: Sign,
    pub d: SquareClass,
    pub f: Poly<Fe>,
    /// Parameters whose generator matrices are automorphisms of F.
    pub normalized: GaloisData,
}

impl CurveModel {
    pub fn automorphisms(&self) -> Result<Realization> {
        realize_matrices(&self.normalized)
    }
}

/// The family member for (u, v, z, s), coefficients listed from X^0.
pub fn family_poly(case: Case, u: &Fe, v: &Fe, z: &Fe, s: &Fe, sign: Sign) -> Poly<Fe> {
    let k = u.field();
    let n = |x: i64| k.int(x);
    let v2 = v * v;
    let v3 = &v2 * v;
    let c = match case {
        Case::D8 => {
            let e = n(sign.value());
            let uz = u * z;
            let p = &n(1) + &(&(&e * &n(2)) * &uz);
            let q = &n(3) - &(&(&e * &n(10)) * &uz);
            let suv = &(s * u) * v;
            vec![
                &v3 * &p,
                &(&(&e * &n(8)) * &suv) * &v2,
                &v2 * &q,
                k.zero(),
                v * &q,
                -&(&(&e * &n(8)) * &suv),
                p,
            ]
        }
        Case::D12 => vec![
            &v3 * &(u - &(&n(2) * z)),
            &(&n(-36) * s) * &v3,
            &(&n(9) * &v2) * &(u + &(&n(10) * z)),
            &(&n(360) * s) * &v2,
            &(&n(27) * v) * &(u - &(&n(10) * z)),
            &(&n(-324) * s) * v,
            &n(27) * &(u + &(&n(2) * z)),
        ],
    };
    Poly::new(c, k.zero())
}

/// w moved to 1 (D8) and s moved to 1 through v -> v s^2 when s != 0.
pub fn normalize(data: &GaloisData) -> Result<GaloisData> {
    let k = data.field();
    let d = match data.case {
        Case::D8 => change_w(data, &k.one())?,
        Case::D12 => data.clone(),
    };
    if d.s.is_zero() {
        return Ok(d);
    }
    GaloisData::new(d.case, d.u.clone(), &d.v * &(&d.s * &d.s), d.z.clone(), d.w.clone(), k.one())
}

pub fn build_model(data: &GaloisData, sign: Sign, d: &SquareClass) -> Result<CurveModel> {
    let k = data.field();
    if d.field() != k {
        return Err(Error::FieldMismatch);
    }
    if data.u.is_zero() || data.u == k.frac(1, 4)? {
        return Err(Error::Excluded(format!("u = {} is an excluded value", data.u)));
    }
    let n = normalize(data)?;
    let f = family_poly(data.case, &n.u, &n.v, &n.z, &n.s, sign).scale(&d.to_fe());
    if has_repeated_root(&f) {
        return Err(Error::Internal(format!("model for {data} is not squarefree")));
    }
    let t = absolute_invariant(&f, data.case)?;
    if t != data.u {
        return Err(Error::Internal(format!("model for {data} has invariant {t}")));
    }
    // the minus family is the plus family at (-z, -s)
    let normalized = match sign {
        Sign::Plus => n,
        Sign::Minus => GaloisData::new(n.case, n.u.clone(), n.v.clone(), -&n.z, n.w.clone(), -&n.s)?,
    };
    Ok(CurveModel { case: data.case, data: data.clone(), sign, d: d.clone(), f, normalized })
}

/// Generators of the subgroup of k*/k*^2 whose twists are trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistGroup {
    pub field: BaseField,
    pub generators: Vec<SquareClass>,
}

impl TwistGroup {
    fn elements(&self) -> Vec<SquareClass> {
        let mut out = vec![SquareClass::trivial(self.field)];
        for g in &self.generators {
            let more: Vec<_> = out.iter().map(|h| h.mul(g)).collect();
            for h in more {
                if !out.contains(&h) {
                    out.push(h);
                }
            }
        }
        out
    }

    pub fn contains(&self, c: &SquareClass) -> bool {
        self.elements().contains(c)
    }

    /// Canonical representative of c modulo the subgroup.
    pub fn reduce(&self, c: &SquareClass) -> SquareClass {
        self.elements()
            .iter()
            .map(|h| c.mul(h))
            .min_by_key(|x| (x.abs_rep(), x.rep() < &0.into()))
            .unwrap()
    }
}

impl fmt::Display for TwistGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.generators.iter().map(|c| c.to_string()).collect();
        write!(f, "<{}>", g.join(", "))
    }
}

pub fn hyperelliptic_twist_group(data: &GaloisData) -> Result<TwistGroup> {
    let k = data.field();
    let raw: Vec<Fe> = match data.case {
        Case::D8 => match data.m_in_k() {
            Some(m) => vec![data.v.clone(), m],
            None => vec![data.v.clone()],
        },
        Case::D12 => {
            let (_, desc) = classify_type(data)?;
            if desc.deg_k % 3 != 0 {
                vec![data.u.clone()]
            } else {
                vec![]
            }
        }
    };
    let mut generators: Vec<SquareClass> = Vec::new();
    for x in raw {
        let c = SquareClass::of(&x)?;
        if !c.is_trivial() && !generators.contains(&c) {
            generators.push(c);
        }
    }
    Ok(TwistGroup { field: k, generators })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistRelation {
    Identical,
    /// The first model is the twist of the second by d.
    Hyperelliptic(SquareClass),
    /// The first model is the sign-changed second model.
    XiTwist,
    XiAndHyperelliptic(SquareClass),
    Inequivalent,
}

impl TwistRelation {
    /// Whether the two models are isomorphic over k.
    pub fn is_isomorphic(&self) -> bool {
        match self {
            TwistRelation::Identical => true,
            TwistRelation::Hyperelliptic(d) => d.is_trivial(),
            _ => false,
        }
    }
}

impl fmt::Display for TwistRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistRelation::Identical => write!(f, "identical"),
            TwistRelation::Hyperelliptic(d) => write!(f, "hyperelliptic({d})"),
            TwistRelation::XiTwist => write!(f, "xi"),
            TwistRelation::XiAndHyperelliptic(d) => write!(f, "xi*hyperelliptic({d})"),
            TwistRelation::Inequivalent => write!(f, "inequivalent"),
        }
    }
}

/// Norm-one delta with delta^n = rho in k(j), j^2 = rho.u.
fn norm_one_roots(rho: &QuadExtElement, n: u32) -> Result<Vec<QuadExtElement>> {
    let k = rho.x.field();
    let tr = &k.int(2) * &rho.x;
    // trace polynomial of delta
    let tp = match n {
        2 => Poly::new(vec![-&(&tr + &k.int(2)), k.zero(), k.one()], k.zero()),
        3 => Poly::new(vec![-&tr, k.int(-3), k.zero(), k.one()], k.zero()),
        _ => return Err(Error::Internal("unsupported root degree".into())),
    };
    let half = k.frac(1, 2)?;
    let mut out = Vec::new();
    for t in roots_in_base(&tp) {
        let x = &t * &half;
        let Some(y) = (&(&x * &x) - &k.one()).try_div(&rho.u)?.sqrt() else { continue };
        for y in [y.clone(), -&y] {
            let d = QuadExtElement::new(x.clone(), y, rho.u.clone());
            let mut p = d.clone();
            for _ in 1..n {
                p = p.mul(&d);
            }
            if &p == rho && !out.contains(&d) {
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// Norm of some gamma with gamma / conj(gamma) = delta.
fn hilbert90_norm(delta: &QuadExtElement) -> Fe {
    let k = delta.x.field();
    let one = QuadExtElement::new(k.one(), k.zero(), delta.u.clone());
    let g = one.add(delta);
    if g.is_zero() {
        QuadExtElement::new(k.zero(), k.one(), delta.u.clone()).norm()
    } else {
        g.norm()
    }
}

/// (u, v, zeta) after absorbing sign, s-normalization and a rescale of v to v0.
fn zeta_of(m: &CurveModel, v0: &Fe) -> Result<QuadExtElement> {
    let n = &m.normalized;
    let k = n.field();
    let c = (&n.v / v0).sqrt().ok_or_else(|| Error::Internal("v classes differ".into()))?;
    let j2 = match m.case {
        Case::D8 => -v0,
        Case::D12 => &k.int(-3) * v0,
    };
    Ok(QuadExtElement::new(n.z.clone(), &n.s * &c, j2))
}

/// Classes e with m1 isomorphic to e times m2 through the normalizer of V.
fn torus_search(case: Case, z1: &QuadExtElement, z2: &QuadExtElement) -> Result<Vec<SquareClass>> {
    let deg = match case {
        Case::D8 => 2,
        Case::D12 => 3,
    };
    let mut out = Vec::new();
    for e1 in [z1.clone(), z1.conj()] {
        let inv = e1.inv().ok_or_else(|| Error::Internal("zero norm parameter".into()))?;
        let rho = z2.mul(&inv);
        for delta in norm_one_roots(&rho, deg)? {
            out.push(SquareClass::of(&hilbert90_norm(&delta))?);
        }
    }
    Ok(out)
}

/// K-field comparison for D8 through Kummer theory over k(sqrt u).
fn same_k_d8(a: &GaloisData, b: &GaloisData) -> bool {
    let k = a.field();
    let u = &a.u;
    let half = k.frac(1, 2).unwrap();
    let rad = |d: &GaloisData| {
        let m = QuadExtElement::new(half.clone(), -&(&d.z * &half), u.clone());
        match u.sqrt() {
            Some(r) if (&m.x + &(&m.y * &r)).is_zero() => m.conj(),
            _ => m,
        }
    };
    let v = QuadExtElement::new(a.v.clone(), k.zero(), u.clone());
    let sq = |e: &QuadExtElement| is_square_in_quadratic_field(e).is_some();
    let (m1, m2) = (rad(a), rad(b));
    let inside = |x: &QuadExtElement, y: &QuadExtElement| {
        sq(x) || sq(&x.mul(&v)) || sq(&x.mul(y)) || sq(&x.mul(y).mul(&v))
    };
    inside(&m1, &m2) && inside(&m2, &m1)
}

pub fn twist_relation(m1: &CurveModel, m2: &CurveModel) -> Result<TwistRelation> {
    if m1.case != m2.case {
        return Err(Error::CaseMismatch);
    }
    if m1.data.field() != m2.data.field() {
        return Err(Error::FieldMismatch);
    }
    if m1.f == m2.f {
        return Ok(TwistRelation::Identical);
    }
    let (a, b) = (&m1.normalized, &m2.normalized);
    if a.u != b.u || SquareClass::of(&a.v)? != SquareClass::of(&b.v)? {
        return Ok(TwistRelation::Inequivalent);
    }
    let kummer = match m1.case {
        Case::D8 => Some(same_k_d8(a, b)),
        Case::D12 => None,
    };
    if kummer == Some(false) {
        return Ok(TwistRelation::Inequivalent);
    }
    let group = hyperelliptic_twist_group(a)?;
    let v0 = a.v.clone();
    let z1 = zeta_of(m1, &v0)?;
    let z2 = zeta_of(m2, &v0)?;
    let base = m1.d.mul(&m2.d);
    if let Some(e) = torus_search(m1.case, &z1, &z2)?.first() {
        return Ok(TwistRelation::Hyperelliptic(group.reduce(&base.mul(e))));
    }
    if m1.case == Case::D8 {
        let flipped = QuadExtElement::new(-&z2.x, -&z2.y, z2.u.clone());
        if let Some(e) = torus_search(m1.case, &z1, &flipped)?.first() {
            let d = group.reduce(&base.mul(e));
            return Ok(if d.is_trivial() { TwistRelation::XiTwist } else { TwistRelation::XiAndHyperelliptic(d) });
        }
    }
    if kummer == Some(true) {
        return Err(Error::Internal(format!("no twist found between {a} and {b} with equal fields")));
    }
    Ok(TwistRelation::Inequivalent)
}
