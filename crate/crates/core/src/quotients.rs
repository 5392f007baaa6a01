use std::fmt;

use crate::algebra::{BaseField, Fe, QuadExtElement};
use crate::brauer::{hilbert_global, QuaternionSymbol};
use crate::error::{Error, Result};
use crate::galois::{GaloisType, TypeLabel};
use crate::Case;

/// j-invariants of the two isomorphism classes of elliptic quotients, in k(sqrt t).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPair {
    pub j1: QuadExtElement,
    pub j2: QuadExtElement,
    pub galois_conjugate: bool,
}

impl QuotientPair {
    pub fn is_rational(&self) -> bool {
        self.j1.y.is_zero() && self.j2.y.is_zero()
    }

    /// Rational values when both j lie in k.
    pub fn rational_values(&self) -> Option<(Fe, Fe)> {
        self.is_rational().then(|| (self.j1.x.clone(), self.j2.x.clone()))
    }

    /// Unordered comparison.
    pub fn same_pair(&self, o: &QuotientPair) -> bool {
        (self.j1 == o.j1 && self.j2 == o.j2) || (self.j1 == o.j2 && self.j2 == o.j1)
    }
}

fn check_t(t: &Fe) -> Result<()> {
    let k = t.field();
    if k != BaseField::Rationals {
        return Err(Error::Unsupported("elliptic quotients are computed over Q only".into()));
    }
    if t.is_zero() || t == &k.frac(1, 4)? {
        return Err(Error::Excluded(format!("t = {t} is an excluded value")));
    }
    Ok(())
}

/// sqrt t as an element of k(sqrt t), rational when t is a square.
fn root_of(t: &Fe) -> QuadExtElement {
    let k = t.field();
    match t.sqrt() {
        Some(r) => QuadExtElement::new(r, k.zero(), t.clone()),
        None => QuadExtElement::new(k.zero(), k.one(), t.clone()),
    }
}

fn lin(a: i64, b: i64, r: &QuadExtElement) -> QuadExtElement {
    let k = r.x.field();
    let c = QuadExtElement::new(k.int(a), k.zero(), r.u.clone());
    let br = QuadExtElement::new(&k.int(b) * &r.x, &k.int(b) * &r.y, r.u.clone());
    c.add(&br)
}

fn cube(x: &QuadExtElement) -> QuadExtElement {
    x.mul(x).mul(x)
}

fn scal(c: i64, x: &QuadExtElement) -> QuadExtElement {
    let k = x.x.field();
    QuadExtElement::new(&k.int(c) * &x.x, &k.int(c) * &x.y, x.u.clone())
}

fn quo(n: &QuadExtElement, d: &QuadExtElement) -> Result<QuadExtElement> {
    let di = d.inv().ok_or(Error::Pole("vanishing denominator in the j-invariant formula"))?;
    Ok(n.mul(&di))
}

/// The j-value for one choice e = +1 or -1 of the root sign.
fn j_branch(case: Case, r: &QuadExtElement, e: i64) -> Result<QuadExtElement> {
    match case {
        Case::D8 => {
            let num = scal(64, &cube(&lin(3, -10 * e, r)));
            let p = lin(1, 2 * e, r);
            let den = lin(1, -2 * e, r).mul(&p).mul(&p);
            quo(&num, &den)
        }
        Case::D12 => {
            let num = scal(256 * 27, &cube(&lin(2, -5 * e, r)).mul(&lin(0, e, r)));
            let p = lin(1, 2 * e, r);
            let den = lin(1, -2 * e, r).mul(&cube(&p));
            quo(&num, &den)
        }
    }
}

/// Upper signs give j1.
pub fn quotient_j_invariants(t: &Fe, case: Case) -> Result<QuotientPair> {
    check_t(t)?;
    let r = root_of(t);
    let j1 = j_branch(case, &r, 1)?;
    let j2 = j_branch(case, &r, -1)?;
    if t.is_square() && j1 == j2 {
        return Err(Error::Excluded(format!("t = {t}: both quotients have the same j-invariant")));
    }
    let galois_conjugate = !t.is_square() && j2 == j1.conj();
    Ok(QuotientPair { j1, j2, galois_conjugate })
}

/// The pair (j(tau), j(N tau)) of a degree-N Q-curve at the rational parameter h.
pub fn qcurve_j_invariants(h: &Fe, n: u32) -> Result<QuotientPair> {
    let case = match n {
        2 => Case::D8,
        3 => Case::D12,
        _ => return Err(Error::Unsupported(format!("degree {n}"))),
    };
    check_t(h)?;
    let r = root_of(h);
    // same formulas with the opposite sign of sqrt h
    let j1 = j_branch(case, &r, -1)?;
    let j2 = j_branch(case, &r, 1)?;
    let galois_conjugate = !h.is_square() && j2 == j1.conj();
    Ok(QuotientPair { j1, j2, galois_conjugate })
}

const CM_D8: [(i64, i64); 14] = [
    (9, 100),
    (81, 196),
    (3969, 16900),
    (-81, 700),
    (1, 5),
    (9, 32),
    (12, 49),
    (81, 320),
    (81, 325),
    (2401, 9600),
    (9801, 39200),
    (6480, 25921),
    (194481, 777925),
    (96059601, 384238400),
];

const CM_D12: [(i64, i64); 12] = [
    (4, 25),
    (-1, 50),
    (-4, 11),
    (1, 20),
    (1, 2),
    (27, 100),
    (4, 17),
    (125, 484),
    (20, 81),
    (256, 1025),
    (756, 3025),
    (62500, 250001),
];

/// Parameters whose elliptic quotients have complex multiplication.
pub fn cm_parameters(case: Case) -> Vec<Fe> {
    let k = BaseField::Rationals;
    let list: &[(i64, i64)] = match case {
        Case::D8 => &CM_D8,
        Case::D12 => &CM_D12,
    };
    list.iter().map(|&(n, d)| k.frac(n, d).unwrap()).collect()
}

pub fn is_cm_parameter(t: &Fe, case: Case) -> bool {
    t.field() == BaseField::Rationals && cm_parameters(case).contains(t)
}

/// Exceptional nonsquare parameters with rational j.
pub fn exceptional_parameters(case: Case) -> Vec<Fe> {
    let k = BaseField::Rationals;
    match case {
        Case::D8 => vec![k.frac(-81, 700).unwrap()],
        Case::D12 => vec![k.frac(-1, 50).unwrap(), k.frac(-4, 11).unwrap()],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndoKind {
    M2Q,
    QxQ,
    QOnly,
    QuadField(i64),
}

impl fmt::Display for EndoKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndoKind::M2Q => write!(f, "M2(Q)"),
            EndoKind::QxQ => write!(f, "QxQ"),
            EndoKind::QOnly => write!(f, "Q"),
            EndoKind::QuadField(d) => write!(f, "Q(sqrt {d})"),
        }
    }
}

/// Which of the two forms the existence condition takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionForm {
    /// (t, c) = 1
    T(i64),
    /// (w, c) = 1
    W(i64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct EndoAlgebra {
    pub kind: EndoKind,
    pub basis: &'static str,
    /// Field generated by the j-invariants of the quotients.
    pub field_of_j: &'static str,
    pub condition_form: Option<ConditionForm>,
    /// The symbol for the given t or w, when supplied.
    pub condition: Option<QuaternionSymbol>,
    pub condition_holds: Option<bool>,
}

pub fn endomorphism_algebra(gtype: &GaloisType, t: Option<&Fe>, w: Option<&Fe>) -> Result<EndoAlgebra> {
    use EndoKind::*;
    use TypeLabel::*;
    let row = match (gtype.case, gtype.label) {
        (_, I) => (M2Q, "1, U, V, UV", "Q", None),
        (Case::D8, C2A) => (QuadField(-1), "1, V", "Q", None),
        (_, C2B) => (QxQ, "1, U", "Q", None),
        (Case::D8, C2C) => (QuadField(2), "1, U(1+V)", "Q(sqrt t)", Some(ConditionForm::T(2))),
        (Case::D8, C4) => (QuadField(-1), "1, V", "Q(sqrt t)", Some(ConditionForm::W(-1))),
        (Case::D12, C2A) => (QuadField(-3), "1, V", "Q(sqrt t)", Some(ConditionForm::T(-3))),
        (Case::D12, C2C) => (QuadField(3), "1, U(1+2V)", "Q(sqrt t)", Some(ConditionForm::T(3))),
        (Case::D12, C3) => (QuadField(-3), "1, V", "Q", None),
        (Case::D12, C6) => (QuadField(-3), "1, V", "Q(sqrt t)", Some(ConditionForm::T(-3))),
        _ => (QOnly, "1", "", None),
    };
    let (kind, basis, field_of_j, form) = row;
    let sym = match form {
        Some(ConditionForm::T(c)) => t.map(|t| QuaternionSymbol::new(t.clone(), t.field().int(c))).transpose()?,
        Some(ConditionForm::W(c)) => w.map(|w| QuaternionSymbol::new(w.clone(), w.field().int(c))).transpose()?,
        None => None,
    };
    let holds = match &sym {
        Some(s) => Some(s.is_trivial()?),
        None => None,
    };
    Ok(EndoAlgebra { kind, basis, field_of_j, condition_form: form, condition: sym, condition_holds: holds })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scenario {
    /// Degree 3 Q-curve over a quadratic field.
    Deg3Quadratic,
    /// Degree 2 Q-curve over a quadratic field.
    Deg2Quadratic,
    /// Degree 2 Q-curve over a cyclic quartic field given by w.
    Deg2CyclicQuartic,
}

impl std::str::FromStr for Scenario {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scenario> {
        match s {
            "deg3_quadratic" | "deg3" => Ok(Scenario::Deg3Quadratic),
            "deg2_quadratic" | "deg2" => Ok(Scenario::Deg2Quadratic),
            "deg2_cyclic_quartic" | "deg2c4" => Ok(Scenario::Deg2CyclicQuartic),
            _ => Err(Error::Parse(format!("unknown scenario '{s}'"))),
        }
    }
}

/// What the inflations say about c± in H^2(K/Q, {±1}).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CocycleSignClass {
    /// Inflation of c± is split; the class is trivial or has split inflation.
    pub trivial: bool,
    /// Whether the inflations pin the class down.
    pub determined: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoveringReport {
    pub scenario: Scenario,
    pub c_pm: CocycleSignClass,
    /// Inflation of c± and of the nontrivial class, with their triviality.
    pub inflation_c_pm: (QuaternionSymbol, bool),
    pub inflation_c_eps: (QuaternionSymbol, bool),
    /// Galois types through which a covering curve can be built.
    pub routes: Vec<(TypeLabel, QuaternionSymbol, bool)>,
    pub covering_exists: bool,
}

fn sym(a: &Fe, b: i64) -> Result<(QuaternionSymbol, bool)> {
    let s = QuaternionSymbol::new(a.clone(), a.field().int(b))?;
    let t = s.is_trivial()?;
    Ok((s, t))
}

pub fn covering_obstruction(h: &Fe, scenario: Scenario, w: Option<&Fe>) -> Result<CoveringReport> {
    if h.field() != BaseField::Rationals {
        return Err(Error::Unsupported("coverings are computed over Q only".into()));
    }
    if h.is_zero() {
        return Err(Error::ZeroInput);
    }
    if h.is_square() {
        return Err(Error::Invalid(format!("h = {h} is a square, so Q(sqrt h) is not quadratic")));
    }
    let eps = sym(h, -1)?;
    let (cpm, routes, exists) = match scenario {
        Scenario::Deg3Quadratic => {
            let c = sym(h, 3)?;
            let r2c = sym(h, 3)?;
            let r2a = sym(h, -3)?;
            let routes = vec![(TypeLabel::C2C, r2c.0, r2c.1), (TypeLabel::C2A, r2a.0, r2a.1)];
            (c, routes, true)
        }
        Scenario::Deg2Quadratic => {
            let c = sym(h, 2)?;
            let routes = vec![(TypeLabel::C2C, c.0.clone(), c.1)];
            let ok = c.1;
            (c, routes, ok)
        }
        Scenario::Deg2CyclicQuartic => {
            let w = w.ok_or_else(|| Error::Invalid("the cyclic quartic scenario needs w".into()))?;
            let c = sym(h, 2)?;
            let wm = sym(w, -1)?;
            let routes = vec![(TypeLabel::C2C, c.0.clone(), c.1), (TypeLabel::C4, wm.0, wm.1)];
            (c, routes, true)
        }
    };
    let determined = !cpm.1 || !eps.1;
    let report = CoveringReport {
        scenario,
        c_pm: CocycleSignClass { trivial: cpm.1, determined },
        inflation_c_pm: cpm,
        inflation_c_eps: eps,
        routes,
        covering_exists: exists,
    };
    Ok(report)
}

/// Obstruction to embedding the cyclic quartic field of (h, w) into a cyclic octic field.
pub fn cyclic_octic_obstruction(h: &Fe, w: &Fe) -> Result<bool> {
    let k = h.field();
    Ok(hilbert_global(h, &k.int(2))? == hilbert_global(w, &k.int(-1))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    #[test]
    fn j_examples() {
        let k = q();
        let p = quotient_j_invariants(&k.frac(1, 16).unwrap(), Case::D8).unwrap();
        assert_eq!(p.rational_values(), Some((k.frac(64, 9).unwrap(), k.frac(85184, 3).unwrap())));
        for case in [Case::D8, Case::D12] {
            for t in exceptional_parameters(case) {
                let p = quotient_j_invariants(&t, case).unwrap();
                assert!(p.is_rational(), "{t}");
                assert!(is_cm_parameter(&t, case));
            }
        }
        let p = quotient_j_invariants(&k.int(2), Case::D12).unwrap();
        assert!(p.galois_conjugate && !p.is_rational());
        assert!(matches!(quotient_j_invariants(&k.frac(1, 4).unwrap(), Case::D8), Err(Error::Excluded(_))));
    }

    #[test]
    fn qcurve_parametrization_matches() {
        let k = q();
        for (n, d) in [(2, 3), (-5, 7), (9, 4), (1, 9)] {
            let h = k.frac(n, d).unwrap();
            for (deg, case) in [(2, Case::D8), (3, Case::D12)] {
                let a = quotient_j_invariants(&h, case).unwrap();
                let b = qcurve_j_invariants(&h, deg).unwrap();
                assert!(a.same_pair(&b));
            }
        }
    }

    #[test]
    fn cm_conjugacy() {
        for case in [Case::D8, Case::D12] {
            let ex = exceptional_parameters(case);
            for t in cm_parameters(case) {
                let p = quotient_j_invariants(&t, case).unwrap();
                if t.is_square() {
                    assert!(p.is_rational() && p.j1 != p.j2);
                    continue;
                }
                assert_eq!(p.is_rational(), ex.contains(&t), "{case} {t}");
                assert!(p.galois_conjugate);
                assert!(p.j1.mul(&p.j2).y.is_zero() && p.j1.add(&p.j2).y.is_zero());
            }
        }
    }

    #[test]
    fn cm_lists() {
        let k = q();
        assert_eq!(cm_parameters(Case::D8).len() + cm_parameters(Case::D12).len(), 26);
        assert!(is_cm_parameter(&k.frac(9, 100).unwrap(), Case::D8));
        assert!(is_cm_parameter(&k.frac(62500, 250001).unwrap(), Case::D12));
        assert!(!is_cm_parameter(&k.frac(1, 16).unwrap(), Case::D8));
    }

    #[test]
    fn tables() {
        let k = q();
        let g = GaloisType::new(Case::D8, TypeLabel::I).unwrap();
        assert_eq!(endomorphism_algebra(&g, None, None).unwrap().kind, EndoKind::M2Q);
        let g = GaloisType::new(Case::D8, TypeLabel::C4).unwrap();
        let e = endomorphism_algebra(&g, None, Some(&k.int(5))).unwrap();
        assert_eq!((e.kind, e.condition_holds), (EndoKind::QuadField(-1), Some(true)));
        let g = GaloisType::new(Case::D12, TypeLabel::C3).unwrap();
        let e = endomorphism_algebra(&g, None, None).unwrap();
        assert_eq!((e.kind.to_string().as_str(), e.condition_form), ("Q(sqrt -3)", None));
        let g = GaloisType::new(Case::D12, TypeLabel::D12).unwrap();
        assert_eq!(endomorphism_algebra(&g, None, None).unwrap().kind, EndoKind::QOnly);
    }

    #[test]
    fn coverings() {
        let k = q();
        let r = covering_obstruction(&k.int(3), Scenario::Deg3Quadratic, None).unwrap();
        assert!(!r.c_pm.trivial && r.c_pm.determined);
        assert!(r.routes.iter().any(|(l, _, ok)| *l == TypeLabel::C2A && *ok));
        let r = covering_obstruction(&k.int(2), Scenario::Deg2Quadratic, None).unwrap();
        assert!(r.c_pm.trivial && r.covering_exists);
        let r = covering_obstruction(&k.int(-1), Scenario::Deg2Quadratic, None).unwrap();
        assert!(r.c_pm.trivial && r.c_pm.determined && r.covering_exists);
        assert!(covering_obstruction(&k.int(4), Scenario::Deg2Quadratic, None).is_err());
    }
}
