//! Command-line front end. Every invocation prints one JSON document.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::{parse_poly, BaseField, Fe, Poly, QuadExtElement, SquareClass};
use crate::brauer::QuaternionSymbol;
use crate::error::{Error, Result};
use crate::galois::{
    classify_type, make_galois_data, obstruction_symbol, FieldTowerDescription, GaloisData, GaloisType,
    TypeLabel,
};
use crate::invariants::{absolute_invariant, compute_invariants};
use crate::models::{build_model, hyperelliptic_twist_group, twist_relation, CurveModel, Sign};
use crate::modular::{verify_qcurve_identity, UpperHalfPoint};
use crate::quotients::{covering_obstruction, endomorphism_algebra, is_cm_parameter, quotient_j_invariants, Scenario};
use crate::{settings, Case};

pub const SCHEMA: &str = "gd2/1";

#[derive(Parser, Debug)]
#[command(name = "gd2", version, about = "Genus-2 curves with automorphism group D8 or D12")]
pub struct Cli {
    /// Indented output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Height bound for conic and twist searches.
    #[arg(long, global = true, env = "GD2_SEARCH_BOUND")]
    pub search_bound: Option<u64>,
    /// Truncation order of q-expansions.
    #[arg(long, global = true, env = "GD2_QSERIES_TERMS")]
    pub qseries_terms: Option<u64>,
    /// Trial division bound for factorization.
    #[arg(long, global = true, env = "GD2_FACTOR_BOUND")]
    pub factor_bound: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Clebsch and Igusa invariants and the absolute invariant t.
    Invariants {
        /// a0,...,a6 (coefficient of X^i at position i).
        #[arg(long, conflicts_with = "poly", allow_hyphen_values = true)]
        coeffs: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long)]
        case: Case,
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// Find Galois data for (u, v) and build the model.
    Construct {
        #[command(flatten)]
        p: UvArgs,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign: Sign,
        /// Quadratic twist parameter.
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        twist: String,
    },
    /// Galois type and fields for explicit data.
    Classify {
        #[command(flatten)]
        p: UvArgs,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Relation between two models.
    Twistrel {
        #[arg(long)]
        case: Case,
        #[arg(long, default_value = "q")]
        field: String,
        /// First model as u,v,z[,w], e.g. "2,-1,1/2".
        #[arg(long, allow_hyphen_values = true)]
        m1: String,
        #[arg(long, allow_hyphen_values = true)]
        m2: String,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign1: Sign,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign2: Sign,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        d1: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        d2: String,
    },
    /// j-invariants of the elliptic quotients.
    Quotients {
        #[arg(long)]
        case: Case,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Endomorphism algebra of the Jacobian for a Galois type.
    Gl2type {
        #[arg(long)]
        case: Case,
        #[arg(long = "type")]
        label: TypeLabel,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
    },
    /// Whether a Q-curve with parameter h is covered by a genus-2 Jacobian.
    Covering {
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        /// deg3_quadratic, deg2_quadratic or deg2_cyclic_quartic.
        #[arg(long)]
        scenario: Scenario,
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
    },
    /// Numerical check of the Q-curve j-parametrization at tau.
    Qcheck {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        tau: UpperHalfPoint,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

#[derive(Args, Debug)]
pub struct UvArgs {
    #[arg(long)]
    case: Case,
    #[arg(long, default_value = "q")]
    field: String,
    #[arg(long, allow_hyphen_values = true)]
    u: String,
    #[arg(long, allow_hyphen_values = true)]
    v: String,
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
}

fn fe(x: &Fe) -> Value {
    Value::String(x.to_string())
}

fn quad(x: &QuadExtElement) -> Value {
    if x.y.is_zero() {
        fe(&x.x)
    } else {
        json!({ "rational": fe(&x.x), "sqrt_coeff": fe(&x.y), "radicand": fe(&x.u) })
    }
}

fn sym(s: &QuaternionSymbol) -> Result<Value> {
    Ok(json!({ "symbol": s.to_string(), "trivial": s.is_trivial()? }))
}

fn data_json(d: &GaloisData) -> Value {
    json!({ "u": fe(&d.u), "v": fe(&d.v), "z": fe(&d.z), "w": fe(&d.w), "s": fe(&d.s) })
}

fn tower_json(t: &FieldTowerDescription) -> Value {
    json!({
        "K": t.k_name, "K1": t.k1_name, "K2": t.k2_name, "K3": t.k3_name,
        "deg_K": t.deg_k, "deg_K1": t.deg_k1, "deg_K2": t.deg_k2, "deg_K3": t.deg_k3,
        "generators": t.generators, "remark_holds": t.remark_holds,
    })
}

fn type_json(g: &GaloisType, t: &FieldTowerDescription) -> Value {
    json!({ "case": g.case.to_string(), "type": g.label.to_string(), "fields": tower_json(t) })
}

fn poly_json(f: &Poly<Fe>) -> Value {
    json!({
        "F": f.to_string(),
        "coeffs": f.coeffs().iter().map(fe).collect::<Vec<_>>(),
    })
}

fn parse_fe(k: BaseField, s: &str) -> Result<Fe> {
    k.parse(s)
}

fn parse_uvw(k: BaseField, p: &UvArgs) -> Result<(Fe, Fe, Option<Fe>)> {
    let w = p.w.as_deref().map(|w| parse_fe(k, w)).transpose()?;
    Ok((parse_fe(k, &p.u)?, parse_fe(k, &p.v)?, w))
}

fn model_json(m: &CurveModel) -> Result<Value> {
    let (g, t) = classify_type(&m.data)?;
    let aut = m.automorphisms()?;
    Ok(json!({
        "model": poly_json(&m.f),
        "sign": m.sign.to_string(),
        "twist": m.d.to_string(),
        "data": data_json(&m.data),
        "normalized_data": data_json(&m.normalized),
        "galois_type": type_json(&g, &t),
        "automorphisms": { "U": aut.u.to_string(), "V": aut.v.to_string() },
        "twist_group": hyperelliptic_twist_group(&m.data)?.to_string(),
    }))
}

fn run_command(cmd: &Command) -> Result<Value> {
    match cmd {
        Command::Invariants { coeffs, poly, case, field } => {
            let k = BaseField::parse_spec(field)?;
            let f = match (coeffs, poly) {
                (Some(c), None) => {
                    let v: Vec<Fe> = c.split(',').map(|x| parse_fe(k, x)).collect::<Result<_>>()?;
                    if v.len() > 7 {
                        return Err(Error::Parse("at most 7 coefficients".into()));
                    }
                    Poly::new(v, k.zero())
                }
                (None, Some(p)) => parse_poly(p, k)?,
                _ => return Err(Error::Parse("give exactly one of --coeffs or --poly".into())),
            };
            let inv = compute_invariants(&f)?;
            let t = absolute_invariant(&f, *case)?;
            Ok(json!({
                "case": case.to_string(),
                "field": k.name(),
                "polynomial": f.to_string(),
                "clebsch": inv.clebsch.as_ref().map(|c| c.iter().map(fe).collect::<Vec<_>>()),
                "igusa": inv.igusa.iter().map(fe).collect::<Vec<_>>(),
                "t": fe(&t),
            }))
        }
        Command::Construct { p, sign, twist } => {
            let k = BaseField::parse_spec(&p.field)?;
            let (u, v, w) = parse_uvw(k, p)?;
            let symbol = obstruction_symbol(p.case, &u, &v, w.as_ref().unwrap_or(&k.one()))?;
            let data = make_galois_data(p.case, &u, &v, w.as_ref())?;
            let d = SquareClass::of(&parse_fe(k, twist)?)?;
            let m = build_model(&data, *sign, &d)?;
            let mut out = model_json(&m)?;
            out["obstruction"] = sym(&symbol)?;
            Ok(out)
        }
        Command::Classify { p, z } => {
            let k = BaseField::parse_spec(&p.field)?;
            let (u, v, w) = parse_uvw(k, p)?;
            let d = GaloisData::from_z(p.case, u, v, parse_fe(k, z)?, w)?;
            let (g, t) = classify_type(&d)?;
            Ok(json!({ "data": data_json(&d), "galois_type": type_json(&g, &t) }))
        }
        Command::Twistrel { case, field, m1, m2, sign1, sign2, d1, d2 } => {
            let k = BaseField::parse_spec(field)?;
            let model = |spec: &str, sign: Sign, d: &str| -> Result<CurveModel> {
                let parts: Vec<Fe> = spec.split(',').map(|x| parse_fe(k, x)).collect::<Result<_>>()?;
                if !(3..=4).contains(&parts.len()) {
                    return Err(Error::Parse(format!("model '{spec}' must be u,v,z[,w]")));
                }
                let data = GaloisData::from_z(*case, parts[0].clone(), parts[1].clone(), parts[2].clone(), parts.get(3).cloned())?;
                build_model(&data, sign, &SquareClass::of(&parse_fe(k, d)?)?)
            };
            let a = model(m1, *sign1, d1)?;
            let b = model(m2, *sign2, d2)?;
            let r = twist_relation(&a, &b)?;
            Ok(json!({
                "relation": r.to_string(),
                "isomorphic": r.is_isomorphic(),
                "F1": a.f.to_string(),
                "F2": b.f.to_string(),
            }))
        }
        Command::Quotients { case, t } => {
            let t = parse_fe(BaseField::Rationals, t)?;
            let p = quotient_j_invariants(&t, *case)?;
            Ok(json!({
                "case": case.to_string(),
                "t": fe(&t),
                "j1": quad(&p.j1),
                "j2": quad(&p.j2),
                "rational": p.is_rational(),
                "galois_conjugate": p.galois_conjugate,
                "cm": is_cm_parameter(&t, *case),
            }))
        }
        Command::Gl2type { case, label, t, w } => {
            let g = GaloisType::new(*case, *label)?;
            let k = BaseField::Rationals;
            let t = t.as_deref().map(|x| parse_fe(k, x)).transpose()?;
            let w = w.as_deref().map(|x| parse_fe(k, x)).transpose()?;
            let e = endomorphism_algebra(&g, t.as_ref(), w.as_ref())?;
            let form = e.condition_form.map(|f| match f {
                crate::quotients::ConditionForm::T(c) => format!("(t, {c}) = 1"),
                crate::quotients::ConditionForm::W(c) => format!("(w, {c}) = 1"),
            });
            Ok(json!({
                "case": case.to_string(),
                "type": label.to_string(),
                "algebra": e.kind.to_string(),
                "basis": e.basis,
                "field_of_j": e.field_of_j,
                "condition": form,
                "condition_symbol": e.condition.as_ref().map(|s| s.to_string()),
                "condition_holds": e.condition_holds,
            }))
        }
        Command::Covering { h, scenario, w } => {
            let k = BaseField::Rationals;
            let h = parse_fe(k, h)?;
            let w = w.as_deref().map(|x| parse_fe(k, x)).transpose()?;
            let r = covering_obstruction(&h, *scenario, w.as_ref())?;
            let routes: Vec<Value> = r
                .routes
                .iter()
                .map(|(l, s, ok)| json!({ "type": l.to_string(), "symbol": s.to_string(), "trivial": ok }))
                .collect();
            Ok(json!({
                "h": fe(&h),
                "c_pm": { "trivial": r.c_pm.trivial, "determined": r.c_pm.determined },
                "inflation_c_pm": { "symbol": r.inflation_c_pm.0.to_string(), "trivial": r.inflation_c_pm.1 },
                "inflation_c_eps": { "symbol": r.inflation_c_eps.0.to_string(), "trivial": r.inflation_c_eps.1 },
                "routes": routes,
                "covering_exists": r.covering_exists,
            }))
        }
        Command::Qcheck { n, tau, tol } => {
            let r = verify_qcurve_identity(*tau, *n, *tol)?;
            let c = |z: num_complex::Complex64| json!([z.re, z.im]);
            Ok(json!({
                "n": n,
                "tau": tau.to_string(),
                "h": c(r.h),
                "j_tau": c(r.j_tau),
                "j_ntau": c(r.j_ntau),
                "error": r.error,
                "tol": r.tol,
                "pass": r.pass,
            }))
        }
    }
}

fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).unwrap()
    } else {
        serde_json::to_string(v).unwrap()
    }
}

fn error_doc(code: i32, kind: &str, message: &str) -> Value {
    json!({ "schema": SCHEMA, "ok": false, "error": { "code": code, "kind": kind, "message": message } })
}

/// Runs the CLI on an argument list; returns the exit code and the text for standard output.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (0, e.to_string());
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            return (2, render(&error_doc(2, "parse", &first), false));
        }
    };
    if let Some(b) = cli.search_bound {
        settings::set_search_bound(b);
    }
    if let Some(n) = cli.qseries_terms {
        settings::set_qseries_terms(n);
    }
    if let Some(b) = cli.factor_bound {
        settings::set_factor_bound(b);
    }
    match run_command(&cli.command) {
        Ok(mut v) => {
            let failed = matches!(&cli.command, Command::Qcheck { .. }) && v["pass"] == json!(false);
            let mut doc = json!({ "schema": SCHEMA, "ok": true });
            doc.as_object_mut().unwrap().append(v.as_object_mut().unwrap());
            (if failed { 1 } else { 0 }, render(&doc, cli.pretty))
        }
        Err(e) => {
            let code = e.exit_code();
            (code, render(&error_doc(code, e.kind(), &e.to_string()), cli.pretty))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, Value) {
        let mut a = vec!["gd2"];
        a.extend_from_slice(args);
        let (code, out) = run(a);
        (code, serde_json::from_str(&out).unwrap())
    }

    #[test]
    fn invariants_command() {
        let (c, v) = call(&["invariants", "--poly", "X^5+X^3+2*X", "--case", "d8"]);
        assert_eq!((c, v["t"].as_str()), (0, Some("2")));
        assert_eq!(v["schema"], "gd2/1");
        let (c, v) = call(&["invariants", "--poly", "X^5+X^3+X/4", "--case", "d8"]);
        assert_eq!(c, 3);
        assert!(v["error"]["message"].as_str().unwrap().contains("repeated root"));
        assert_eq!(v["error"]["code"], 3);
        let (c, v) = call(&["invariants", "--coeffs", "3,0,0,1,0,0,1", "--case", "d12"]);
        assert_eq!((c, v["t"].as_str()), (0, Some("3")));
        let (c, _) = call(&["invariants", "--poly", "X^^2", "--case", "d8"]);
        assert_eq!(c, 2);
        let (c, _) = call(&["invariants", "--case", "d9", "--poly", "X"]);
        assert_eq!(c, 2);
    }

    #[test]
    fn construct_and_classify() {
        let (c, v) = call(&["construct", "--case", "d8", "--u", "1", "--v", "1", "--sign", "+"]);
        assert_eq!(c, 0);
        assert_eq!(v["model"]["F"], "X^6-8X^5+3X^4+3X^2+8X+1");
        assert_eq!(v["galois_type"]["type"], "C2A");
        let (c, v) = call(&["classify", "--case", "d8", "--u", "2", "--v", "2", "--z", "0"]);
        assert_eq!(c, 0);
        assert_eq!(v["galois_type"]["type"], "C2C");
        assert_eq!(v["galois_type"]["fields"]["K"], "Q(sqrt 2)");
        let (c, v) = call(&["construct", "--case", "d12", "--u", "1", "--v", "-1"]);
        assert_eq!(c, 0);
        assert_eq!(v["data"]["z"], "2");
        assert!(v["model"]["F"].as_str().unwrap().starts_with("135X^6"));
        let (c, v) = call(&["construct", "--case", "d8", "--u", "2", "--v", "1", "--w", "-1"]);
        assert_eq!(c, 4);
        assert_eq!(v["error"]["kind"], "obstructed");
    }

    #[test]
    fn other_commands() {
        let (c, v) = call(&["quotients", "--case", "d8", "--t", "-81/700"]);
        assert_eq!(c, 0);
        assert_eq!((v["rational"].as_bool(), v["cm"].as_bool()), (Some(true), Some(true)));
        assert!(v["j1"].is_string() && v["j2"].is_string());
        let (c, v) = call(&["gl2type", "--case", "d12", "--type", "c3"]);
        assert_eq!((c, v["algebra"].as_str()), (0, Some("Q(sqrt -3)")));
        let (c, v) = call(&["qcheck", "--n", "2", "--tau", "0.3+1.1i"]);
        assert_eq!((c, v["pass"].as_bool()), (0, Some(true)));
        let (c, v) = call(&["twistrel", "--case", "d8", "--m1", "1,1,0", "--m2", "1,1,0", "--d2", "-1"]);
        assert_eq!(c, 0);
        assert!(v["relation"].as_str().unwrap().starts_with("hyperelliptic"));
        let (c, v) = call(&["covering", "--h", "3", "--scenario", "deg3_quadratic"]);
        assert_eq!((c, v["covering_exists"].as_bool()), (0, Some(true)));
    }

    #[test]
    fn deterministic_output() {
        let a = run(["gd2", "construct", "--case", "d12", "--u", "2", "--v", "3"]);
        let b = run(["gd2", "construct", "--case", "d12", "--u", "2", "--v", "3"]);
        assert_eq!(a, b);
    }
}
