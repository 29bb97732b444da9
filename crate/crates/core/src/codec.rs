//! JSON encodings of every public object. Objects are emitted with sorted
//! keys; integers outside the i64 range are written as decimal strings and
//! reals always are.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::cluster::{ExchangeMatrix, Laurent, RatFn, Seed, SurfaceSpec};
use crate::drinfeld::{FrobeniusMatrix, GenericModule, SpecialModule, TorsionModule};
use crate::error::{Error, Result};
use crate::funcfield::{APoly, FFElement, FieldTower, RatFunc};
use crate::functor::{GeneratorSet, Provenance, RMData};
use crate::intpoly::IntPoly;
use crate::nctorus::{IMat, SOmm, ThetaMatrix};
use crate::numeric::{pow10, Complex, Real};
use crate::ore::OrePoly;
use crate::text;

fn bad(what: &str) -> Error {
    Error::Invalid(format!("malformed JSON: {what}"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(&format!("missing key {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(&format!("{what} must be an array")))
}

fn string<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(&format!("{what} must be a string")))
}

fn uint(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| bad(&format!("{what} must be a non-negative integer")))
}

pub fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(i) => json!(i),
        None => json!(n.to_string()),
    }
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad("integer out of range")),
        Value::String(s) => s.trim().parse().map_err(|_| bad(&format!("{s:?} is not an integer"))),
        _ => Err(bad("expected an integer")),
    }
}

pub fn imat_to_json(m: &IMat) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(int_to_json).collect())).collect())
}

pub fn imat_from_json(v: &Value) -> Result<IMat> {
    array(v, "matrix")?.iter().map(|r| array(r, "matrix row")?.iter().map(int_from_json).collect()).collect()
}

pub fn intpoly_to_json(p: &IntPoly) -> Value {
    Value::Array(p.coeffs().iter().map(int_to_json).collect())
}

/// Ascending coefficient list, or an expression in `x`.
pub fn intpoly_from_json(v: &Value) -> Result<IntPoly> {
    match v {
        Value::String(s) => text::parse_intpoly(s),
        _ => Ok(IntPoly::new(array(v, "polynomial")?.iter().map(int_from_json).collect::<Result<_>>()?)),
    }
}

/// A non-negative rational rounded up to `scale` decimals.
fn upper_decimal(q: &BigRational, scale: u32) -> String {
    let units = (q * BigRational::from_integer(pow10(scale))).ceil().to_integer();
    Real::new(units, BigInt::zero(), scale).mid_string()
}

pub fn real_to_json(x: &Real) -> Value {
    json!(x.mid_string())
}

// ----- function fields -----

pub fn ff_to_json(x: &FFElement) -> Value {
    json!({"level": x.level(), "coeffs": x.coeffs()})
}

/// `{"level", "coeffs"}` or an expression in `g` at `default_level`.
pub fn ff_from_json(tower: &FieldTower, v: &Value, default_level: u32) -> Result<FFElement> {
    match v {
        Value::String(s) => text::parse_field(tower, default_level, s),
        Value::Number(_) => text::parse_field(tower, default_level, &v.to_string()),
        _ => {
            let level = uint(field(v, "level")?, "level")? as u32;
            let coeffs: Vec<i64> = array(field(v, "coeffs")?, "coeffs")?
                .iter()
                .map(|c| c.as_i64().ok_or_else(|| bad("coefficient must be an integer")))
                .collect::<Result<_>>()?;
            tower.from_coeffs(level, &coeffs)
        }
    }
}

pub fn apoly_to_json(a: &APoly) -> Value {
    json!({"coeffs": a.coeffs().iter().map(ff_to_json).collect::<Vec<_>>()})
}

pub fn apoly_from_json(tower: &FieldTower, v: &Value) -> Result<APoly> {
    match v {
        Value::String(s) => text::parse_apoly(tower, s),
        _ => {
            let coeffs = array(field(v, "coeffs")?, "coeffs")?
                .iter()
                .map(|c| ff_from_json(tower, c, 1))
                .collect::<Result<Vec<_>>>()?;
            if coeffs.iter().any(|c| c.level() != 1) {
                return Err(bad("coefficients of A must lie in F_q (level 1)"));
            }
            Ok(APoly::new(tower, coeffs))
        }
    }
}

pub fn ratfunc_to_json(r: &RatFunc) -> Value {
    json!({"num": apoly_to_json(r.num()), "den": apoly_to_json(r.den())})
}

pub fn ratfunc_from_json(tower: &FieldTower, v: &Value) -> Result<RatFunc> {
    match v {
        Value::String(s) => text::parse_ratfunc(tower, s),
        _ => RatFunc::new(apoly_from_json(tower, field(v, "num")?)?, apoly_from_json(tower, field(v, "den")?)?),
    }
}

// ----- twisted polynomials and modules -----

pub fn ore_k_to_json(f: &OrePoly<RatFunc>) -> Value {
    json!({"twist": f.twist(), "domain": "k", "coeffs": f.coeffs().iter().map(ratfunc_to_json).collect::<Vec<_>>()})
}

pub fn ore_f_to_json(f: &OrePoly<FFElement>) -> Value {
    json!({"twist": f.twist(), "domain": "F", "level": f.ctx().1, "coeffs": f.coeffs().iter().map(ff_to_json).collect::<Vec<_>>()})
}

fn check_twist(tower: &FieldTower, v: &Value) -> Result<()> {
    if let Some(t) = v.get("twist") {
        if uint(t, "twist")? != tower.p() {
            return Err(bad("twist must equal the characteristic"));
        }
    }
    Ok(())
}

pub fn ore_k_from_json(tower: &FieldTower, v: &Value) -> Result<OrePoly<RatFunc>> {
    if let Value::String(s) = v {
        return text::parse_ore_k(tower, s);
    }
    check_twist(tower, v)?;
    if field(v, "domain")?.as_str() != Some("k") {
        return Err(Error::DomainMismatch);
    }
    let coeffs = array(field(v, "coeffs")?, "coeffs")?
        .iter()
        .map(|c| ratfunc_from_json(tower, c))
        .collect::<Result<Vec<_>>>()?;
    OrePoly::new(tower, coeffs)
}

pub fn ore_f_from_json(tower: &FieldTower, level: u32, v: &Value) -> Result<OrePoly<FFElement>> {
    if let Value::String(s) = v {
        return text::parse_ore_field(tower, level, s);
    }
    check_twist(tower, v)?;
    if field(v, "domain")?.as_str() != Some("F") {
        return Err(Error::DomainMismatch);
    }
    let coeffs = array(field(v, "coeffs")?, "coeffs")?
        .iter()
        .map(|c| ff_from_json(tower, c, level))
        .collect::<Result<Vec<_>>>()?;
    OrePoly::new(&(tower.clone(), level), coeffs)
}

/// A Drinfeld module over either kind of carrier.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyModule {
    Generic(GenericModule),
    Special(SpecialModule),
}

impl AnyModule {
    pub fn tower(&self) -> &FieldTower {
        match self {
            AnyModule::Generic(m) => m.tower(),
            AnyModule::Special(m) => m.tower(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            AnyModule::Generic(m) => m.rank(),
            AnyModule::Special(m) => m.rank(),
        }
    }
}

pub fn module_to_json(m: &AnyModule) -> Value {
    match m {
        AnyModule::Generic(d) => json!({"q": d.tower().spec_string(), "carrier": "k", "rhoT": ore_k_to_json(d.rho_t())}),
        AnyModule::Special(d) => json!({
            "q": d.tower().spec_string(),
            "carrier": {"level": d.level(), "gammaT": ff_to_json(&d.gamma_t())},
            "rhoT": ore_f_to_json(d.rho_t()),
        }),
    }
}

/// Builds a module. A string ρ_T over a special carrier is read over k
/// (where `g` generates F_q) and then specialised at γ(T).
pub fn build_module(tower: &FieldTower, carrier: Option<&FFElement>, rho_t: &Value) -> Result<AnyModule> {
    match carrier {
        None => Ok(AnyModule::Generic(GenericModule::new(ore_k_from_json(tower, rho_t)?)?)),
        Some(gamma) => {
            let d = match rho_t {
                Value::String(s) => GenericModule::new(text::parse_ore_k(tower, s)?)?.specialize(gamma)?,
                _ => SpecialModule::new(ore_f_from_json(tower, gamma.level(), rho_t)?)?,
            };
            if d.gamma_t() != *gamma {
                return Err(Error::InvalidModule(format!("constant term {} differs from γ(T) = {gamma}", d.gamma_t())));
            }
            Ok(AnyModule::Special(d))
        }
    }
}

pub fn module_from_json(v: &Value) -> Result<AnyModule> {
    let tower = FieldTower::parse(string(field(v, "q")?, "q")?)?;
    let carrier = field(v, "carrier")?;
    let gamma = match carrier {
        Value::String(s) if s == "k" => None,
        Value::Object(_) => {
            let level = uint(field(carrier, "level")?, "level")? as u32;
            let g = ff_from_json(&tower, field(carrier, "gammaT")?, level)?;
            if g.level() != level {
                return Err(bad("gammaT must live at the carrier level"));
            }
            Some(g)
        }
        _ => return Err(bad("carrier must be \"k\" or {level, gammaT}")),
    };
    build_module(&tower, gamma.as_ref(), field(v, "rhoT")?)
}

pub fn torsion_to_json(t: &TorsionModule) -> Value {
    json!({
        "a": apoly_to_json(&t.a),
        "count": t.roots.len(),
        "complete": t.complete,
        "level": t.level,
        "multiplicity": t.multiplicity,
        "roots": t.roots.iter().map(ff_to_json).collect::<Vec<_>>(),
        "separable": t.separable,
        "structure": t.structure.as_ref().map(|s| s.iter().map(|d| json!(d.to_string())).collect::<Vec<_>>()),
    })
}

pub fn frobenius_to_json(f: &FrobeniusMatrix) -> Value {
    json!({
        "modulus": f.modulus.to_string(),
        "entries": f.entries.iter().map(|r| r.iter().map(|x| json!(x.to_string())).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "basis": f.basis.iter().map(ff_to_json).collect::<Vec<_>>(),
    })
}

// ----- cluster algebras -----

pub fn seed_to_json(s: &Seed) -> Value {
    json!({
        "B": s.b.rows(),
        "vars": s.vars.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "history": s.history,
    })
}

/// A seed; `vars` defaults to the initial cluster and `history` to empty.
pub fn seed_from_json(v: &Value) -> Result<Seed> {
    let rows: Vec<Vec<i64>> = array(field(v, "B")?, "B")?
        .iter()
        .map(|r| array(r, "B row")?.iter().map(|x| x.as_i64().ok_or_else(|| bad("B entries must be integers"))).collect())
        .collect::<Result<_>>()?;
    let b = ExchangeMatrix::new(rows)?;
    let n = b.size();
    let history = match v.get("history") {
        None => Vec::new(),
        Some(h) => array(h, "history")?.iter().map(|k| uint(k, "history entry").map(|k| k as usize)).collect::<Result<_>>()?,
    };
    let vars = match v.get("vars") {
        None => return Ok(Seed { history, ..Seed::initial(b) }),
        Some(vs) => array(vs, "vars")?
            .iter()
            .map(|s| text::parse_cluster(n, string(s, "variable")?))
            .collect::<Result<Vec<RatFn>>>()?,
    };
    Seed::new(vars, b, history)
}

/// Triangles as a bare list of arc triples, or `{genus, cusps, triangles}`.
pub fn surface_from_json(v: &Value) -> Result<SurfaceSpec> {
    let (list, genus, cusps) = match v {
        Value::Array(_) => (v, None, None),
        _ => (
            field(v, "triangles")?,
            v.get("genus").map(|g| uint(g, "genus").map(|g| g as u32)).transpose()?,
            v.get("cusps").map(|g| uint(g, "cusps").map(|g| g as u32)).transpose()?,
        ),
    };
    let triangles = array(list, "triangles")?
        .iter()
        .map(|t| {
            let arcs = array(t, "triangle")?;
            if arcs.len() != 3 {
                return Err(Error::InvalidTriangulation("every triangle has three sides".into()));
            }
            Ok([uint(&arcs[0], "arc")? as usize, uint(&arcs[1], "arc")? as usize, uint(&arcs[2], "arc")? as usize])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SurfaceSpec { genus, cusps, triangles })
}

pub fn laurent_to_json(l: &Laurent) -> Value {
    Value::Array(
        l.iter()
            .map(|(e, c)| json!({"exponents": e, "coeff": int_to_json(c)}))
            .collect(),
    )
}

// ----- noncommutative tori -----

pub fn theta_to_json(t: &ThetaMatrix) -> Value {
    let scale = t.scale();
    json!({
        "m": t.dim(),
        "entries": t.entries().iter().map(|r| r.iter().map(|x| json!(x.rescale(scale).mid_string())).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "radius": upper_decimal(&t.max_radius(), scale),
    })
}

/// Entries are decimal strings; off-diagonal entries receive the common
/// radius and the diagonal is exactly zero.
pub fn theta_from_json(v: &Value) -> Result<ThetaMatrix> {
    let rows = array(field(v, "entries")?, "entries")?;
    if let Some(m) = v.get("m") {
        if uint(m, "m")? as usize != rows.len() {
            return Err(Error::ShapeMismatch("m does not match the number of rows".into()));
        }
    }
    let radius = match v.get("radius") {
        None => Real::zero(),
        Some(r) => Real::parse_decimal(string(r, "radius")?)?,
    };
    let entries = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            array(r, "row")?
                .iter()
                .enumerate()
                .map(|(j, x)| {
                    let s = match x {
                        Value::String(s) => s.clone(),
                        Value::Number(n) => n.to_string(),
                        _ => return Err(bad("entries must be decimal strings")),
                    };
                    let e = Real::parse_decimal(&s)?;
                    Ok(if i == j { e } else { e.inflate_by(&radius.mid_rational()) })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ThetaMatrix::new(entries)
}

pub fn somm_to_json(g: &SOmm) -> Value {
    json!({"A": imat_to_json(&g.a), "B": imat_to_json(&g.b), "C": imat_to_json(&g.c), "D": imat_to_json(&g.d)})
}

pub fn somm_from_json(v: &Value) -> Result<SOmm> {
    SOmm::new(
        imat_from_json(field(v, "A")?)?,
        imat_from_json(field(v, "B")?)?,
        imat_from_json(field(v, "C")?)?,
        imat_from_json(field(v, "D")?)?,
    )
}

pub fn complex_to_json(z: &Complex) -> Value {
    let r = z.re.rad_rational().max(z.im.rad_rational());
    let scale = z.re.scale().max(z.im.scale());
    json!({"re": z.re.mid_string(), "im": z.im.mid_string(), "radius": upper_decimal(&r, scale)})
}

// ----- real multiplication -----

pub fn rm_to_json(rm: &RMData) -> Value {
    let mut o = Map::new();
    o.insert("minpoly".into(), intpoly_to_json(&rm.minpoly));
    o.insert("companion".into(), imat_to_json(&rm.companion));
    o.insert("epsilon".into(), real_to_json(&rm.epsilon));
    o.insert("epsilon_radius".into(), json!(rm.epsilon.radius_string()));
    o.insert("alphas".into(), Value::Array(rm.alphas.iter().map(real_to_json).collect()));
    o.insert("precision_digits".into(), json!(rm.precision));
    o.insert("flags".into(), Value::Array(rm.flags.iter().map(|f| json!(f.as_str())).collect()));
    o.insert("provenance".into(), json!(rm.provenance.to_string()));
    if let Provenance::DrinfeldLift { a, t0 } = &rm.provenance {
        o.insert("lift".into(), json!({"a": a, "t0": int_to_json(t0)}));
    }
    o.insert(
        "roots".into(),
        Value::Array(
            rm.roots
                .iter()
                .map(|r| json!({"re": format!("{:.15e}", r.z.re), "im": format!("{:.15e}", r.z.im), "radius": format!("{:.3e}", r.radius)}))
                .collect(),
        ),
    );
    Value::Object(o)
}

/// Recomputes the data from `minpoly` and `precision_digits`, and rejects
/// documents whose ε disagrees with the recomputation.
pub fn rm_from_json(v: &Value) -> Result<RMData> {
    let p = intpoly_from_json(field(v, "minpoly")?)?;
    let precision = match v.get("precision_digits") {
        Some(x) => uint(x, "precision_digits")? as u32,
        None => 50,
    };
    let provenance = match v.get("provenance").and_then(|x| x.as_str()) {
        None | Some("direct minpoly") => Provenance::DirectMinpoly,
        Some("drinfeld+lift") => {
            let lift = field(v, "lift")?;
            Provenance::DrinfeldLift {
                a: string(field(lift, "a")?, "a")?.to_string(),
                t0: int_from_json(field(lift, "t0")?)?,
            }
        }
        Some(other) => return Err(bad(&format!("unknown provenance {other:?}"))),
    };
    let rm = crate::functor::rm_data(&p, precision, provenance)?;
    if let Some(e) = v.get("epsilon") {
        if string(e, "epsilon")? != rm.epsilon.mid_string() {
            return Err(Error::Invalid("epsilon does not match the recomputed value".into()));
        }
    }
    Ok(rm)
}

pub fn generators_to_json(g: &GeneratorSet) -> Value {
    let mut o = Map::new();
    o.insert("mode".into(), json!(g.mode.as_str()));
    o.insert("precision_digits".into(), json!(g.precision));
    o.insert("values".into(), Value::Array(g.values.iter().map(complex_to_json).collect()));
    if let Some(c) = &g.certified {
        o.insert(
            "certified".into(),
            Value::Array(c.iter().map(|p| p.as_ref().map_or(Value::Null, intpoly_to_json)).collect()),
        );
    }
    Value::Object(o)
}
