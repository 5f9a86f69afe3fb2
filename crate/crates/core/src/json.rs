//! JSON encodings for rings, elements and every container type.
//!
//! Integers travel as decimal strings so that arbitrarily large values
//! survive tools that parse numbers as doubles. On input, elements may also
//! be given as JSON integers or as expression strings like `"2*a - b^2"`.
//! Containers carry their ring as a string (`"poly:Z[a,b]"`); when the field
//! is absent the caller-supplied default ring is used, and a bare array is
//! accepted wherever a coordinate list is expected.

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Map, Value as Json};

use crate::endo::MatrixEndo;
use crate::error::{Result, WittError};
use crate::formal::{CycleSum, FormalSum};
use crate::ptypical::PTypicalWitt;
use crate::ring::{Elem, ElemRepr, Ring};
use crate::series::{PlainSeries, UnitSeries};
use crate::witt::{GhostVec, WittVec};

pub fn elem_to_json(e: &Elem) -> Json {
    match e.repr() {
        ElemRepr::Integer(v) => json!(v.to_string()),
        ElemRepr::Residue(v) => json!({
            "mod": e.ring().modulus().expect("residue has a modulus").to_string(),
            "val": v.to_string(),
        }),
        ElemRepr::Rational(q) => json!({ "num": q.numer().to_string(), "den": q.denom().to_string() }),
        ElemRepr::IntPoly(_) | ElemRepr::RatPoly(_) => {
            let terms: Vec<Json> = e
                .scalar_terms()
                .into_iter()
                .map(|(exps, c)| json!({ "exps": exps, "coef": scalar_string(&c) }))
                .collect();
            json!({ "vars": e.ring().vars(), "terms": terms })
        }
    }
}

fn scalar_string(c: &Elem) -> String {
    match c.repr() {
        ElemRepr::Integer(v) | ElemRepr::Residue(v) => v.to_string(),
        ElemRepr::Rational(q) if q.denom().is_one() => q.numer().to_string(),
        ElemRepr::Rational(q) => format!("{}/{}", q.numer(), q.denom()),
        _ => c.to_string(),
    }
}

fn bigint_field(v: &Json, key: &str) -> Result<BigInt> {
    match &v[key] {
        Json::String(s) => s.trim().parse().map_err(|_| WittError::parse(format!("bad integer {s:?} in field {key}"))),
        Json::Number(n) => n.to_string().parse().map_err(|_| WittError::parse(format!("bad integer {n} in field {key}"))),
        _ => Err(WittError::parse(format!("missing integer field {key}"))),
    }
}

pub fn elem_from_json(ring: &Ring, v: &Json) -> Result<Elem> {
    match v {
        Json::String(s) => ring.parse_elem(s),
        Json::Number(n) => {
            let k: BigInt = n
                .to_string()
                .parse()
                .map_err(|_| WittError::parse(format!("element {n} is not an integer")))?;
            Ok(ring.from_bigint(&k))
        }
        Json::Object(obj) if obj.contains_key("terms") => poly_from_json(ring, v),
        Json::Object(obj) if obj.contains_key("mod") => {
            let m = bigint_field(v, "mod")?;
            if ring.modulus() != Some(&m) {
                return Err(WittError::parse(format!("residue mod {m} does not belong to {ring}")));
            }
            Ok(ring.from_bigint(&bigint_field(v, "val")?))
        }
        Json::Object(obj) if obj.contains_key("num") => {
            let q = num_rational::BigRational::new(bigint_field(v, "num")?, bigint_field(v, "den")?);
            ring.from_rational(&q)
        }
        other => Err(WittError::parse(format!("cannot read an element of {ring} from {other}"))),
    }
}

fn poly_from_json(ring: &Ring, v: &Json) -> Result<Elem> {
    let names: Vec<&str> = match &v["vars"] {
        Json::Array(a) => a
            .iter()
            .map(|x| x.as_str().ok_or_else(|| WittError::parse("variable names must be strings")))
            .collect::<Result<_>>()?,
        Json::Null => ring.vars().iter().map(String::as_str).collect(),
        _ => return Err(WittError::parse("vars must be an array")),
    };
    let positions: Vec<Option<usize>> = names.iter().map(|n| ring.vars().iter().position(|r| r == n)).collect();
    let terms = v["terms"].as_array().ok_or_else(|| WittError::parse("terms must be an array"))?;
    let mut acc = ring.zero();
    for t in terms {
        let raw = t["exps"].as_array().ok_or_else(|| WittError::parse("term without exps"))?;
        if raw.len() != names.len() {
            return Err(WittError::parse("exponent vector length differs from vars"));
        }
        let mut exps = vec![0u32; ring.vars().len()];
        for (k, e) in raw.iter().enumerate() {
            let e = e
                .as_u64()
                .and_then(|e| u32::try_from(e).ok())
                .ok_or_else(|| WittError::parse("exponents must be small non-negative integers"))?;
            if e == 0 {
                continue;
            }
            let i = positions[k].ok_or_else(|| WittError::parse(format!("variable {} is not in {ring}", names[k])))?;
            exps[i] += e;
        }
        let coef = match &t["coef"] {
            Json::String(s) => ring.parse_elem(s)?,
            Json::Number(_) => elem_from_json(ring, &t["coef"])?,
            _ => return Err(WittError::parse("term without coef")),
        };
        acc = &acc + &(&ring.monomial(exps, &BigInt::one()) * &coef);
    }
    Ok(acc)
}

pub fn ring_to_json(r: &Ring) -> Json {
    json!(r.to_string())
}

/// The `ring` field of `v`, or `default` when it is absent.
pub fn ring_of(v: &Json, default: Option<&Ring>) -> Result<Ring> {
    match v.get("ring") {
        Some(Json::String(s)) => s.parse(),
        Some(_) => Err(WittError::parse("ring must be a string such as \"Z/6\"")),
        None => default.cloned().ok_or_else(|| WittError::parse("no ring given")),
    }
}

fn elems(ring: &Ring, v: &Json, key: &str) -> Result<Vec<Elem>> {
    let arr = match v {
        Json::Array(a) => a,
        _ => v
            .get(key)
            .and_then(Json::as_array)
            .ok_or_else(|| WittError::parse(format!("missing array field {key}")))?,
    };
    arr.iter().map(|x| elem_from_json(ring, x)).collect()
}

fn elems_json(xs: &[Elem]) -> Vec<Json> {
    xs.iter().map(elem_to_json).collect()
}

pub fn witt_to_json(w: &WittVec) -> Json {
    json!({ "ring": ring_to_json(w.ring()), "coords": elems_json(w.coords()) })
}

pub fn witt_from_json(v: &Json, default: Option<&Ring>) -> Result<WittVec> {
    let ring = ring_of(v, default)?;
    WittVec::new(&ring, elems(&ring, v, "coords")?)
}

pub fn ghost_to_json(g: &GhostVec) -> Json {
    json!({ "ring": ring_to_json(g.ring()), "ghost": elems_json(g.components()) })
}

pub fn ghost_from_json(v: &Json, default: Option<&Ring>) -> Result<GhostVec> {
    let ring = ring_of(v, default)?;
    GhostVec::new(&ring, elems(&ring, v, "ghost")?)
}

/// `coeffs` lists `c₁ … c_prec`; the constant term 1 is implicit.
pub fn series_to_json(s: &UnitSeries) -> Json {
    json!({ "ring": ring_to_json(s.ring()), "prec": s.precision(), "coeffs": elems_json(s.coeffs()) })
}

pub fn series_from_json(v: &Json, default: Option<&Ring>) -> Result<UnitSeries> {
    let ring = ring_of(v, default)?;
    let mut coeffs = elems(&ring, v, "coeffs")?;
    if let Some(p) = v.get("prec").and_then(Json::as_u64) {
        coeffs.resize(p as usize, ring.zero());
    }
    UnitSeries::new(&ring, coeffs)
}

/// `coeffs` lists the coefficients of `t¹ … t^prec`.
pub fn plain_series_to_json(s: &PlainSeries) -> Json {
    json!({ "ring": ring_to_json(s.ring()), "prec": s.precision(), "coeffs": elems_json(s.coeffs()) })
}

pub fn plain_series_from_json(v: &Json, default: Option<&Ring>) -> Result<PlainSeries> {
    let ring = ring_of(v, default)?;
    let mut coeffs = elems(&ring, v, "coeffs")?;
    if let Some(p) = v.get("prec").and_then(Json::as_u64) {
        coeffs.resize(p as usize, ring.zero());
    }
    PlainSeries::new(&ring, coeffs)
}

pub fn formal_to_json(x: &FormalSum) -> Json {
    let atoms: Vec<Json> = x
        .terms()
        .map(|(atom, c)| json!({ "i": atom.index, "a": elem_to_json(&atom.element), "c": c.to_string() }))
        .collect();
    json!({ "ring": ring_to_json(x.ring()), "trunc": x.truncation(), "atoms": atoms })
}

pub fn formal_from_json(v: &Json, default: Option<&Ring>, default_trunc: Option<usize>) -> Result<FormalSum> {
    let ring = ring_of(v, default)?;
    let trunc = match v.get("trunc").and_then(Json::as_u64) {
        Some(t) => t as usize,
        None => default_trunc.ok_or_else(|| WittError::parse("formal sum without trunc"))?,
    };
    let atoms = v["atoms"].as_array().ok_or_else(|| WittError::parse("missing array field atoms"))?;
    let terms = atoms
        .iter()
        .map(|a| {
            let i = a["i"].as_u64().ok_or_else(|| WittError::parse("atom without index i"))? as usize;
            let e = elem_from_json(&ring, &a["a"])?;
            let c = if a.get("c").is_some() { bigint_field(a, "c")? } else { BigInt::one() };
            Ok((i, e, c))
        })
        .collect::<Result<Vec<_>>>()?;
    FormalSum::from_terms(&ring, trunc, terms)
}

pub fn cycle_to_json(c: &CycleSum) -> Json {
    json!({ "coeffs": c.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>() })
}

pub fn cycle_from_json(v: &Json) -> Result<CycleSum> {
    let arr = match v {
        Json::Array(a) => a,
        _ => v["coeffs"].as_array().ok_or_else(|| WittError::parse("missing array field coeffs"))?,
    };
    let coeffs = arr
        .iter()
        .map(|x| bigint_field(&json!({ "v": x }), "v"))
        .collect::<Result<Vec<_>>>()?;
    Ok(CycleSum::new(coeffs))
}

pub fn ptypical_to_json(w: &PTypicalWitt) -> Json {
    json!({ "ring": ring_to_json(w.ring()), "p": w.prime(), "coords": elems_json(w.coords()) })
}

pub fn ptypical_from_json(v: &Json, default: Option<&Ring>, default_p: Option<u64>) -> Result<PTypicalWitt> {
    let ring = ring_of(v, default)?;
    let p = match v.get("p").and_then(Json::as_u64) {
        Some(p) => p,
        None => default_p.ok_or_else(|| WittError::parse("p-typical vector without p"))?,
    };
    PTypicalWitt::new(&ring, p, elems(&ring, v, "coords")?)
}

pub fn matrix_to_json(m: &MatrixEndo) -> Json {
    let rows: Vec<Json> = m.rows().iter().map(|r| Json::Array(elems_json(r))).collect();
    json!({ "ring": ring_to_json(m.ring()), "dim": m.dim(), "rows": rows })
}

pub fn matrix_from_json(v: &Json, default: Option<&Ring>) -> Result<MatrixEndo> {
    let ring = ring_of(v, default)?;
    let rows = match v {
        Json::Array(a) => a,
        _ => v["rows"].as_array().ok_or_else(|| WittError::parse("missing array field rows"))?,
    };
    let rows = rows.iter().map(|r| elems(&ring, r, "row")).collect::<Result<Vec<_>>>()?;
    MatrixEndo::from_rows(&ring, rows)
}

/// `{"kind": ..., "detail": ...}` for error reporting.
pub fn error_to_json(e: &WittError) -> Json {
    let mut inner = Map::new();
    inner.insert("kind".into(), json!(e.kind()));
    inner.insert("detail".into(), json!(e.to_string()));
    json!({ "error": inner })
}
