//! JSON encodings shared by the CLI and the C interface. Integers up to
//! 2^53 in magnitude are plain numbers, larger ones decimal strings.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::ffalg::{FieldCtx, FqMat};
use crate::genff::GenTuple;
use crate::genz::ZMat;
use crate::polys::IntPoly;
use crate::sampler::MultiPoly;

const SAFE: i64 = 1 << 53;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidJson(msg.into())
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| invalid(e.to_string()))
}

pub fn big_to_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) if x.abs() <= SAFE => json!(x),
        _ => json!(v.to_string()),
    }
}

/// Always a decimal string.
pub fn big_string(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

pub fn big_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| invalid(format!("{n} is not an integer"))),
        Value::String(s) => s.trim().parse().map_err(|_| invalid(format!("{s:?} is not a decimal integer"))),
        other => Err(invalid(format!("expected an integer, got {other}"))),
    }
}

/// A double rounded to 15 significant digits.
pub fn float(v: f64) -> Value {
    if !v.is_finite() {
        return Value::Null;
    }
    let r: f64 = format!("{v:.14e}").parse().expect("formatted float");
    json!(r)
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| invalid(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| invalid(format!("{what} must be an array")))
}

fn usize_field(obj: &Value, key: &str) -> Result<usize> {
    field(obj, key)?.as_u64().map(|x| x as usize).ok_or_else(|| invalid(format!("{key:?} must be a nonnegative integer")))
}

pub fn zmat_to_json(m: &ZMat) -> Value {
    json!({ "n": m.n(), "entries": m.entries().iter().map(big_to_json).collect::<Vec<_>>() })
}

pub fn zmat_from_json(v: &Value) -> Result<ZMat> {
    let n = usize_field(v, "n")?;
    let entries = array(field(v, "entries")?, "entries")?.iter().map(big_from_json).collect::<Result<Vec<_>>>()?;
    if entries.len() != n * n {
        return Err(invalid(format!("a {n}x{n} matrix needs {} entries, got {}", n * n, entries.len())));
    }
    ZMat::new(n, entries)
}

pub fn fqmat_to_json(ctx: &FieldCtx, m: &FqMat) -> Value {
    let entries: Vec<Value> = if ctx.s() == 1 {
        m.entries().iter().map(|e| json!(e.code())).collect()
    } else {
        m.entries().iter().map(|&e| json!(ctx.coeffs(e))).collect()
    };
    json!({ "n": m.n(), "entries": entries })
}

/// Entries are coefficient vectors, low degree first; a plain integer is read
/// as an element of the prime field.
pub fn fqmat_from_json(ctx: &FieldCtx, v: &Value) -> Result<FqMat> {
    let n = usize_field(v, "n")?;
    let raw = array(field(v, "entries")?, "entries")?;
    if raw.len() != n * n {
        return Err(invalid(format!("a {n}x{n} matrix needs {} entries, got {}", n * n, raw.len())));
    }
    let p = BigInt::from(ctx.p());
    let residue = |x: &Value| -> Result<u64> {
        let b = big_from_json(x)?;
        Ok(((b % &p + &p) % &p).to_u64().expect("below p"))
    };
    let entries = raw
        .iter()
        .map(|e| match e {
            Value::Array(cs) => {
                if cs.len() > ctx.s() as usize {
                    return Err(invalid(format!("coefficient vector longer than s = {}", ctx.s())));
                }
                let cs = cs.iter().map(residue).collect::<Result<Vec<_>>>()?;
                ctx.from_coeffs(&cs)
            }
            other => Ok(ctx.from_int(residue(other)? as i64)),
        })
        .collect::<Result<Vec<_>>>()?;
    FqMat::new(n, entries)
}

pub fn tuple_to_json<M>(t: &GenTuple<M>, enc: impl Fn(&M) -> Value) -> Value {
    let elements: Vec<Value> = t.elements.iter().map(|el| Value::Array(el.iter().map(&enc).collect())).collect();
    json!({ "k": t.k(), "elements": elements })
}

/// The element list of a tuple document; a bare array is accepted too.
pub fn tuple_elements(v: &Value) -> Result<&Vec<Value>> {
    match v {
        Value::Array(els) => Ok(els),
        _ => array(field(v, "elements")?, "elements"),
    }
}

pub fn tuple_from_json<M>(v: &Value, dec: impl Fn(&Value) -> Result<M>) -> Result<GenTuple<M>> {
    let raw = tuple_elements(v)?;
    if let Some(k) = v.get("k") {
        if k.as_u64() != Some(raw.len() as u64) {
            return Err(invalid(format!("\"k\" = {k} disagrees with {} elements", raw.len())));
        }
    }
    let elements = raw
        .iter()
        .map(|el| match el {
            // a bare matrix stands for a one-factor element
            Value::Object(_) => Ok(vec![dec(el)?]),
            other => array(other, "element")?.iter().map(&dec).collect(),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GenTuple::new(elements))
}

pub fn intpoly_to_json(f: &IntPoly) -> Value {
    Value::Array(f.coeffs().iter().map(big_to_json).collect())
}

pub fn intpoly_from_json(v: &Value) -> Result<IntPoly> {
    let cs = array(v, "polynomial")?.iter().map(big_from_json).collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(cs))
}

/// A list of polynomials, each a map from comma-separated exponent vectors
/// (`"2,0"` is `x1^2`) to coefficients. All must have the same arity.
pub fn multipolys_from_json(v: &Value) -> Result<Vec<MultiPoly>> {
    let list = array(v, "polynomial list")?;
    let mut out = Vec::with_capacity(list.len());
    let mut arity = None;
    for f in list {
        let map = f.as_object().ok_or_else(|| invalid("each polynomial must be an object"))?;
        let mut terms = Vec::with_capacity(map.len());
        for (key, c) in map {
            let e = key
                .split(',')
                .map(|d| d.trim().parse::<u32>().map_err(|_| invalid(format!("bad exponent vector {key:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if *arity.get_or_insert(e.len()) != e.len() {
                return Err(invalid(format!("exponent vector {key:?} has the wrong length")));
            }
            terms.push((e, big_from_json(c)?));
        }
        let n = arity.ok_or_else(|| invalid("polynomial with no terms; write the zero polynomial as {\"0\": 0}"))?;
        out.push(MultiPoly::new(n, terms)?);
    }
    Ok(out)
}

pub fn multipoly_to_json(f: &MultiPoly) -> Value {
    let map: Map<String, Value> = f
        .terms()
        .map(|(e, c)| (e.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","), big_to_json(c)))
        .collect();
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::make_field;

    #[test]
    fn big_integers() {
        assert_eq!(big_to_json(&BigInt::from(5)), json!(5));
        let huge = BigInt::from(1u64 << 60);
        assert_eq!(big_to_json(&huge), json!("1152921504606846976"));
        assert_eq!(big_from_json(&json!("-12")).unwrap(), BigInt::from(-12));
        assert!(big_from_json(&json!(1.5)).is_err());
        assert_eq!(float(0.1 + 0.2), json!(0.3));
    }

    #[test]
    fn matrices_round_trip() {
        let m = ZMat::new(2, vec![BigInt::from(1), BigInt::from(-1) << 70, BigInt::from(0), BigInt::from(3)]).unwrap();
        assert_eq!(zmat_from_json(&zmat_to_json(&m)).unwrap(), m);
        let f4 = make_field(2, 2).unwrap();
        let u = f4.multiplicative_generator();
        let a = FqMat::new(2, vec![u, f4.one(), f4.zero(), f4.mul(u, u)]).unwrap();
        let v = fqmat_to_json(&f4, &a);
        assert_eq!(fqmat_from_json(&f4, &v).unwrap(), a);
        let f3 = make_field(3, 1).unwrap();
        let b = fqmat_from_json(&f3, &json!({"n": 1, "entries": [-1]})).unwrap();
        assert_eq!(b.get(0, 0), f3.from_int(2));
        assert!(zmat_from_json(&json!({"n": 2, "entries": [1, 2, 3]})).is_err());
    }

    #[test]
    fn tuples_and_polys() {
        let t = GenTuple::of_matrices(vec![ZMat::unit(2, 1, 2), ZMat::unit(2, 2, 1)]);
        let v = tuple_to_json(&t, zmat_to_json);
        assert_eq!(v["k"], json!(2));
        assert_eq!(tuple_from_json(&v, zmat_from_json).unwrap(), t);
        let fs = multipolys_from_json(&json!([{"1,0": 1}, {"0,2": "3", "0,0": -1}])).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[1].eval(&[0, 2]), BigInt::from(11));
        assert_eq!(multipoly_to_json(&fs[0]), json!({"1,0": 1}));
        assert!(multipolys_from_json(&json!([{"1,0": 1}, {"1": 1}])).is_err());
        let f = intpoly_from_json(&json!([1, "0", -2])).unwrap();
        assert_eq!(intpoly_to_json(&f), json!([1, 0, -2]));
    }
}
