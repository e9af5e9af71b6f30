//! JSON encodings of the core types. Integers travel as decimal strings;
//! plain JSON integers are accepted on input.

use cck_core::covers::{mapping_torus_complex, TwistedChainComplex};
use cck_core::laurent_modules::ModulePresentation;
use cck_core::matrix::{identity, Matrix};
use cck_core::periodicity::FgAbelianAutomorphism;
use cck_core::rings::{Field, Integers, LaurentPoly, Poly, Ring};
use cck_core::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

fn err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

fn field<'a>(obj: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    obj.as_object()
        .ok_or_else(|| err(path, "expected an object"))?
        .get(key)
        .ok_or_else(|| err(path, format!("missing field `{key}`")))
}

pub fn int(v: &Value, path: &str) -> Result<BigInt> {
    match v {
        Value::String(s) => s.trim().parse().map_err(|_| err(path, format!("`{s}` is not an integer"))),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(i.into())
            } else if let Some(u) = n.as_u64() {
                Ok(u.into())
            } else {
                Err(err(path, format!("{n} is not an integer")))
            }
        }
        _ => Err(err(path, "expected an integer (string or number)")),
    }
}

pub fn small_int(v: &Value, path: &str) -> Result<i64> {
    i64::try_from(int(v, path)?).map_err(|_| err(path, "integer out of range"))
}

pub fn count(v: &Value, path: &str) -> Result<usize> {
    usize::try_from(int(v, path)?).map_err(|_| err(path, "expected a nonnegative count"))
}

pub fn rational(v: &Value, path: &str) -> Result<BigRational> {
    if let Value::String(s) = v {
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| err(path, format!("`{s}` is not a rational")))?;
            let d: BigInt = d.trim().parse().map_err(|_| err(path, format!("`{s}` is not a rational")))?;
            if d.is_zero() {
                return Err(err(path, "zero denominator"));
            }
            return Ok(BigRational::new(n, d));
        }
    }
    int(v, path).map(BigRational::from_integer)
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

/// `{"val": i, "coeffs": ["c0", ...]}`; a bare integer is a constant.
pub fn laurent(v: &Value, path: &str) -> Result<LaurentPoly<Integers>> {
    if !v.is_object() {
        return Ok(LaurentPoly::constant(Integers, int(v, path)?));
    }
    let val = small_int(field(v, "val", path)?, &format!("{path}.val"))?;
    let coeffs = array(field(v, "coeffs", path)?, &format!("{path}.coeffs"))?
        .iter()
        .enumerate()
        .map(|(i, c)| int(c, &format!("{path}.coeffs[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentPoly::from_coeffs(Integers, val, coeffs))
}

pub fn laurent_json<R: Ring>(p: &LaurentPoly<R>) -> Value {
    if p.is_zero() {
        return json!({"val": "0", "coeffs": []});
    }
    json!({
        "val": p.valuation().to_string(),
        "coeffs": p.body().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

/// `{"rows": r, "cols": c, "entries": [[...], ...]}` or a bare array of rows
/// (only when there is at least one row).
fn matrix_with<T: Clone>(
    v: &Value,
    path: &str,
    entry: impl Fn(&Value, &str) -> Result<T>,
) -> Result<Matrix<T>> {
    let (rows_v, shape) = if v.is_array() {
        (v, None)
    } else {
        let r = count(field(v, "rows", path)?, &format!("{path}.rows"))?;
        let c = count(field(v, "cols", path)?, &format!("{path}.cols"))?;
        (field(v, "entries", path)?, Some((r, c)))
    };
    let rows = array(rows_v, &format!("{path}.entries"))?;
    let cols = match shape {
        Some((r, c)) => {
            if rows.len() != r {
                return Err(err(path, format!("{} rows given, {r} declared", rows.len())));
            }
            c
        }
        None => match rows.first() {
            Some(first) => array(first, &format!("{path}[0]"))?.len(),
            None => return Err(err(path, "a bare empty array has no shape; use the object form")),
        },
    };
    let mut data = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = array(row, &format!("{path}.entries[{i}]"))?;
        if row.len() != cols {
            return Err(err(path, format!("row {i} has {} entries, expected {cols}", row.len())));
        }
        data.push(
            row.iter()
                .enumerate()
                .map(|(j, x)| entry(x, &format!("{path}.entries[{i}][{j}]")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Matrix::from_rows(data, cols)
}

pub fn laurent_matrix(v: &Value, path: &str) -> Result<Matrix<LaurentPoly<Integers>>> {
    matrix_with(v, path, laurent)
}

pub fn int_matrix(v: &Value, path: &str) -> Result<Matrix<BigInt>> {
    matrix_with(v, path, int)
}

pub fn rational_matrix(v: &Value, path: &str) -> Result<Matrix<BigRational>> {
    matrix_with(v, path, rational)
}

pub fn matrix_json<T: Clone>(m: &Matrix<T>, entry: impl Fn(&T) -> Value) -> Value {
    json!({
        "rows": m.rows().to_string(),
        "cols": m.cols().to_string(),
        "entries": (0..m.rows())
            .map(|r| m.row(r).iter().map(&entry).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn string_matrix_json<T: Clone + ToString>(m: &Matrix<T>) -> Value {
    matrix_json(m, |x| Value::String(x.to_string()))
}

pub fn poly_json<F: Field>(p: &Poly<F>) -> Value {
    json!({
        "coeffs": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "text": p.to_string(),
    })
}

pub fn module(v: &Value, path: &str) -> Result<ModulePresentation> {
    let g = count(field(v, "generators", path)?, &format!("{path}.generators"))?;
    let rel_v = field(v, "relations", path)?;
    let relations = laurent_matrix(rel_v, &format!("{path}.relations"))?;
    ModulePresentation::new(g, relations)
}

fn list<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Vec<Value>> {
    array(field(v, key, path)?, &format!("{path}.{key}"))
}

fn ranks(v: &Value, path: &str) -> Result<Vec<usize>> {
    list(v, "ranks", path)?
        .iter()
        .enumerate()
        .map(|(i, r)| count(r, &format!("{path}.ranks[{i}]")))
        .collect()
}

/// Either `{"ranks", "boundaries"}` or the mapping-torus input
/// `{"ranks", "boundaries_F", "f"}`.
pub fn complex(v: &Value, path: &str) -> Result<TwistedChainComplex> {
    let obj = v.as_object().ok_or_else(|| err(path, "expected an object"))?;
    if obj.contains_key("boundaries_F") || obj.contains_key("f") {
        let (r, bf, f) = mapping_torus_input(v, path)?;
        return mapping_torus_complex(&r, &bf, &f);
    }
    let r = ranks(v, path)?;
    let boundaries = list(v, "boundaries", path)?
        .iter()
        .enumerate()
        .map(|(i, b)| laurent_matrix(b, &format!("{path}.boundaries[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    TwistedChainComplex::new(r, boundaries)
}

type MappingTorusInput = (Vec<usize>, Vec<Matrix<BigInt>>, Vec<Matrix<BigInt>>);

pub fn mapping_torus_input(v: &Value, path: &str) -> Result<MappingTorusInput> {
    let r = ranks(v, path)?;
    let bf = list(v, "boundaries_F", path)?
        .iter()
        .enumerate()
        .map(|(i, b)| int_matrix(b, &format!("{path}.boundaries_F[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let f = list(v, "f", path)?
        .iter()
        .enumerate()
        .map(|(i, b)| int_matrix(b, &format!("{path}.f[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok((r, bf, f))
}

pub fn complex_json(x: &TwistedChainComplex) -> Value {
    json!({
        "ranks": x.ranks().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "boundaries": x.boundaries().iter().map(|b| matrix_json(b, laurent_json)).collect::<Vec<_>>(),
    })
}

/// `{"free", "torsion_orders", "torsion", "mixing"}`; the torsion fields
/// may be omitted for a free group.
pub fn automorphism(v: &Value, path: &str) -> Result<FgAbelianAutomorphism> {
    let free = int_matrix(field(v, "free", path)?, &format!("{path}.free"))?;
    let obj = v.as_object().ok_or_else(|| err(path, "expected an object"))?;
    let orders = match obj.get("torsion_orders") {
        Some(o) => array(o, &format!("{path}.torsion_orders"))?
            .iter()
            .enumerate()
            .map(|(i, d)| int(d, &format!("{path}.torsion_orders[{i}]")))
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    let s = orders.len();
    // Missing blocks default to the identity on the torsion and no mixing.
    let block = |key: &str, default: Matrix<BigInt>| -> Result<Matrix<BigInt>> {
        match obj.get(key) {
            Some(m) if !(default.rows() == 0 && m.as_array().is_some_and(|a| a.is_empty())) => {
                int_matrix(m, &format!("{path}.{key}"))
            }
            _ => Ok(default),
        }
    };
    let torsion = block("torsion", identity(&Integers, s))?;
    let mixing = block("mixing", Matrix::filled(s, free.cols(), BigInt::zero()))?;
    FgAbelianAutomorphism::new(free, orders, torsion, mixing)
}
