//! JSON encoding of presentations.
//!
//! Scalars encode as "p/q" strings (rational values always render that way)
//! or as {"order": n, "coeffs": ["p/q", ...]} objects with phi(n) coefficients.
//! The mult/comult/antipode tensors nest; phi is a flat length-n^3 array in
//! the big-endian flat-index convention.

use num_rational::BigRational;
use serde_json::{json, Map, Value};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, TensorElement};
use crate::scalar::{euler_phi, FieldContext, Scalar};

use super::{AlgebraPresentation, PresentationData};

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s.as_rational() {
        Some(r) => Value::String(r.to_string()),
        None => match s {
            Scalar::Cyclotomic(c) => {
                let coeffs: Vec<Value> = c
                    .coeffs
                    .iter()
                    .map(|x| Value::String(x.to_string()))
                    .collect();
                json!({ "order": c.order, "coeffs": coeffs })
            }
            Scalar::Rational(_) => unreachable!("rational handled above"),
        },
    }
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => {
            let r = BigRational::from_str(s)
                .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            Ok(Scalar::Rational(r))
        }
        Value::Number(n) => {
            let text = n.to_string();
            if text.contains('.') {
                return Err(Error::Parse(format!(
                    "scalar {text} is not exact; use a \"p/q\" string"
                )));
            }
            let r = BigRational::from_str(&text)
                .map_err(|_| Error::Parse(format!("bad integer {text:?}")))?;
            Ok(Scalar::Rational(r))
        }
        Value::Object(map) => {
            let order = map
                .get("order")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("cyclotomic scalar needs integer order".into()))?
                as u32;
            if order == 0 {
                return Err(Error::Parse("cyclotomic order must be positive".into()));
            }
            let coeffs_json = map
                .get("coeffs")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("cyclotomic scalar needs a coeffs array".into()))?;
            if coeffs_json.len() != euler_phi(order) {
                return Err(Error::Parse(format!(
                    "order {} needs {} coefficients, got {}",
                    order,
                    euler_phi(order),
                    coeffs_json.len()
                )));
            }
            let mut acc = Scalar::zero();
            for (k, cj) in coeffs_json.iter().enumerate() {
                let c = scalar_from_json(cj)?;
                let term = c.checked_mul(&Scalar::root_of_unity(order, k as i64))?;
                acc = acc.checked_add(&term)?;
            }
            // force the declared order even for rational-valued elements
            FieldContext::Cyclotomic(order).coerce(&acc)
        }
        _ => Err(Error::Parse(format!("cannot read scalar from {v}"))),
    }
}

fn field_to_json(f: &FieldContext) -> Value {
    match f {
        FieldContext::Rational => json!({ "type": "Q" }),
        FieldContext::Cyclotomic(n) => json!({ "type": "cyclotomic", "order": n }),
    }
}

fn field_from_json(v: &Value) -> Result<FieldContext> {
    let t = v
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("field needs a type".into()))?;
    match t {
        "Q" => Ok(FieldContext::Rational),
        "cyclotomic" => {
            let order = v
                .get("order")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("cyclotomic field needs an order".into()))?;
            Ok(FieldContext::Cyclotomic(order as u32))
        }
        other => Err(Error::Parse(format!("unknown field type {other:?}"))),
    }
}

fn vec_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

fn vec_from_json(v: &Value, expect: usize, what: &str) -> Result<Vec<Scalar>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be an array")))?;
    if arr.len() != expect {
        return Err(Error::Parse(format!(
            "{what} must have length {expect}, got {}",
            arr.len()
        )));
    }
    arr.iter().map(scalar_from_json).collect()
}

fn nested3_to_json(t: &TensorElement) -> Value {
    let n = t.dim;
    let mut outer = Vec::with_capacity(n);
    for i in 0..n {
        let mut mid = Vec::with_capacity(n);
        for j in 0..n {
            let mut inner = Vec::with_capacity(n);
            for k in 0..n {
                inner.push(scalar_to_json(t.get(&[i, j, k])));
            }
            mid.push(Value::Array(inner));
        }
        outer.push(Value::Array(mid));
    }
    Value::Array(outer)
}

fn nested3_from_json(v: &Value, n: usize, what: &str) -> Result<TensorElement> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be a nested array")))?;
    if rows.len() != n {
        return Err(Error::Parse(format!("{what} must be {n}x{n}x{n}")));
    }
    let mut t = TensorElement::zero(n, 3);
    for (i, row) in rows.iter().enumerate() {
        let mids = row
            .as_array()
            .filter(|a| a.len() == n)
            .ok_or_else(|| Error::Parse(format!("{what} must be {n}x{n}x{n}")))?;
        for (j, mid) in mids.iter().enumerate() {
            let cells = mid
                .as_array()
                .filter(|a| a.len() == n)
                .ok_or_else(|| Error::Parse(format!("{what} must be {n}x{n}x{n}")))?;
            for (k, cell) in cells.iter().enumerate() {
                t.set(&[i, j, k], scalar_from_json(cell)?);
            }
        }
    }
    Ok(t)
}

pub fn presentation_to_json(h: &AlgebraPresentation) -> Value {
    let n = h.dim;
    let mut antipode_rows = Vec::with_capacity(n);
    for r in 0..n {
        let row: Vec<Value> = (0..n).map(|c| scalar_to_json(h.antipode.get(r, c))).collect();
        antipode_rows.push(Value::Array(row));
    }
    let mut m = Map::new();
    m.insert("dim".into(), json!(n));
    m.insert("field".into(), field_to_json(&h.field));
    m.insert("basis_labels".into(), json!(h.basis_labels));
    m.insert("mult".into(), nested3_to_json(&h.mult));
    m.insert("unit".into(), vec_to_json(&h.unit));
    m.insert("comult".into(), nested3_to_json(&h.comult));
    m.insert("counit".into(), vec_to_json(&h.counit));
    m.insert("phi".into(), vec_to_json(&h.phi.coords));
    m.insert("antipode".into(), Value::Array(antipode_rows));
    m.insert("alpha".into(), vec_to_json(&h.alpha));
    m.insert("beta".into(), vec_to_json(&h.beta));
    Value::Object(m)
}

pub fn parse_presentation(v: &Value) -> Result<AlgebraPresentation> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("presentation must be a JSON object".into()))?;
    let n = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("presentation needs an integer dim".into()))?
        as usize;
    if n == 0 {
        return Err(Error::Parse("dim must be positive".into()));
    }
    let field = field_from_json(
        obj.get("field")
            .ok_or_else(|| Error::Parse("presentation needs a field".into()))?,
    )?;
    let basis_labels: Vec<String> = match obj.get("basis_labels") {
        Some(Value::Array(a)) if a.len() == n => a
            .iter()
            .map(|x| x.as_str().map(str::to_string))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse("basis_labels must be strings".into()))?,
        None => (0..n).map(|i| format!("e{i}")).collect(),
        _ => return Err(Error::Parse("basis_labels must list dim strings".into())),
    };
    let get = |k: &str| -> Result<&Value> {
        obj.get(k)
            .ok_or_else(|| Error::Parse(format!("presentation needs {k:?}")))
    };
    let mult = nested3_from_json(get("mult")?, n, "mult")?;
    let comult = nested3_from_json(get("comult")?, n, "comult")?;
    let unit = vec_from_json(get("unit")?, n, "unit")?;
    let counit = vec_from_json(get("counit")?, n, "counit")?;
    let phi_coords = vec_from_json(get("phi")?, n * n * n, "phi")?;
    let phi = TensorElement::from_coords(n, 3, phi_coords);
    let alpha = vec_from_json(get("alpha")?, n, "alpha")?;
    let beta = vec_from_json(get("beta")?, n, "beta")?;
    let antipode_rows = get("antipode")?
        .as_array()
        .filter(|a| a.len() == n)
        .ok_or_else(|| Error::Parse(format!("antipode must be {n}x{n}")))?;
    let mut antipode = Matrix::zero(n, n);
    for (r, row) in antipode_rows.iter().enumerate() {
        let cells = row
            .as_array()
            .filter(|a| a.len() == n)
            .ok_or_else(|| Error::Parse(format!("antipode must be {n}x{n}")))?;
        for (c, cell) in cells.iter().enumerate() {
            antipode.set(r, c, scalar_from_json(cell)?);
        }
    }
    let label = obj
        .get("label")
        .and_then(Value::as_str)
        .unwrap_or("file-input")
        .to_string();
    AlgebraPresentation::from_data(PresentationData {
        dim: n,
        basis_labels,
        field,
        mult,
        unit,
        comult,
        counit,
        phi,
        phi_inv: None,
        antipode,
        alpha,
        beta,
        label,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_json_round_trip() {
        let samples = vec![
            Scalar::from_int(3),
            Scalar::from_fraction(-7, 2),
            Scalar::root_of_unity(3, 1),
            Scalar::root_of_unity(8, 5)
                .checked_add(&Scalar::from_fraction(1, 3))
                .unwrap(),
        ];
        for s in samples {
            let v = scalar_to_json(&s);
            assert_eq!(scalar_from_json(&v).unwrap(), s);
        }
    }

    #[test]
    fn rational_valued_cyclotomic_renders_as_string() {
        let s = Scalar::root_of_unity(4, 2); // -1
        assert_eq!(scalar_to_json(&s), Value::String("-1".into()));
    }
}
