//! JSON forms of the documented interchange schemas.
//!
//! Matrices: `{"rows": n, "cols": m, "entries": [[poly, ...], ...]}` with
//! entries in the textual polynomial syntax. Corelations:
//! `{"m": .., "n": .., "kernel_rep": <matrix>}`. Traces:
//! `{"t0": .., "t1": .., "u": [[..]], "v": [[..]], "registers": [[..]]}` with
//! field elements as strings.

use serde_json::{json, Map, Value};

use crate::control::ControllabilityReport;
use crate::linalg::PolyMatrix;
use crate::opsem::TraceWindow;
use crate::ring::field::Field;
use crate::ring::poly::LaurentPoly;
use crate::semantics::{Corelation, Span};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonError(pub String);

impl std::fmt::Display for JsonError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "malformed JSON value: {}", self.0)
    }
}

impl std::error::Error for JsonError {}

fn bad<T>(msg: impl Into<String>) -> Result<T, JsonError> {
    Err(JsonError(msg.into()))
}

/// Pair form of a polynomial: `[[exponent, coefficient-string], ...]` with
/// strictly increasing exponents.
pub fn poly_to_json<F: Field>(p: &LaurentPoly<F>) -> Value {
    Value::Array(
        p.to_exp_pairs()
            .into_iter()
            .map(|(e, c)| json!([e, c]))
            .collect(),
    )
}

pub fn poly_from_json<F: Field>(v: &Value) -> Result<LaurentPoly<F>, JsonError> {
    let arr = v.as_array().ok_or(JsonError("expected array".into()))?;
    let mut pairs = Vec::with_capacity(arr.len());
    for item in arr {
        let pair = item.as_array().ok_or(JsonError("expected [exp, coeff]".into()))?;
        if pair.len() != 2 {
            return bad("expected [exp, coeff]");
        }
        let e = pair[0].as_i64().ok_or(JsonError("bad exponent".into()))?;
        let c = pair[1].as_str().ok_or(JsonError("coefficient must be string".into()))?;
        pairs.push((e, c.to_string()));
    }
    LaurentPoly::from_exp_pairs(&pairs).map_err(|e| JsonError(e.to_string()))
}

pub fn matrix_to_json<F: Field>(m: &PolyMatrix<F>) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                (0..m.cols())
                    .map(|j| Value::String(m.at(i, j).to_string()))
                    .collect(),
            )
        })
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

pub fn matrix_from_json<F: Field>(v: &Value) -> Result<PolyMatrix<F>, JsonError> {
    let obj = v.as_object().ok_or(JsonError("expected object".into()))?;
    let rows = get_usize(obj, "rows")?;
    let cols = get_usize(obj, "cols")?;
    let entries = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or(JsonError("missing entries".into()))?;
    if entries.len() != rows {
        return bad(format!("expected {rows} rows, got {}", entries.len()));
    }
    let mut out = Vec::with_capacity(rows * cols);
    for row in entries {
        let row = row.as_array().ok_or(JsonError("row must be array".into()))?;
        if row.len() != cols {
            return bad(format!("expected {cols} columns, got {}", row.len()));
        }
        for cell in row {
            let text = cell.as_str().ok_or(JsonError("entry must be string".into()))?;
            out.push(LaurentPoly::parse(text).map_err(|e| JsonError(e.to_string()))?);
        }
    }
    Ok(PolyMatrix::new(rows, cols, out))
}

fn get_usize(obj: &Map<String, Value>, key: &str) -> Result<usize, JsonError> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or(JsonError(format!("missing field `{key}`")))
}

fn get_i64(obj: &Map<String, Value>, key: &str) -> Result<i64, JsonError> {
    obj.get(key)
        .and_then(Value::as_i64)
        .ok_or(JsonError(format!("missing field `{key}`")))
}

pub fn corelation_to_json<F: Field>(x: &Corelation<F>) -> Value {
    json!({ "m": x.m, "n": x.n, "kernel_rep": matrix_to_json(x.kernel_rep()) })
}

pub fn corelation_from_json<F: Field>(v: &Value) -> Result<Corelation<F>, JsonError> {
    let obj = v.as_object().ok_or(JsonError("expected object".into()))?;
    let m = get_usize(obj, "m")?;
    let n = get_usize(obj, "n")?;
    let rep = matrix_from_json(
        obj.get("kernel_rep")
            .ok_or(JsonError("missing kernel_rep".into()))?,
    )?;
    if rep.cols() != m + n {
        return bad("kernel_rep width must be m + n");
    }
    Ok(Corelation::from_kernel_rep(m, n, &rep))
}

fn signal_to_json<F: Field>(rows: &[Vec<F>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|row| {
                Value::Array(row.iter().map(|x| Value::String(x.to_string())).collect())
            })
            .collect(),
    )
}

fn signal_from_json<F: Field>(v: &Value, width: Option<usize>) -> Result<Vec<Vec<F>>, JsonError> {
    let arr = v.as_array().ok_or(JsonError("expected array".into()))?;
    let mut out = Vec::with_capacity(arr.len());
    for row in arr {
        let row = row.as_array().ok_or(JsonError("expected inner array".into()))?;
        if let Some(w) = width {
            if row.len() != w {
                return bad(format!("expected width {w}, got {}", row.len()));
            }
        }
        let mut vals = Vec::with_capacity(row.len());
        for cell in row {
            let text = cell.as_str().ok_or(JsonError("value must be string".into()))?;
            vals.push(F::parse(text).map_err(|e| JsonError(e.to_string()))?);
        }
        out.push(vals);
    }
    Ok(out)
}

pub fn trace_to_json<F: Field>(w: &TraceWindow<F>) -> Value {
    let mut obj = Map::new();
    obj.insert("t0".into(), json!(w.t0));
    obj.insert("t1".into(), json!(w.t1));
    obj.insert("u".into(), signal_to_json(&w.u));
    obj.insert("v".into(), signal_to_json(&w.v));
    if let Some(regs) = &w.registers {
        obj.insert("registers".into(), signal_to_json(regs));
    }
    Value::Object(obj)
}

pub fn trace_from_json<F: Field>(
    v: &Value,
    m: usize,
    n: usize,
    d: usize,
) -> Result<TraceWindow<F>, JsonError> {
    let obj = v.as_object().ok_or(JsonError("expected object".into()))?;
    let t0 = get_i64(obj, "t0")?;
    let t1 = get_i64(obj, "t1")?;
    if t1 < t0 {
        return bad("t1 must be >= t0");
    }
    let steps = (t1 - t0 + 1) as usize;
    let u = signal_from_json(obj.get("u").ok_or(JsonError("missing u".into()))?, Some(m))?;
    let v_sig = signal_from_json(obj.get("v").ok_or(JsonError("missing v".into()))?, Some(n))?;
    if u.len() != steps || v_sig.len() != steps {
        return bad("u and v must each have t1 - t0 + 1 entries");
    }
    let registers = match obj.get("registers") {
        None | Some(Value::Null) => None,
        Some(r) => {
            let regs = signal_from_json::<F>(r, Some(d))?;
            if regs.len() != steps + 1 {
                return bad("registers must have t1 - t0 + 2 entries");
            }
            Some(regs)
        }
    };
    Ok(TraceWindow {
        t0,
        t1,
        u,
        v: v_sig,
        registers,
    })
}

pub fn span_to_json<F: Field>(sp: &Span<F>) -> Value {
    json!({
        "m": sp.m,
        "n": sp.n,
        "waist": sp.waist,
        "r": matrix_to_json(&sp.r),
        "s": matrix_to_json(&sp.s),
    })
}

pub fn report_to_json<F: Field>(r: &ControllabilityReport<F>) -> Value {
    json!({
        "controllable": r.controllable,
        "span": span_to_json(&r.span),
        "controllable_part": corelation_to_json(&r.controllable_part),
        "obstruction": matrix_to_json(&r.obstruction),
    })
}
