//! JSON encodings shared by every file format and report.
//!
//! Complex matrices are row-major nested arrays of `[re, im]` pairs. Exact
//! integers are decimal strings so that no precision is lost in transit;
//! plain JSON integers are accepted on input.

use num_bigint::BigInt;
use serde_json::{json, Value};
use z2cross::ktheory::{FgAbelianGroup, IntMatrix};
use z2cross::{CMatrix, C64};

use crate::error::CliError;

pub fn matrix_to_json(m: &CMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| json!([m[(i, j)].re, m[(i, j)].im]))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// Decodes a square `d x d` matrix; `what` names it in error messages.
pub fn matrix_from_json(v: &Value, d: usize, what: &str) -> Result<CMatrix, CliError> {
    let rows = v
        .as_array()
        .ok_or_else(|| CliError::input(format!("{what}: expected an array of rows")))?;
    if rows.len() != d {
        return Err(CliError::input(format!(
            "{what}: {} rows, expected {d}",
            rows.len()
        )));
    }
    let mut data = Vec::with_capacity(d * d);
    for (i, row) in rows.iter().enumerate() {
        let cells = row
            .as_array()
            .ok_or_else(|| CliError::input(format!("{what} row {i}: expected an array")))?;
        if cells.len() != d {
            return Err(CliError::input(format!(
                "{what} row {i}: {} entries, expected {d}",
                cells.len()
            )));
        }
        for (j, cell) in cells.iter().enumerate() {
            data.push(entry_from_json(cell).ok_or_else(|| {
                CliError::input(format!(
                    "{what} entry ({i}, {j}): expected a finite [re, im] pair, got {cell}"
                ))
            })?);
        }
    }
    Ok(CMatrix::new(d, d, data)?)
}

fn entry_from_json(v: &Value) -> Option<C64> {
    let pair = v.as_array()?;
    if pair.len() != 2 {
        return None;
    }
    let (re, im) = (pair[0].as_f64()?, pair[1].as_f64()?);
    (re.is_finite() && im.is_finite()).then(|| C64::new(re, im))
}

pub fn bigint_to_json(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn bigint_from_json(v: &Value, what: &str) -> Result<BigInt, CliError> {
    let parsed = match v {
        Value::String(s) => s.trim().parse::<BigInt>().ok(),
        Value::Number(n) => n.as_i64().map(BigInt::from),
        _ => None,
    };
    parsed.ok_or_else(|| CliError::input(format!("{what}: expected an integer, got {v}")))
}

pub fn int_vec_from_json(v: &Value, what: &str) -> Result<Vec<BigInt>, CliError> {
    v.as_array()
        .ok_or_else(|| CliError::input(format!("{what}: expected an array")))?
        .iter()
        .enumerate()
        .map(|(k, x)| bigint_from_json(x, &format!("{what}[{k}]")))
        .collect()
}

/// `{"rows": r, "cols": c, "entries": [row-major]}`.
pub fn int_matrix_to_json(m: &IntMatrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.entries().iter().map(bigint_to_json).collect::<Vec<_>>(),
    })
}

/// Accepts the object form or, for non-empty matrices, nested rows.
pub fn int_matrix_from_json(v: &Value, what: &str) -> Result<IntMatrix, CliError> {
    match v {
        Value::Object(o) => {
            let dim = |key: &str| {
                o.get(key)
                    .and_then(Value::as_u64)
                    .map(|x| x as usize)
                    .ok_or_else(|| CliError::input(format!("{what}: missing or invalid \"{key}\"")))
            };
            let (r, c) = (dim("rows")?, dim("cols")?);
            let entries = int_vec_from_json(
                o.get("entries")
                    .ok_or_else(|| CliError::input(format!("{what}: missing \"entries\"")))?,
                &format!("{what}.entries"),
            )?;
            if entries.len() != r * c {
                return Err(CliError::input(format!(
                    "{what}: {} entries for a {r}x{c} matrix",
                    entries.len()
                )));
            }
            Ok(IntMatrix::new(r, c, entries)?)
        }
        Value::Array(rows) if !rows.is_empty() => {
            let parsed: Vec<Vec<BigInt>> = rows
                .iter()
                .enumerate()
                .map(|(i, row)| int_vec_from_json(row, &format!("{what} row {i}")))
                .collect::<Result<_, _>>()?;
            let c = parsed[0].len();
            if let Some(i) = parsed.iter().position(|row| row.len() != c) {
                return Err(CliError::input(format!(
                    "{what} row {i}: {} entries, expected {c}",
                    parsed[i].len()
                )));
            }
            let r = parsed.len();
            Ok(IntMatrix::new(
                r,
                c,
                parsed.into_iter().flatten().collect(),
            )?)
        }
        _ => Err(CliError::input(format!(
            "{what}: expected {{\"rows\", \"cols\", \"entries\"}} or a non-empty array of rows"
        ))),
    }
}

pub fn group_to_json(g: &FgAbelianGroup) -> Value {
    json!({
        "free_rank": g.free_rank(),
        "invariant_factors": g.invariant_factors().iter().map(bigint_to_json).collect::<Vec<_>>(),
        "display": g.to_string(),
    })
}

pub fn group_from_json(v: &Value, what: &str) -> Result<FgAbelianGroup, CliError> {
    let free_rank = v
        .get("free_rank")
        .and_then(Value::as_u64)
        .ok_or_else(|| CliError::input(format!("{what}: missing or invalid \"free_rank\"")))?;
    let factors = match v.get("invariant_factors") {
        Some(f) => int_vec_from_json(f, &format!("{what}.invariant_factors"))?,
        None => Vec::new(),
    };
    Ok(FgAbelianGroup::new(free_rank as usize, factors)?)
}

pub fn complex_to_json(z: C64) -> Value {
    json!([z.re, z.im])
}
