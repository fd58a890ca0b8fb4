//! Circuit files, matrix and amplitude CSV, and the gate name registry.
//!
//! A circuit file is JSON of the form
//! `{ "dims": [3, 3], "steps": [{ "gate": "hadamard", "params": {"d": 3},
//! "sites": [0] }, ...] }` where gate names are the constructor names of the
//! gates module and params mirror the constructor arguments. Gates built
//! from raw matrices round-trip through the `unitary` fallback entry, which
//! stores the signature and the dense matrix.
//!
//! CSV conventions: matrices are `row,col,re,im` with one line per entry;
//! amplitude dumps are `index,digits,re,im` with the mixed-radix digits
//! hyphen-joined; histograms are `index,digits,count`; measurement-count
//! inputs are `n,count` pairs. All floats print in Rust's shortest
//! round-trip form, so re-reading a dump reproduces the value bit for bit.

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::gates;
use crate::geodesic::HamiltonianExpansion;
use crate::math::C64;
use crate::matrix::CMat;
use crate::register::Register;
use crate::state::State;
use serde_json::{json, Value};
use std::collections::BTreeMap;

fn field<'v>(params: &'v Value, name: &str) -> Result<&'v Value> {
    params
        .get(name)
        .ok_or_else(|| Error::parse(format!("missing gate parameter `{name}`")))
}

fn usize_field(params: &Value, name: &str) -> Result<usize> {
    field(params, name)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| Error::parse(format!("gate parameter `{name}` must be a non-negative integer")))
}

fn i64_field(params: &Value, name: &str) -> Result<i64> {
    field(params, name)?
        .as_i64()
        .ok_or_else(|| Error::parse(format!("gate parameter `{name}` must be an integer")))
}

fn f64_field(params: &Value, name: &str) -> Result<f64> {
    field(params, name)?
        .as_f64()
        .ok_or_else(|| Error::parse(format!("gate parameter `{name}` must be a number")))
}

fn complex_field(params: &Value, name: &str) -> Result<C64> {
    let pair = field(params, name)?
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::parse(format!("gate parameter `{name}` must be a [re, im] pair")))?;
    let re = pair[0]
        .as_f64()
        .ok_or_else(|| Error::parse(format!("`{name}` real part must be a number")))?;
    let im = pair[1]
        .as_f64()
        .ok_or_else(|| Error::parse(format!("`{name}` imaginary part must be a number")))?;
    Ok(C64::new(re, im))
}

fn nested_gate(value: &Value) -> Result<Gate> {
    let name = value
        .get("gate")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::parse("nested gate needs a string `gate` field"))?;
    let default = Value::Null;
    let params = value.get("params").unwrap_or(&default);
    build_gate(name, params)
}

/// Dense matrix as nested JSON: one array per row, one `[re, im]` pair per
/// entry.
pub fn matrix_to_value(m: &CMat) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            let row: Vec<Value> = (0..m.cols())
                .map(|j| json!([m[(i, j)].re, m[(i, j)].im]))
                .collect();
            Value::Array(row)
        })
        .collect();
    Value::Array(rows)
}

pub fn matrix_from_value(value: &Value) -> Result<CMat> {
    let rows = value
        .as_array()
        .ok_or_else(|| Error::parse("matrix must be an array of rows"))?;
    if rows.is_empty() {
        return Err(Error::parse("matrix has no rows"));
    }
    let n_cols = rows[0]
        .as_array()
        .ok_or_else(|| Error::parse("matrix rows must be arrays"))?
        .len();
    let mut m = CMat::zeros(rows.len(), n_cols);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|r| r.len() == n_cols)
            .ok_or_else(|| Error::parse(format!("matrix row {i} has the wrong length")))?;
        for (j, entry) in row.iter().enumerate() {
            let pair = entry
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::parse(format!("matrix entry ({i},{j}) must be [re, im]")))?;
            let re = pair[0].as_f64();
            let im = pair[1].as_f64();
            match (re, im) {
                (Some(re), Some(im)) => m[(i, j)] = C64::new(re, im),
                _ => return Err(Error::parse(format!("matrix entry ({i},{j}) is not numeric"))),
            }
        }
    }
    Ok(m)
}

/// Construct a gate from its registry name and parameter object. This is the
/// inverse of the spec each constructor attaches, plus the `unitary`
/// fallback for explicit matrices.
pub fn build_gate(name: &str, params: &Value) -> Result<Gate> {
    match name {
        "pauli_x" => Ok(gates::pauli_x(usize_field(params, "d")?)),
        "pauli_z" => Ok(gates::pauli_z(usize_field(params, "d")?)),
        "identity" => Ok(gates::identity(usize_field(params, "d")?)),
        "displacement" => {
            let idx = gates::DisplacementIndex::new(
                usize_field(params, "d")?,
                usize_field(params, "x")?,
                usize_field(params, "z")?,
            )?;
            Ok(gates::displacement(idx))
        }
        "hadamard" => Ok(gates::hadamard(usize_field(params, "d")?)),
        "hadamard_dagger" => Ok(gates::hadamard_dagger(usize_field(params, "d")?)),
        "fourier_phase" => Ok(gates::fourier_phase(
            usize_field(params, "d")?,
            usize_field(params, "k")? as u32,
        )),
        "controlled_fourier_phase" => Ok(gates::controlled_fourier_phase(
            usize_field(params, "d")?,
            usize_field(params, "k")? as u32,
        )),
        "phase_zd" => Ok(gates::phase_zd(
            usize_field(params, "d")?,
            f64_field(params, "theta")?,
        )),
        "q_gate" => gates::q_gate(usize_field(params, "d")?, usize_field(params, "i")?),
        "p_gate" => gates::p_gate(usize_field(params, "d")?, usize_field(params, "i")?),
        "pi8_gate" => {
            let p = gates::Pi8Params::new(
                usize_field(params, "d")?,
                i64_field(params, "zp")?,
                i64_field(params, "gammap")?,
                i64_field(params, "epsp")?,
            )?;
            Ok(gates::pi8_gate(p))
        }
        "rot_x" => gates::rot_x(
            usize_field(params, "d")?,
            usize_field(params, "l")?,
            complex_field(params, "x")?,
            complex_field(params, "y")?,
        ),
        "transposition" => gates::transposition(
            usize_field(params, "d")?,
            usize_field(params, "p")?,
            usize_field(params, "q")?,
        ),
        "x_m" => gates::x_m(usize_field(params, "d")?, usize_field(params, "m")?),
        "embedded_hadamard" => Ok(gates::embedded_hadamard(usize_field(params, "d")?)),
        "controlled" => {
            let inner = nested_gate(field(params, "inner")?)?;
            gates::controlled(&inner, usize_field(params, "m")?)
        }
        "ms_gate" => {
            let inner = nested_gate(field(params, "inner")?)?;
            gates::ms_gate(
                usize_field(params, "d")?,
                usize_field(params, "control_value")?,
                &inner,
            )
        }
        "mvcg" => {
            let list = field(params, "ops")?
                .as_array()
                .ok_or_else(|| Error::parse("mvcg `ops` must be an array of gates"))?;
            let ops: Result<Vec<Gate>> = list.iter().map(nested_gate).collect();
            gates::mvcg(&ops?)
        }
        "cx_d" => Ok(gates::cx_d(usize_field(params, "d")?)),
        "sum_gate" => Ok(gates::sum_gate(usize_field(params, "d")?)),
        "cx_d_dagger" => Ok(gates::cx_d_dagger(usize_field(params, "d")?)),
        "gxor" => Ok(gates::gxor(usize_field(params, "d")?)),
        "ctilde_x" => Ok(gates::ctilde_x(usize_field(params, "d")?)),
        "k_d" => Ok(gates::k_d(usize_field(params, "d")?)),
        "cz_d" => Ok(gates::cz_d(usize_field(params, "d")?)),
        "ctilde_from_fourier" => Ok(gates::ctilde_from_fourier(usize_field(params, "d")?)),
        "partial_swap" => gates::partial_swap(
            usize_field(params, "dc")?,
            usize_field(params, "dt")?,
            usize_field(params, "dp")?,
        ),
        "unitary" => {
            let dims = field(params, "dims")?
                .as_array()
                .ok_or_else(|| Error::parse("unitary `dims` must be an array"))?
                .iter()
                .map(|v| {
                    v.as_u64()
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::parse("unitary `dims` entries must be integers"))
                })
                .collect::<Result<Vec<usize>>>()?;
            let m = matrix_from_value(field(params, "matrix")?)?;
            Gate::new(dims, m)
        }
        other => Err(Error::parse(format!("unknown gate name `{other}`"))),
    }
}

fn step_to_value(gate: &Gate, sites: &[usize]) -> Value {
    match gate.spec() {
        Some(spec) => json!({
            "gate": spec.name,
            "params": spec.params,
            "sites": sites,
        }),
        None => json!({
            "gate": "unitary",
            "params": {
                "dims": gate.signature(),
                "matrix": matrix_to_value(gate.matrix()),
            },
            "sites": sites,
        }),
    }
}

/// Circuit as a JSON value in the circuit-file layout.
pub fn circuit_to_value(circuit: &Circuit) -> Value {
    let steps: Vec<Value> = circuit
        .steps()
        .iter()
        .map(|s| step_to_value(&s.gate, &s.sites))
        .collect();
    json!({
        "dims": circuit.register().dims(),
        "steps": steps,
    })
}

pub fn circuit_to_json(circuit: &Circuit, pretty: bool) -> String {
    render(&circuit_to_value(circuit), pretty)
}

/// Parse a circuit file, resolving every step through [`build_gate`].
pub fn circuit_from_json(text: &str) -> Result<Circuit> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("circuit JSON: {e}")))?;
    circuit_from_value(&value)
}

pub fn circuit_from_value(value: &Value) -> Result<Circuit> {
    let dims = value
        .get("dims")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("circuit file needs a `dims` array"))?
        .iter()
        .map(|v| {
            v.as_u64()
                .map(|d| d as usize)
                .ok_or_else(|| Error::parse("`dims` entries must be integers"))
        })
        .collect::<Result<Vec<usize>>>()?;
    let register = Register::new(dims)?;
    let mut circuit = Circuit::new(register);
    let steps = value
        .get("steps")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("circuit file needs a `steps` array"))?;
    for (i, step) in steps.iter().enumerate() {
        let gate = nested_gate(step).map_err(|e| Error::parse(format!("step {i}: {e}")))?;
        let sites = step
            .get("sites")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse(format!("step {i} needs a `sites` array")))?
            .iter()
            .map(|v| {
                v.as_u64()
                    .map(|s| s as usize)
                    .ok_or_else(|| Error::parse(format!("step {i}: sites must be integers")))
            })
            .collect::<Result<Vec<usize>>>()?;
        circuit.push(gate, sites)?;
    }
    Ok(circuit)
}

/// Serialize one JSON value, optionally indented. Numbers keep full double
/// precision either way.
pub fn render(value: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    } else {
        serde_json::to_string(value).expect("JSON values serialize")
    }
}

/// Matrix dump: header plus one `row,col,re,im` line per entry in row-major
/// order.
pub fn matrix_to_csv(m: &CMat) -> String {
    let mut out = String::from("row,col,re,im\n");
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let e = m[(i, j)];
            out.push_str(&format!("{i},{j},{},{}\n", e.re, e.im));
        }
    }
    out
}

/// Parse a `row,col,re,im` dump into the dense square matrix it describes.
/// A leading header line is accepted and skipped; every entry of the square
/// must be present exactly once.
pub fn matrix_from_csv(text: &str) -> Result<CMat> {
    let mut entries: Vec<(usize, usize, C64)> = Vec::new();
    let mut max_index = 0usize;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(Error::parse(format!(
                "matrix CSV line {}: expected 4 fields, found {}",
                lineno + 1,
                fields.len()
            )));
        }
        if lineno == 0 && fields[0].parse::<usize>().is_err() {
            continue; // header
        }
        let parse_idx = |s: &str, what: &str| {
            s.parse::<usize>().map_err(|_| {
                Error::parse(format!("matrix CSV line {}: bad {what} `{s}`", lineno + 1))
            })
        };
        let parse_num = |s: &str, what: &str| {
            s.parse::<f64>().map_err(|_| {
                Error::parse(format!("matrix CSV line {}: bad {what} `{s}`", lineno + 1))
            })
        };
        let row = parse_idx(fields[0], "row")?;
        let col = parse_idx(fields[1], "col")?;
        let re = parse_num(fields[2], "real part")?;
        let im = parse_num(fields[3], "imaginary part")?;
        max_index = max_index.max(row).max(col);
        entries.push((row, col, C64::new(re, im)));
    }
    if entries.is_empty() {
        return Err(Error::parse("matrix CSV has no entries"));
    }
    let n = max_index + 1;
    if entries.len() != n * n {
        return Err(Error::parse(format!(
            "matrix CSV describes indices up to {max_index} but has {} entries, expected {}",
            entries.len(),
            n * n
        )));
    }
    let mut m = CMat::zeros(n, n);
    let mut seen = vec![false; n * n];
    for (row, col, v) in entries {
        if seen[row * n + col] {
            return Err(Error::parse(format!(
                "matrix CSV repeats entry ({row},{col})"
            )));
        }
        seen[row * n + col] = true;
        m[(row, col)] = v;
    }
    Ok(m)
}

fn digits_label(register: &Register, index: usize) -> String {
    register
        .digits_of(index)
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join("-")
}

/// Amplitude dump: `index,digits,re,im` with hyphen-joined mixed-radix
/// digits, most significant site first.
pub fn amplitudes_to_csv(state: &State) -> String {
    let mut out = String::from("index,digits,re,im\n");
    for (index, amp) in state.amplitudes().iter().enumerate() {
        out.push_str(&format!(
            "{index},{},{},{}\n",
            digits_label(state.register(), index),
            amp.re,
            amp.im
        ));
    }
    out
}

/// Measurement histogram: `index,digits,count`, indices ascending, zero
/// counts skipped.
pub fn histogram_to_csv(register: &Register, counts: &BTreeMap<usize, u64>) -> String {
    let mut out = String::from("index,digits,count\n");
    for (&index, &count) in counts {
        out.push_str(&format!(
            "{index},{},{count}\n",
            digits_label(register, index)
        ));
    }
    out
}

/// Parse a complex vector from `index,re,im` rows (header optional).
/// Indices must cover `0..len` exactly once.
pub fn vector_from_csv(text: &str) -> Result<Vec<C64>> {
    let mut entries: Vec<(usize, C64)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(Error::parse(format!(
                "vector CSV line {}: expected `index,re,im`, found {} fields",
                lineno + 1,
                fields.len()
            )));
        }
        if lineno == 0 && fields[0].parse::<usize>().is_err() {
            continue; // header
        }
        let idx = fields[0].parse::<usize>().map_err(|_| {
            Error::parse(format!(
                "vector CSV line {}: bad index `{}`",
                lineno + 1,
                fields[0]
            ))
        })?;
        let re = fields[1].parse::<f64>().map_err(|_| {
            Error::parse(format!(
                "vector CSV line {}: bad real part `{}`",
                lineno + 1,
                fields[1]
            ))
        })?;
        let im = fields[2].parse::<f64>().map_err(|_| {
            Error::parse(format!(
                "vector CSV line {}: bad imaginary part `{}`",
                lineno + 1,
                fields[2]
            ))
        })?;
        entries.push((idx, C64::new(re, im)));
    }
    if entries.is_empty() {
        return Err(Error::parse("vector CSV has no rows"));
    }
    let len = entries.len();
    let mut out = vec![None; len];
    for (idx, v) in entries {
        if idx >= len || out[idx].is_some() {
            return Err(Error::parse(format!(
                "vector CSV indices must cover 0..{len} exactly once (index {idx})"
            )));
        }
        out[idx] = Some(v);
    }
    Ok(out.into_iter().map(Option::unwrap).collect())
}

/// Parse `n,count` measurement rows (header optional). Returns the pairs in
/// file order; counts may be fractional.
pub fn counts_from_csv(text: &str) -> Result<Vec<(usize, f64)>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(Error::parse(format!(
                "counts CSV line {}: expected `n,count`, found {} fields",
                lineno + 1,
                fields.len()
            )));
        }
        if lineno == 0 && fields[0].parse::<usize>().is_err() {
            continue; // header
        }
        let n = fields[0].parse::<usize>().map_err(|_| {
            Error::parse(format!(
                "counts CSV line {}: bad outcome `{}`",
                lineno + 1,
                fields[0]
            ))
        })?;
        let count = fields[1].parse::<f64>().map_err(|_| {
            Error::parse(format!(
                "counts CSV line {}: bad count `{}`",
                lineno + 1,
                fields[1]
            ))
        })?;
        out.push((n, count));
    }
    if out.is_empty() {
        return Err(Error::parse("counts CSV has no rows"));
    }
    Ok(out)
}

/// Expansion as JSON: dimension, site count, the trace part, and one term
/// per nonzero coefficient with its per-site label.
pub fn expansion_to_value(e: &HamiltonianExpansion) -> Value {
    let terms: Vec<Value> = e
        .coeffs()
        .iter()
        .filter(|(_, &h)| h != 0.0)
        .map(|(label, &h)| {
            json!({
                "label": label,
                "body": HamiltonianExpansion::body_count(label),
                "coeff": h,
            })
        })
        .collect();
    json!({
        "d": e.d(),
        "n": e.num_sites(),
        "identity": e.identity_coeff(),
        "terms": terms,
    })
}

pub fn expansion_from_value(value: &Value) -> Result<HamiltonianExpansion> {
    let d = value
        .get("d")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::parse("expansion needs integer `d`"))? as usize;
    let n = value
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::parse("expansion needs integer `n`"))? as usize;
    let identity = value
        .get("identity")
        .and_then(Value::as_f64)
        .unwrap_or(0.0);
    let mut coeffs = BTreeMap::new();
    let terms = value
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("expansion needs a `terms` array"))?;
    for (i, term) in terms.iter().enumerate() {
        let label = term
            .get("label")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse(format!("expansion term {i} needs a `label` array")))?
            .iter()
            .map(|v| {
                v.as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| Error::parse(format!("expansion term {i}: bad label entry")))
            })
            .collect::<Result<Vec<usize>>>()?;
        let coeff = term
            .get("coeff")
            .and_then(Value::as_f64)
            .ok_or_else(|| Error::parse(format!("expansion term {i} needs numeric `coeff`")))?;
        coeffs.insert(label, coeff);
    }
    HamiltonianExpansion::from_parts(d, n, identity, coeffs)
}

pub fn expansion_from_json(text: &str) -> Result<HamiltonianExpansion> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("expansion JSON: {e}")))?;
    expansion_from_value(&value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesic;
    use crate::math::{ONE, ZERO};

    #[test]
    fn circuit_json_round_trip() {
        let reg = Register::uniform(3, 2).unwrap();
        let mut c = Circuit::new(reg);
        c.push(gates::hadamard(3), vec![0]).unwrap();
        c.push(gates::cx_d(3), vec![0, 1]).unwrap();
        c.push(gates::controlled_fourier_phase(3, 2), vec![1, 0])
            .unwrap();
        let text = circuit_to_json(&c, false);
        let back = circuit_from_json(&text).unwrap();
        assert_eq!(back.len(), 3);
        assert!(back
            .unitary()
            .unwrap()
            .max_abs_diff(&c.unitary().unwrap())
            .lt(&1e-12));
        // Determinism of the byte output.
        assert_eq!(text, circuit_to_json(&circuit_from_json(&text).unwrap(), false));
    }

    #[test]
    fn nested_controlled_gates_round_trip() {
        let reg = Register::uniform(3, 3).unwrap();
        let mut c = Circuit::new(reg);
        let inner = gates::rot_x(3, 2, ONE, crate::math::I).unwrap();
        c.push(gates::controlled(&inner, 2).unwrap(), vec![0, 2])
            .unwrap();
        c.push(
            gates::mvcg(&[gates::identity(3), gates::pauli_x(3), gates::pauli_z(3)]).unwrap(),
            vec![1, 2],
        )
        .unwrap();
        c.push(
            gates::ms_gate(3, 1, &gates::embedded_hadamard(3)).unwrap(),
            vec![2, 0],
        )
        .unwrap();
        let text = circuit_to_json(&c, true);
        let back = circuit_from_json(&text).unwrap();
        assert!(back
            .unitary()
            .unwrap()
            .max_abs_diff(&c.unitary().unwrap())
            .lt(&1e-12));
    }

    #[test]
    fn unnamed_gate_uses_matrix_fallback() {
        let reg = Register::uniform(2, 1).unwrap();
        let mut c = Circuit::new(reg);
        // dagger drops the spec, forcing the fallback path
        c.push(gates::embedded_hadamard(2).dagger(), vec![0]).unwrap();
        let text = circuit_to_json(&c, false);
        assert!(text.contains("\"unitary\""));
        let back = circuit_from_json(&text).unwrap();
        assert!(back
            .unitary()
            .unwrap()
            .max_abs_diff(&c.unitary().unwrap())
            .lt(&1e-12));
    }

    #[test]
    fn matrix_csv_round_trip() {
        let m = gates::hadamard(3).matrix().clone();
        let text = matrix_to_csv(&m);
        let back = matrix_from_csv(&text).unwrap();
        assert!(back.max_abs_diff(&m) < 1e-15);
    }

    #[test]
    fn matrix_csv_rejects_malformed() {
        assert!(matrix_from_csv("").is_err());
        assert!(matrix_from_csv("row,col,re\n0,0,1\n").is_err());
        assert!(matrix_from_csv("0,0,1,0\n0,0,1,0\n").is_err());
        // hole: a 2x2 needs four entries
        assert!(matrix_from_csv("0,0,1,0\n1,1,1,0\n").is_err());
        assert!(matrix_from_csv("0,0,x,0\n").is_err());
    }

    #[test]
    fn amplitude_dump_layout() {
        let reg = Register::new(vec![2, 3]).unwrap();
        let state = State::basis_state(&reg, &[1, 2]).unwrap();
        let text = amplitudes_to_csv(&state);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "index,digits,re,im");
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[6], "5,1-2,1,0");
    }

    #[test]
    fn counts_csv_parses_with_and_without_header() {
        let rows = counts_from_csv("n,count\n0,10\n1,20\n2,5\n").unwrap();
        assert_eq!(rows, vec![(0, 10.0), (1, 20.0), (2, 5.0)]);
        let rows = counts_from_csv("0,0.5\n2,0.25\n").unwrap();
        assert_eq!(rows, vec![(0, 0.5), (2, 0.25)]);
        assert!(counts_from_csv("a,b,c\n").is_err());
    }

    #[test]
    fn expansion_json_round_trip() {
        let basis = geodesic::gell_mann_basis(2);
        let x = basis[0].matrix();
        let h = &x.kron(&CMat::identity(2)) + &CMat::identity(4).scale(C64::new(0.5, 0.0));
        let e = geodesic::expand(&h, 2).unwrap();
        let text = render(&expansion_to_value(&e), false);
        let back = expansion_from_json(&text).unwrap();
        assert_eq!(back.d(), 2);
        assert_eq!(back.num_sites(), 2);
        assert!((back.identity_coeff() - 0.5).abs() < 1e-12);
        assert!(
            (geodesic::cost(&back, 3.0).unwrap() - geodesic::cost(&e, 3.0).unwrap()).abs() < 1e-12
        );
        assert!(back.reconstruct().max_abs_diff(&h) < 1e-9);
    }

    #[test]
    fn build_gate_rejects_unknown_and_bad_params() {
        assert!(build_gate("no_such_gate", &json!({})).is_err());
        assert!(build_gate("hadamard", &json!({})).is_err());
        assert!(build_gate("rot_x", &json!({"d": 3, "l": 1, "x": [1.0], "y": [0.0, 0.0]})).is_err());
        let err = build_gate("hadamard", &json!({})).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn unitary_fallback_validates() {
        let bad = json!({
            "dims": [2],
            "matrix": [[[1.0, 0.0], [1.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
        });
        assert!(build_gate("unitary", &bad).is_err());
        let good = json!({
            "dims": [2],
            "matrix": [[[0.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]],
        });
        let g = build_gate("unitary", &good).unwrap();
        assert_eq!(g.signature(), &[2]);
        assert_eq!(g.matrix()[(0, 1)], ONE);
        assert_eq!(g.matrix()[(0, 0)], ZERO);
    }
}
