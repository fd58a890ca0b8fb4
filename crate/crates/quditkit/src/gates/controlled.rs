//! Controlled-gate wrappers.
//!
//! Three flavors, kept as distinct constructors because they generalize the
//! qubit controlled gate in different directions:
//!
//! * [`controlled`]: fires only when every control sits in the top level
//!   `|d-1>` (the all-controls-max convention).
//! * [`ms_gate`]: fires on one selectable control value.
//! * [`mvcg`]: applies a different operation for each control value, the
//!   block-diagonal "quantum multiplexer".
//!
//! All three place the control sites before the target in significance
//! order; the serialization format records that convention explicitly.

use crate::error::{Error, Result};
use crate::gate::{Gate, GateSpec};
use crate::matrix::CMat;
use serde_json::json;

fn nested_spec(g: &Gate) -> Option<serde_json::Value> {
    g.spec()
        .map(|s| json!({ "gate": s.name, "params": s.params }))
}

/// `C_m[R]`: identity on the first `d^m - d` basis states, `R` on the last
/// `d`. The gate spans `m` sites of dimension `d` (so `m - 1` controls, all
/// of which must read `|d-1>` for `R` to act on the target).
pub fn controlled(inner: &Gate, m: usize) -> Result<Gate> {
    if inner.arity() != 1 {
        return Err(Error::dimension(
            "controlled wraps a single-site gate; compose multi-site gates via mvcg",
        ));
    }
    if m < 2 {
        return Err(Error::dimension("controlled needs m >= 2 total sites"));
    }
    let d = inner.size();
    let total = d
        .checked_pow(m as u32)
        .ok_or_else(|| Error::dimension("controlled gate size overflows usize"))?;
    let mut mat = CMat::identity(total);
    let base = total - d;
    for i in 0..d {
        for j in 0..d {
            mat[(base + i, base + j)] = inner.matrix()[(i, j)];
        }
    }
    let spec = nested_spec(inner).map(|inner_spec| {
        GateSpec::new("controlled", json!({ "m": m, "inner": inner_spec }))
    });
    let mut g = Gate::new(vec![d; m], mat).expect("block substitution preserves unitarity");
    if let Some(s) = spec {
        g = g.with_spec(s);
    }
    Ok(g)
}

/// Two-site controlled gate firing on one chosen control value: block
/// diagonal with `U` at block `control_value` and identity elsewhere.
/// Control and target share the dimension `d`, which must match `U`.
pub fn ms_gate(d: usize, control_value: usize, inner: &Gate) -> Result<Gate> {
    if inner.arity() != 1 {
        return Err(Error::dimension("ms_gate wraps a single-site gate"));
    }
    if inner.size() != d {
        return Err(Error::dimension(format!(
            "ms_gate dimension {d} does not match its {}-level operation",
            inner.size()
        )));
    }
    if control_value >= d {
        return Err(Error::dimension(format!(
            "control value {control_value} out of range for d = {d}"
        )));
    }
    let mut mat = CMat::identity(d * d);
    let base = control_value * d;
    for i in 0..d {
        for j in 0..d {
            mat[(base + i, base + j)] = inner.matrix()[(i, j)];
        }
    }
    let spec = nested_spec(inner).map(|inner_spec| {
        GateSpec::new(
            "ms_gate",
            json!({ "d": d, "control_value": control_value, "inner": inner_spec }),
        )
    });
    let mut g = Gate::new(vec![d, d], mat).expect("block substitution preserves unitarity");
    if let Some(s) = spec {
        g = g.with_spec(s);
    }
    Ok(g)
}

/// Multi-value-controlled gate `diag(U_0, ..., U_{dc-1})`: the control value
/// selects which operation the target receives. The control dimension is the
/// number of operations and the target dimension is their common size, so
/// hybrid control/target pairs are allowed.
pub fn mvcg(ops: &[Gate]) -> Result<Gate> {
    let dc = ops.len();
    if dc < 2 {
        return Err(Error::dimension("mvcg needs one operation per control value"));
    }
    if let Some(bad) = ops.iter().find(|g| g.arity() != 1) {
        return Err(Error::dimension(format!(
            "mvcg blocks must be single-site gates, found arity {}",
            bad.arity()
        )));
    }
    let t = ops[0].size();
    if let Some(bad) = ops.iter().find(|g| g.size() != t) {
        return Err(Error::dimension(format!(
            "mvcg blocks must share one size, found {} and {t}",
            bad.size()
        )));
    }
    let mut mat = CMat::zeros(dc * t, dc * t);
    for (c, op) in ops.iter().enumerate() {
        for i in 0..t {
            for j in 0..t {
                mat[(c * t + i, c * t + j)] = op.matrix()[(i, j)];
            }
        }
    }
    let nested: Option<Vec<serde_json::Value>> = ops.iter().map(nested_spec).collect();
    let mut g = Gate::new(vec![dc, t], mat).expect("block diagonal of unitaries is unitary");
    if let Some(list) = nested {
        g = g.with_spec(GateSpec::new("mvcg", json!({ "ops": list })));
    }
    Ok(g)
}
