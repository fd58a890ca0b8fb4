//! Generalized Pauli operators and displacement operators.
//!
//! The shift X and clock Z satisfy `X Z = omega^{-1} Z X` with
//! `omega = e^{2 pi i / d}`, and every product of their powers is captured up
//! to phase by a displacement operator `D_(x|z) = tau^{xz} X^x Z^z`. The
//! phase unit `tau = e^{i pi (d+1)/d}` is a square root of omega chosen so
//! the displacement family behaves uniformly in even and odd `d`.

use crate::error::{Error, Result};
use crate::gate::{Gate, GateSpec};
use crate::math::{omega_pow, tau_pow, ONE, ZERO};
use crate::matrix::CMat;
use serde_json::json;

/// Cyclic shift: `X|j> = |j+1 mod d>`.
pub fn pauli_x(d: usize) -> Gate {
    assert!(d >= 2, "site dimension must be at least 2");
    let m = CMat::from_fn(d, d, |i, j| if i == (j + 1) % d { ONE } else { ZERO });
    Gate::new(vec![d], m)
        .expect("shift matrix is a permutation")
        .with_spec(GateSpec::new("pauli_x", json!({ "d": d })))
}

/// Clock: `Z|j> = omega^j |j>`.
pub fn pauli_z(d: usize) -> Gate {
    assert!(d >= 2, "site dimension must be at least 2");
    let m = CMat::diag(&(0..d).map(|j| omega_pow(d, j as i64)).collect::<Vec<_>>());
    Gate::new(vec![d], m)
        .expect("clock matrix is diagonal unitary")
        .with_spec(GateSpec::new("pauli_z", json!({ "d": d })))
}

/// Index of a displacement operator: the pair of shift/clock powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DisplacementIndex {
    d: usize,
    x: usize,
    z: usize,
}

impl DisplacementIndex {
    /// Validated index with `0 <= x, z < d`.
    pub fn new(d: usize, x: usize, z: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::dimension("displacement needs d >= 2"));
        }
        if x >= d || z >= d {
            return Err(Error::dimension(format!(
                "displacement powers ({x}|{z}) out of range for d = {d}"
            )));
        }
        Ok(DisplacementIndex { d, x, z })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn z(&self) -> usize {
        self.z
    }
}

/// Displacement operator `D_(x|z) = tau^{xz} X^x Z^z`.
///
/// Entry structure: column `j` holds `tau^{xz} omega^{zj}` in row `j+x mod d`.
pub fn displacement(idx: DisplacementIndex) -> Gate {
    let DisplacementIndex { d, x, z } = idx;
    let tau_part = tau_pow(d, (x * z) as i64);
    let m = CMat::from_fn(d, d, |i, j| {
        if i == (j + x) % d {
            tau_part * omega_pow(d, (z * j) as i64)
        } else {
            ZERO
        }
    });
    Gate::new(vec![d], m)
        .expect("displacement is a phased permutation")
        .with_spec(GateSpec::new(
            "displacement",
            json!({ "d": d, "x": x, "z": z }),
        ))
}
