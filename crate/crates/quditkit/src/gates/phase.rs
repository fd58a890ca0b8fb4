//! Diagonal gates: last-level phase, single-level clock kicks, and the qudit
//! pi/8 gate.
//!
//! The pi/8 construction follows the closed-form exponent family that makes
//! the gate sit in the third level of the Clifford hierarchy: a diagonal
//! `U = diag(omega^{v_0}, ..., omega^{v_{d-1}})` whose exponent differences
//! `v_{k+1} - v_k` are quadratic in `k`. For odd prime `d > 3` the exponents
//! live mod `d` and involve the modular inverse of 12; `d = 3` is special
//! (12 is not invertible mod 3) and uses ninth roots of unity with exponents
//! mod 9.

use crate::error::{Error, Result};
use crate::gate::{Gate, GateSpec};
use crate::math::{mod_inverse, phase, C64, ONE};
use crate::matrix::CMat;
use serde_json::json;

/// `diag(1, ..., 1, e^{2 i theta})`: phases the top level `|d-1>`, fixes the
/// rest. Note the factor of two in the exponent.
pub fn phase_zd(d: usize, theta: f64) -> Gate {
    assert!(d >= 2, "site dimension must be at least 2");
    let mut entries = vec![ONE; d];
    entries[d - 1] = phase(2.0 * theta);
    Gate::new(vec![d], CMat::diag(&entries))
        .expect("diagonal of unit phases")
        .with_spec(GateSpec::new("phase_zd", json!({ "d": d, "theta": theta })))
}

/// `Q[i]: |j> -> omega^{delta_ij} |j>`, a clock kick on one level.
pub fn q_gate(d: usize, i: usize) -> Result<Gate> {
    assert!(d >= 2, "site dimension must be at least 2");
    if i >= d {
        return Err(Error::dimension(format!(
            "level {i} out of range for d = {d}"
        )));
    }
    let mut entries = vec![ONE; d];
    entries[i] = crate::math::omega(d);
    Ok(Gate::new(vec![d], CMat::diag(&entries))
        .expect("diagonal of unit phases")
        .with_spec(GateSpec::new("q_gate", json!({ "d": d, "i": i }))))
}

/// `P[i]: |j> -> (-omega^2)^{delta_ij} |j>`.
///
/// For odd prime `d` the phase `-omega^2` generates the same cyclic group as
/// `omega`, so `Q[i]` is always some power of `P[i]` (see the power-search
/// test below).
pub fn p_gate(d: usize, i: usize) -> Result<Gate> {
    assert!(d >= 2, "site dimension must be at least 2");
    if i >= d {
        return Err(Error::dimension(format!(
            "level {i} out of range for d = {d}"
        )));
    }
    let mut entries = vec![ONE; d];
    let w = crate::math::omega(d);
    entries[i] = -(w * w);
    Ok(Gate::new(vec![d], CMat::diag(&entries))
        .expect("diagonal of unit phases")
        .with_spec(GateSpec::new("p_gate", json!({ "d": d, "i": i }))))
}

/// Parameters of the qudit pi/8 gate: an odd prime dimension and the three
/// free integers that select the member of the family. The integers are
/// stored reduced mod `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pi8Params {
    d: usize,
    zp: i64,
    gammap: i64,
    epsp: i64,
}

fn is_odd_prime(d: usize) -> bool {
    if d < 3 || d % 2 == 0 {
        return false;
    }
    let mut f = 3;
    while f * f <= d {
        if d % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

impl Pi8Params {
    /// Validated parameter set; `d` must be an odd prime.
    pub fn new(d: usize, zp: i64, gammap: i64, epsp: i64) -> Result<Self> {
        if !is_odd_prime(d) {
            return Err(Error::dimension(format!(
                "pi/8 family is defined for odd prime dimensions, got d = {d}"
            )));
        }
        let m = d as i64;
        Ok(Pi8Params {
            d,
            zp: zp.rem_euclid(m),
            gammap: gammap.rem_euclid(m),
            epsp: epsp.rem_euclid(m),
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn zp(&self) -> i64 {
        self.zp
    }

    pub fn gammap(&self) -> i64 {
        self.gammap
    }

    pub fn epsp(&self) -> i64 {
        self.epsp
    }
}

/// Diagonal exponents `v_k` of the pi/8 gate.
///
/// For `d > 3` these index powers of `omega = e^{2 pi i / d}` and are reduced
/// mod `d`; for `d = 3` they index powers of `e^{2 pi i / 9}` and are reduced
/// mod 9. In both cases `v_0 = 0`.
pub fn pi8_exponents(params: Pi8Params) -> Vec<i64> {
    let Pi8Params {
        d,
        zp,
        gammap,
        epsp,
    } = params;
    if d == 3 {
        // 12 has no inverse mod 3; the closed form moves to ninth roots of
        // unity where the quadratic structure survives.
        let v1 = (6 * zp + 2 * gammap + 3 * epsp).rem_euclid(9);
        let v2 = (6 * zp + gammap + 6 * epsp).rem_euclid(9);
        return vec![0, v1, v2];
    }
    let m = d as i64;
    let inv12 = mod_inverse(12, m).expect("gcd(12, d) = 1 for odd prime d > 3");
    (0..m)
        .map(|k| {
            let inner = gammap + k * (6 * zp + (2 * k - 3) * gammap);
            (inv12 * k * inner + k * epsp).rem_euclid(m)
        })
        .collect()
}

/// The qudit pi/8 gate `U = sum_k omega^{v_k} |k><k|`.
///
/// A non-Clifford diagonal gate in the third level of the Clifford
/// hierarchy; for `d > 3` its determinant is exactly 1.
pub fn pi8_gate(params: Pi8Params) -> Gate {
    let d = params.d;
    let exps = pi8_exponents(params);
    let root = if d == 3 { 9 } else { d };
    let entries: Vec<C64> = exps
        .iter()
        .map(|&v| phase(2.0 * std::f64::consts::PI * v as f64 / root as f64))
        .collect();
    Gate::new(vec![d], CMat::diag(&entries))
        .expect("diagonal of unit phases")
        .with_spec(GateSpec::new(
            "pi8_gate",
            json!({ "d": d, "zp": params.zp, "gammap": params.gammap, "epsp": params.epsp }),
        ))
}
