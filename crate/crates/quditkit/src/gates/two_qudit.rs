//! Two-site entangling gates: controlled shifts, controlled phases, and the
//! SWAP constructions assembled from them.
//!
//! All actions are written control-first, with arithmetic mod `d`:
//!
//! ```text
//! cx_d        |x,y> -> |x, x+y>        (the qudit CNOT / SUM gate)
//! cx_d_dagger |x,y> -> |x, y-x>
//! gxor        |x,y> -> |x, x-y>        (Hermitian variant)
//! ctilde_x    |x,y> -> |x, -x-y>       (self-inverse variant)
//! cz_d        |x,y> -> e^{2 pi i xy/d} |x,y>
//! k_d         |x>   -> |-x>            (single-site complement)
//! ```
//!
//! [`swap`] and [`swap_gxor`] return three-or-five step [`Circuit`]s rather
//! than dense matrices, since their point is the gate sequence; use
//! [`partial_swap`] for the dense hybrid-dimension exchange.

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{Gate, GateSpec};
use crate::gates::hadamard;
use crate::math::{omega_pow, umod, ONE};
use crate::matrix::CMat;
use crate::register::Register;
use serde_json::json;

fn two_site_permutation(d: usize, map: impl Fn(usize, usize) -> (usize, usize)) -> CMat {
    let mut m = CMat::zeros(d * d, d * d);
    for x in 0..d {
        for y in 0..d {
            let (xp, yp) = map(x, y);
            m[(xp * d + yp, x * d + y)] = ONE;
        }
    }
    m
}

fn perm_gate(name: &str, d: usize, map: impl Fn(usize, usize) -> (usize, usize)) -> Gate {
    assert!(d >= 2, "site dimension must be at least 2");
    Gate::new(vec![d, d], two_site_permutation(d, map))
        .expect("basis permutations are unitary")
        .with_spec(GateSpec::new(name, json!({ "d": d })))
}

/// Additive controlled shift `|x,y> -> |x, x+y>`, the qudit CNOT.
pub fn cx_d(d: usize) -> Gate {
    perm_gate("cx_d", d, |x, y| (x, (x + y) % d))
}

/// The SUM gate. Identical action to [`cx_d`]; both names stay addressable
/// because circuit files in the wild use either.
pub fn sum_gate(d: usize) -> Gate {
    let g = cx_d(d);
    let spec = GateSpec::new("sum_gate", json!({ "d": d }));
    g.with_spec(spec)
}

/// Inverse controlled shift `|x,y> -> |x, y-x>`.
pub fn cx_d_dagger(d: usize) -> Gate {
    perm_gate("cx_d_dagger", d, |x, y| (x, umod(y as i64 - x as i64, d)))
}

/// Hermitian controlled difference `|x,y> -> |x, x-y>`.
pub fn gxor(d: usize) -> Gate {
    perm_gate("gxor", d, |x, y| (x, umod(x as i64 - y as i64, d)))
}

/// Self-inverse controlled shift `|x,y> -> |x, -x-y>`. Coincides with CNOT
/// at `d = 2`.
pub fn ctilde_x(d: usize) -> Gate {
    perm_gate("ctilde_x", d, |x, y| (x, umod(-((x + y) as i64), d)))
}

/// Single-site complement `|x> -> |d-x>` (so `|0>` is fixed).
pub fn k_d(d: usize) -> Gate {
    assert!(d >= 2, "site dimension must be at least 2");
    let mut m = CMat::zeros(d, d);
    for x in 0..d {
        m[(umod(-(x as i64), d), x)] = ONE;
    }
    Gate::new(vec![d], m)
        .expect("basis permutations are unitary")
        .with_spec(GateSpec::new("k_d", json!({ "d": d })))
}

/// Controlled phase `|x,y> -> e^{2 pi i xy/d} |x,y>`. Symmetric in its two
/// sites, unlike the shift gates.
pub fn cz_d(d: usize) -> Gate {
    assert!(d >= 2, "site dimension must be at least 2");
    let mut m = CMat::zeros(d * d, d * d);
    for x in 0..d {
        for y in 0..d {
            m[(x * d + y, x * d + y)] = omega_pow(d, (x * y) as i64);
        }
    }
    Gate::new(vec![d, d], m)
        .expect("diagonal phase matrix is unitary")
        .with_spec(GateSpec::new("cz_d", json!({ "d": d })))
}

/// [`ctilde_x`] built the long way: the controlled phase [`cz_d`] sandwiched
/// between Fourier transforms on the target slot. Matches `ctilde_x(d)`
/// entrywise, which pins down both the sandwich order and the sign
/// conventions of the two constructions against each other.
pub fn ctilde_from_fourier(d: usize) -> Gate {
    let h = hadamard(d);
    let sandwich = CMat::identity(d).kron(h.matrix());
    let m = &(&sandwich * cz_d(d).matrix()) * &sandwich;
    Gate::new(vec![d, d], m)
        .expect("product of unitaries is unitary")
        .with_spec(GateSpec::new("ctilde_from_fourier", json!({ "d": d })))
}

/// SWAP on two `d`-level sites as three [`ctilde_x`] gates with alternating
/// control slots. No corrective complement is needed because `ctilde_x` is
/// self-inverse.
pub fn swap(d: usize) -> Circuit {
    let reg = Register::uniform(d, 2).expect("two-site register is valid");
    let mut c = Circuit::new(reg);
    let g = ctilde_x(d);
    c.push(g.clone(), vec![0, 1]).expect("sites in range");
    c.push(g.clone(), vec![1, 0]).expect("sites in range");
    c.push(g, vec![0, 1]).expect("sites in range");
    c
}

/// SWAP on two `d`-level sites from three [`gxor`] gates. The difference
/// gates leave `|-y, -x>` behind, so a complement [`k_d`] on each site
/// finishes the exchange. (At `d = 2` the complements are identities and the
/// circuit collapses to the familiar three-CNOT form.)
pub fn swap_gxor(d: usize) -> Circuit {
    let reg = Register::uniform(d, 2).expect("two-site register is valid");
    let mut c = Circuit::new(reg);
    let g = gxor(d);
    let k = k_d(d);
    c.push(g.clone(), vec![0, 1]).expect("sites in range");
    c.push(g.clone(), vec![1, 0]).expect("sites in range");
    c.push(g, vec![0, 1]).expect("sites in range");
    c.push(k.clone(), vec![0]).expect("sites in range");
    c.push(k, vec![1]).expect("sites in range");
    c
}

/// Partial SWAP on a hybrid pair: exchanges `|i,j> -> |j,i>` whenever both
/// digits lie below `dp`, and fixes every other basis state. `dp` may not
/// exceed either site dimension, which keeps the exchanged digits valid on
/// both sides.
pub fn partial_swap(dc: usize, dt: usize, dp: usize) -> Result<Gate> {
    if dc < 2 || dt < 2 {
        return Err(Error::dimension("partial_swap needs site dimensions >= 2"));
    }
    if dp > dc.min(dt) {
        return Err(Error::dimension(format!(
            "swap window {dp} exceeds min({dc}, {dt})"
        )));
    }
    let mut m = CMat::zeros(dc * dt, dc * dt);
    for i in 0..dc {
        for j in 0..dt {
            if i < dp && j < dp {
                m[(j * dt + i, i * dt + j)] = ONE;
            } else {
                m[(i * dt + j, i * dt + j)] = ONE;
            }
        }
    }
    Ok(Gate::new(vec![dc, dt], m)
        .expect("basis permutations are unitary")
        .with_spec(GateSpec::new(
            "partial_swap",
            json!({ "dc": dc, "dt": dt, "dp": dp }),
        )))
}
