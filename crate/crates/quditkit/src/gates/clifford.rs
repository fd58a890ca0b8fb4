//! Clifford-hierarchy membership test for diagonal gates.
//!
//! A diagonal gate sits in the third hierarchy level exactly when conjugating
//! each Pauli generator yields a Clifford operator. For diagonal `U` the
//! interesting generator is the shift `X = D_{(1|0)}`; conjugating the phase
//! generator `Z = D_{(0|1)}` is a no-op since diagonals commute. Both are
//! checked anyway so the test never relies on that shortcut.

use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::gates::weyl::{displacement, DisplacementIndex};
use crate::math::{phase, tau_pow};
use crate::matrix::CMat;

const ENTRY_TOL: f64 = 1e-9;

/// True when `u` (diagonal, size `d`) conjugates both Weyl generators into
/// Clifford operators, i.e. when `u` lies in the third level of the
/// hierarchy. Every candidate Clifford of the diagonal-times-displacement
/// form `e^{i phi} D_{(x|z)} diag(tau^{g k^2})` is tried exhaustively, so a
/// `false` here is a proof that no such form matches, not a search failure.
pub fn clifford_hierarchy_check(u: &Gate, d: usize) -> Result<bool> {
    if u.arity() != 1 || u.size() != d {
        return Err(Error::dimension(format!(
            "expected a single-site gate of size {d}, found signature {:?}",
            u.signature()
        )));
    }
    for i in 0..d {
        for j in 0..d {
            if i != j && u.matrix()[(i, j)].norm() > 1e-12 {
                return Err(Error::dimension(
                    "clifford_hierarchy_check requires a diagonal gate",
                ));
            }
        }
    }

    let udag = u.dagger();
    for (x, z) in [(1usize, 0usize), (0usize, 1usize)] {
        let generator = displacement(DisplacementIndex::new(d, x, z)?);
        let conj = &(u.matrix() * generator.matrix()) * udag.matrix();
        if !matches_some_clifford(&conj, d) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scan all `(x, z, g)` and test whether `c` equals
/// `e^{i phi} D_{(x|z)} diag(tau^{g k^2})` for some phase. The quadratic
/// exponent wraps with period `d` for odd `d` but `2d` for even `d`, where
/// `tau^d = -1` is not a global phase.
fn matches_some_clifford(c: &CMat, d: usize) -> bool {
    let g_range = if d % 2 == 1 { d } else { 2 * d };
    for x in 0..d {
        for z in 0..d {
            let disp = displacement(DisplacementIndex::new(d, x, z).expect("in range"));
            for g in 0..g_range {
                let mut candidate = disp.matrix().clone();
                for col in 0..d {
                    let q = tau_pow(d, (g * col * col) as i64);
                    for row in 0..d {
                        candidate[(row, col)] *= q;
                    }
                }
                if matches_up_to_phase(c, &candidate) {
                    return true;
                }
            }
        }
    }
    false
}

fn matches_up_to_phase(c: &CMat, candidate: &CMat) -> bool {
    // Any nonzero candidate entry has unit modulus, so it fixes the phase.
    let mut fixed_phase = None;
    let d = candidate.rows();
    for row in 0..d {
        for col in 0..d {
            let m = candidate[(row, col)];
            if m.norm() > 0.5 {
                let e = c[(row, col)];
                if e.norm() < 0.5 {
                    return false;
                }
                fixed_phase = Some(e / m);
                break;
            }
        }
        if fixed_phase.is_some() {
            break;
        }
    }
    let ph = match fixed_phase {
        Some(p) => phase(p.arg()),
        None => return false,
    };
    for row in 0..d {
        for col in 0..d {
            if (c[(row, col)] - ph * candidate[(row, col)]).norm() > ENTRY_TOL {
                return false;
            }
        }
    }
    true
}
