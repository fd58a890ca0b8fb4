//! Qubit Toffoli built with a single qutrit target, plus the gate-count
//! formulas for the general n-control comparison.
//!
//! The trick: give the target a third level and park intermediate
//! information there. Two controlled two-site gates plus one controlled
//! phase then suffice, versus six CNOTs for the all-qubit circuit. The
//! interleaved `|0> <-> |1|` swaps route the qubit content past the spare
//! level so the final Hadamard pair closes the interference loop.

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gates::{embedded_hadamard, identity, mvcg, phase_zd, x_m};
use crate::register::Register;

/// Toffoli on register `[2, 2, 3]`: controls on the two qubit sites, target
/// on the qutrit. The restriction to the 8-dimensional qubit subspace is the
/// exact Toffoli (global phase 1), and no amplitude ever leaks into `|2>` at
/// the end. Exactly three steps touch two sites.
pub fn toffoli_qutrit() -> Circuit {
    let reg = Register::new(vec![2, 2, 3]).expect("fixed register is valid");
    let mut c = Circuit::new(reg);

    let h = embedded_hadamard(3);
    let x01 = x_m(3, 1).expect("1 < 3");
    let xa = x_m(3, 2).expect("2 < 3");
    let cxa = mvcg(&[identity(3), xa]).expect("blocks share size 3");
    let cz = mvcg(&[identity(3), phase_zd(3, std::f64::consts::FRAC_PI_2)])
        .expect("blocks share size 3");

    c.push(h.clone(), vec![2]).expect("sites in range");
    c.push(x01.clone(), vec![2]).expect("sites in range");
    c.push(cxa.clone(), vec![1, 2]).expect("sites in range");
    c.push(x01.clone(), vec![2]).expect("sites in range");
    c.push(cz, vec![0, 2]).expect("sites in range");
    c.push(x01.clone(), vec![2]).expect("sites in range");
    c.push(cxa, vec![1, 2]).expect("sites in range");
    c.push(x01, vec![2]).expect("sites in range");
    c.push(h, vec![2]).expect("sites in range");
    c
}

/// Two-site gate counts for an n-control Toffoli under three strategies:
/// qudit-target construction (`2n - 1`), the tree layout of qudit controlled
/// phases (`2n - 3`), and the best known all-qubit circuit (`12n - 11`).
pub fn toffoli_gate_counts(n: u64) -> Result<(u64, u64, u64)> {
    if n < 2 {
        return Err(Error::dimension("gate counts need at least two controls"));
    }
    Ok((2 * n - 1, 2 * n - 3, 12 * n - 11))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::ONE;
    use crate::matrix::CMat;
    use crate::state::State;

    fn qubit_indices() -> Vec<usize> {
        // Joint indices of |a,b,c> with c < 2 in the [2,2,3] register.
        let mut v = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    v.push(a * 6 + b * 3 + c);
                }
            }
        }
        v
    }

    #[test]
    fn restriction_is_the_exact_toffoli() {
        let u = toffoli_qutrit().unitary().unwrap();
        let qs = qubit_indices();
        let mut toffoli = CMat::identity(8);
        toffoli[(6, 6)] = crate::math::ZERO;
        toffoli[(7, 7)] = crate::math::ZERO;
        toffoli[(6, 7)] = ONE;
        toffoli[(7, 6)] = ONE;
        for (r, &row) in qs.iter().enumerate() {
            for (c, &col) in qs.iter().enumerate() {
                assert!(
                    (u[(row, col)] - toffoli[(r, c)]).norm() < 1e-12,
                    "mismatch at qubit entry ({r},{c})"
                );
            }
        }
        // Qubit inputs never end with support on |2> of the target.
        for &col in &qs {
            for row in 0..12 {
                if !qs.contains(&row) {
                    assert!(u[(row, col)].norm() < 1e-12, "leakage at ({row},{col})");
                }
            }
        }
    }

    #[test]
    fn flips_target_only_for_both_controls() {
        let circ = toffoli_qutrit();
        let reg = circ.register().clone();
        let mut psi = State::basis_state(&reg, &[1, 1, 0]).unwrap();
        circ.apply_to(&mut psi).unwrap();
        let hit = reg.index_of(&[1, 1, 1]).unwrap();
        assert!((psi.amplitudes()[hit] - ONE).norm() < 1e-10);

        let mut psi = State::basis_state(&reg, &[0, 1, 1]).unwrap();
        circ.apply_to(&mut psi).unwrap();
        let stay = reg.index_of(&[0, 1, 1]).unwrap();
        assert!((psi.amplitudes()[stay] - ONE).norm() < 1e-10);
    }

    #[test]
    fn exactly_three_entangling_steps() {
        let circ = toffoli_qutrit();
        let two_site = circ.steps().iter().filter(|s| s.sites.len() == 2).count();
        assert_eq!(two_site, 3);
        assert_eq!(circ.len(), 9);
    }

    #[test]
    fn count_formulas() {
        assert_eq!(toffoli_gate_counts(2).unwrap(), (3, 1, 13));
        assert_eq!(toffoli_gate_counts(3).unwrap(), (5, 3, 25));
        assert_eq!(toffoli_gate_counts(10).unwrap(), (19, 17, 109));
        assert!(toffoli_gate_counts(1).is_err());
    }
}
