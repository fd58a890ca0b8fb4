//! Gate constructors.
//!
//! Families:
//!
//! * weyl: generalized Pauli shift/clock operators and their phase-matched
//!   products, the displacement operators.
//! * fourier: the d-level Hadamard (single-qudit Fourier transform) and the
//!   root-of-unity phase gates used by the QFT.
//! * phase: diagonal gates, from the simple last-level phase to the qudit
//!   analogue of the qubit pi/8 gate.
//! * rotation: two-level SU(2) rotations embedded in a d-level site, the
//!   workhorse of exact synthesis.
//! * levels: level permutations and level-embedded qubit gates.
//! * controlled: generic controlled and multi-value-controlled wrappers.
//! * two_qudit: SUM/CX variants, controlled-Z, GXOR, and the SWAP
//!   constructions built from them.
//! * clifford: Clifford-hierarchy membership checking for diagonal gates.
//! * toffoli: the qutrit-assisted Toffoli circuit and gate-count comparisons.
//!
//! Constructors whose arguments are dimensions alone return `Gate` and panic
//! on nonsense like `d < 2`; constructors taking level indices or free
//! parameters validate them and return `Result`.

mod clifford;
mod controlled;
mod fourier;
mod levels;
mod phase;
mod rotation;
mod toffoli;
mod two_qudit;
mod weyl;

pub use clifford::clifford_hierarchy_check;
pub use controlled::{controlled, ms_gate, mvcg};
pub use fourier::{controlled_fourier_phase, fourier_phase, hadamard, hadamard_dagger};
pub use levels::{embedded_hadamard, transposition, x_m};
pub use phase::{p_gate, phase_zd, pi8_exponents, pi8_gate, q_gate, Pi8Params};
pub use rotation::rot_x;
pub use toffoli::{toffoli_gate_counts, toffoli_qutrit};
pub use two_qudit::{
    ctilde_from_fourier, ctilde_x, cx_d, cx_d_dagger, cz_d, gxor, k_d, partial_swap, sum_gate,
    swap, swap_gxor,
};
pub use weyl::{displacement, pauli_x, pauli_z, DisplacementIndex};

use crate::gate::{Gate, GateSpec};
use crate::matrix::CMat;

/// The do-nothing gate on a `d`-level site.
pub fn identity(d: usize) -> Gate {
    assert!(d >= 2, "site dimension must be at least 2");
    Gate::new(vec![d], CMat::identity(d))
        .expect("identity is unitary")
        .with_spec(GateSpec::new("identity", serde_json::json!({ "d": d })))
}
