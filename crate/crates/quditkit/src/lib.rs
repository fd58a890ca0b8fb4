//! State-vector simulation and gate synthesis for mixed-dimension qudit registers.
//!
//! Most quantum-computing toolkits hardcode two-level carriers. This crate keeps
//! the local dimension `d` a runtime parameter, and lets it vary per site, so a
//! register like `[2, 2, 3]` (two qubits plus one qutrit) is as natural as an
//! all-qutrit one. On top of the simulator sit four layers:
//!
//! * [`gates`]: a library of standard single- and two-qudit unitaries
//!   (generalized Paulis, the d-level Fourier/Hadamard gate, SUM/CX variants,
//!   multi-value-controlled gates, a qutrit-assisted Toffoli, ...), each built
//!   as an explicit matrix and checked for unitarity at construction.
//! * [`decompose`]: exact synthesis of arbitrary unitaries into single-qudit
//!   rotations and controlled phases, via eigendecomposition and two-level
//!   reduction, plus ancilla-assisted expansion of many-control gates.
//! * [`algorithms`]: runnable circuit constructions for the standard qudit
//!   algorithms (parity determination, Deutsch-Jozsa, Bernstein-Vazirani, QFT,
//!   phase estimation, Grover search) and a phase-fit routine for estimating an
//!   eigenphase from measured populations.
//! * [`geodesic`]: a generalized Gell-Mann operator basis with Hamiltonian
//!   expansion and a weighted cost functional over the expansion coefficients.
//!
//! # Quick start
//!
//! Build a two-qutrit register, run a SUM gate on a superposed control, and
//! sample:
//!
//! ```
//! use quditkit::prelude::*;
//!
//! let reg = Register::new(vec![3, 3]).unwrap();
//! let mut psi = State::basis_state(&reg, &[0, 0]).unwrap();
//! psi.apply(&gates::hadamard(3), &[0]).unwrap();
//! psi.apply(&gates::sum_gate(3), &[0, 1]).unwrap();
//! // The register is now (|00> + |11> + |22>)/sqrt(3).
//! let p = psi.probabilities();
//! assert!((p[0] - 1.0 / 3.0).abs() < 1e-12);
//! let digits = psi.measure_all(7);
//! assert_eq!(digits[0], digits[1]);
//! ```
//!
//! Synthesize a random qutrit unitary into elementary operations and check the
//! reconstruction:
//!
//! ```
//! use quditkit::prelude::*;
//!
//! let reg = Register::uniform(3, 1).unwrap();
//! let u = gates::hadamard(3);
//! let report = decompose::compile(&u, &reg).unwrap();
//! assert!(report.reconstruction_error < 1e-8);
//! assert!(report.gate_count <= report.bound);
//! ```
//!
//! # Conventions
//!
//! Site 0 is the most significant digit: for dimensions `[d0, d1, ...]` the
//! basis state `|a, b, ...>` has flat index `a * d1 * ... + b * ... + ...`.
//! Matrices are dense, row-major, and small by design; the simulator never
//! builds the full `N x N` embedding of a gate, it applies the local matrix
//! with strided kernels.

pub mod algorithms;
pub mod circuit;
pub mod decompose;
pub mod error;
pub mod gate;
pub mod gates;
pub mod geodesic;
pub mod io;
pub mod math;
pub mod matrix;
pub mod register;
pub mod state;

pub use circuit::Circuit;
pub use error::{Error, Result};
pub use gate::Gate;
pub use matrix::CMat;
pub use register::Register;
pub use state::State;

/// Convenience re-exports for `use quditkit::prelude::*`.
pub mod prelude {
    pub use crate::algorithms;
    pub use crate::circuit::Circuit;
    pub use crate::decompose;
    pub use crate::error::{Error, Result};
    pub use crate::gate::Gate;
    pub use crate::gates;
    pub use crate::geodesic;
    pub use crate::matrix::CMat;
    pub use crate::register::Register;
    pub use crate::state::State;
}
