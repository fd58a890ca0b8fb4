//! The generalized Gell-Mann basis and Hamiltonian locality bookkeeping.
//!
//! The d^2 - 1 traceless Hermitian basis elements of the d-level matrices,
//! lifted by tensor products, give every n-site Hamiltonian a unique real
//! coefficient per multi-site label. Counting how many sites a label
//! touches grades the expansion by body count, and a penalty-weighted norm
//! over the coefficients charges many-body terms, the quantity whose
//! minimizing paths measure circuit complexity.

use quditkit::geodesic::{
    cost, expand, gell_mann_basis, project_local, resolution_bound, BasisKind,
};
use quditkit::math::C64;
use quditkit::prelude::*;

fn main() -> Result<()> {
    // d = 2 reduces to the Paulis; d = 3 are the eight Gell-Mann matrices.
    for d in [2usize, 3, 4] {
        let basis = gell_mann_basis(d);
        let (mut s, mut a, mut diag) = (0, 0, 0);
        for e in &basis {
            match e.kind {
                BasisKind::Symmetric => s += 1,
                BasisKind::Antisymmetric => a += 1,
                BasisKind::Diagonal => diag += 1,
            }
        }
        println!("d = {d}: {} elements ({s} symmetric, {a} antisymmetric, {diag} diagonal)", basis.len());
    }

    // A two-qutrit Hamiltonian: one local field and one coupling term.
    let basis = gell_mann_basis(3);
    let field = basis[6].matrix(); // first diagonal element
    let coupling = basis[0].matrix(); // symmetric (1,2)
    let id = CMat::identity(3);
    let h = &field.kron(&id).scale(C64::new(0.7, 0.0))
        + &coupling.kron(coupling).scale(C64::new(0.3, 0.0));
    let e = expand(&h, 3)?;
    println!("\ntwo-qutrit H: nonzero coefficients");
    for (label, &coeff) in e.coeffs() {
        if coeff.abs() > 1e-12 {
            println!(
                "  label {:?} ({}-body): {:+.4}",
                label,
                quditkit::geodesic::HamiltonianExpansion::body_count(label),
                coeff
            );
        }
    }
    println!("reconstruction error: {:.2e}", e.reconstruct().max_abs_diff(&h));

    // Everything here is at most 2-body, so the penalty never bites.
    println!("cost at p = 1: {:.6}", cost(&e, 1.0)?);
    println!("cost at p = 100: {:.6}", cost(&e, 100.0)?);

    // Add a genuine 3-body term on three qubits and watch the penalty act.
    let pauli = gell_mann_basis(2);
    let x = pauli[0].matrix();
    let h3 = &x.kron(&x.kron(x)).scale(C64::new(0.1, 0.0))
        + &x.kron(&CMat::identity(4)).scale(C64::new(0.5, 0.0));
    let e3 = expand(&h3, 2)?;
    for p in [1.0, 4.0, 10.0] {
        println!("three-qubit H with XXX term, cost at p = {p}: {:.4}", cost(&e3, p)?);
    }
    let local = project_local(&e3);
    println!(
        "after projecting away many-body terms: cost {:.4} at any p",
        cost(&local, 10.0)?
    );

    // The resolution trade-off: finer path slicing, quadratically more
    // two-local gates.
    for intervals in [1u64, 10, 100] {
        let b = resolution_bound(intervals, 3, 4)?;
        println!(
            "{intervals:>4} intervals at d = 3, n = 4: error {:.2e}, gate scale {:.2e}",
            b.epsilon, b.gate_scale
        );
    }
    Ok(())
}
