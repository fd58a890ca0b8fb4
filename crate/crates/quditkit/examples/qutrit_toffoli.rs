//! A Toffoli from three two-site gates, using the third level of a qutrit.
//!
//! The textbook qubit Toffoli needs five two-qubit gates. Letting the target
//! borrow one extra level drops that to three: the first control parks the
//! target's qubit subspace in the spare level, the second control phases it,
//! and the inverse of the first brings it back. The circuit acts on three
//! qutrits but its restriction to the qubit subspace is exactly the 8x8
//! Toffoli.
//!
//! The same trick generalizes: for n controls the counts are 2n-1 two-qudit
//! gates in series, 2n-3 with a balanced tree layout, against 12n-11 for
//! the best known qubit-only construction.

use quditkit::prelude::*;

fn main() -> Result<()> {
    let circuit = gates::toffoli_qutrit();
    let two_site = circuit
        .steps()
        .iter()
        .filter(|s| s.sites.len() == 2)
        .count();
    println!(
        "qutrit Toffoli: {} steps, {} of them two-site",
        circuit.len(),
        two_site
    );

    // Restrict the 27x27 circuit unitary to qubit digits and compare with
    // the Toffoli truth table (global phase allowed).
    let full = circuit.unitary()?;
    let reg = circuit.register();
    let qubit_rows: Vec<usize> = (0..reg.size())
        .filter(|&i| reg.digits_of(i).iter().all(|&dg| dg < 2))
        .collect();
    let restricted = CMat::from_fn(8, 8, |bi, bj| full[(qubit_rows[bi], qubit_rows[bj])]);
    let toffoli = CMat::from_fn(8, 8, |bi, bj| {
        if toffoli_image(bj) == bi {
            quditkit::math::ONE
        } else {
            quditkit::math::ZERO
        }
    });
    let agrees = quditkit::matrix::equal_up_to_global_phase(&restricted, &toffoli, 1e-8);
    println!("qubit subspace equals the 8x8 Toffoli up to phase: {agrees}");

    println!("\ncontrols  series  tree  qubit-only");
    for n in 2..=8 {
        let (series, tree, qubit_only) = gates::toffoli_gate_counts(n)?;
        println!("{n:>8}  {series:>6}  {tree:>4}  {qubit_only:>10}");
    }
    Ok(())
}

/// Basis action of the n=2 Toffoli on three qubits, msb first.
fn toffoli_image(j: usize) -> usize {
    if j >> 1 == 0b11 {
        j ^ 1
    } else {
        j
    }
}
