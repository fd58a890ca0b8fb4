//! Expanding a many-control gate into two-site gates with borrowed ancillas.
//!
//! A gate conditioned on m-1 controls all reading their top level can be
//! rebuilt from two-site pieces by chaining the controls through ancilla
//! sites: each ancilla climbs one level per satisfied control, the payload
//! fires off the last link, and the climb is undone in reverse. The number
//! of ancillas needed is ceil((m-2)/(d-2)) because a d-level ancilla can
//! absorb d-2 controls before saturating.

use quditkit::decompose::{expand_multicontrolled, ladder_ancillas};
use quditkit::prelude::*;

fn main() -> Result<()> {
    println!("ancillas needed for m total sites at dimension d:");
    println!("  m\\d   3  4  5");
    for m in 3..=8 {
        let row: Vec<String> = [3usize, 4, 5]
            .iter()
            .map(|&d| ladder_ancillas(m, d).to_string())
            .collect();
        println!("  {m}    {:>2} {:>2} {:>2}", row[0], row[1], row[2]);
    }

    // Three qutrit sites, two of them controls: one ancilla suffices.
    let inner = gates::embedded_hadamard(3);
    let expansion = expand_multicontrolled(3, &inner, 3)?;
    println!(
        "\nC2[embedded H] on qutrits: {} two-site ops, {} ancilla",
        expansion.ops.len(),
        expansion.ancillas
    );

    // Verify by brute force on the extended register: with the ancilla at
    // |0>, the expansion must act as identity except on the controlled
    // block, and return the ancilla to |0> afterwards.
    let extended = Register::uniform(3, 3 + expansion.ancillas)?;
    let mut circuit = Circuit::new(extended.clone());
    for op in &expansion.ops {
        circuit.push(op.to_gate()?, op.sites())?;
    }
    let head = Register::uniform(3, 3)?;
    let mut worst: f64 = 0.0;
    for input in 0..27usize {
        // Enumerate the three working sites; the ancilla starts at |0>.
        let mut digits = head.digits_of(input);
        digits.resize(extended.num_sites(), 0);
        let mut psi = State::basis_state(&extended, &digits)?;
        circuit.apply_to(&mut psi)?;
        // Expected: embedded H on the target iff both controls read |2>,
        // with the ancilla restored either way.
        let mut expect = State::basis_state(&extended, &digits)?;
        if digits[0] == 2 && digits[1] == 2 {
            expect.apply(&inner, &[2])?;
        }
        let overlap = expect.inner(&psi)?.norm();
        worst = worst.max((1.0 - overlap).abs());
    }
    println!("largest deviation over all 27 basis inputs: {worst:.2e}");
    Ok(())
}
