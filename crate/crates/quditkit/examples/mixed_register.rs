//! A register where every site can have its own dimension.
//!
//! Builds a qubit + qutrit + ququart register, entangles the qutrit with the
//! qubit, and shows how flat indices and digit strings relate (site 0 is the
//! most significant digit). Finishes with a seeded measurement, which is
//! reproducible by construction.

use quditkit::prelude::*;

fn main() -> Result<()> {
    let reg = Register::new(vec![2, 3, 4])?;
    println!(
        "register dims {:?}, {} basis states",
        reg.dims(),
        reg.size()
    );

    // Flat index <-> digits, most significant site first.
    let digits = reg.digits_of(17);
    println!("index 17 is |{}{}{}>", digits[0], digits[1], digits[2]);
    println!("digits [1,1,1] is index {}", reg.index_of(&[1, 1, 1])?);

    // Superpose the qubit, then copy its value into the qutrit with a SUM
    // gate truncated to the shared levels via a hybrid-controlled gate.
    let mut psi = State::basis_state(&reg, &[0, 0, 0])?;
    psi.apply(&gates::hadamard(2), &[0])?;
    let ops = [gates::identity(3), gates::pauli_x(3)];
    psi.apply(&gates::mvcg(&ops)?, &[0, 1])?;

    println!("\namplitudes after H on the qubit, then qubit-controlled shift:");
    for (i, a) in psi.amplitudes().iter().enumerate() {
        if a.norm() > 1e-12 {
            let d = reg.digits_of(i);
            println!("  |{}{}{}>  {:+.4} {:+.4}i", d[0], d[1], d[2], a.re, a.im);
        }
    }

    // The qubit and qutrit now agree on every sampled outcome.
    for seed in 0..4 {
        let outcome = psi.measure_all(seed);
        assert_eq!(outcome[0], outcome[1]);
        println!("seed {seed}: measured {outcome:?}");
    }
    Ok(())
}
