//! Three constructions of the two-qudit SWAP, checked against each other.
//!
//! For qubits, three CNOTs swap two wires. For general d the same wiring
//! needs corrections: either three self-inverse C-tilde gates, or three
//! GXOR gates with two single-site complement gates. Both routes reproduce
//! the brute-force permutation matrix, and a hybrid partial swap exchanges
//! the shared levels of sites with different dimensions.

use quditkit::prelude::*;

fn swap_matrix(d: usize) -> CMat {
    CMat::from_fn(d * d, d * d, |r, c| {
        let (a, b) = (c / d, c % d);
        if r == b * d + a {
            quditkit::math::ONE
        } else {
            quditkit::math::ZERO
        }
    })
}

fn main() -> Result<()> {
    for d in 2..=7 {
        let target = swap_matrix(d);
        let via_ctilde = gates::swap(d).unitary()?;
        let via_gxor = gates::swap_gxor(d).unitary()?;
        println!(
            "d = {d}: |ctilde route - SWAP| = {:.2e}, |gxor route - SWAP| = {:.2e}",
            via_ctilde.max_abs_diff(&target),
            via_gxor.max_abs_diff(&target),
        );
    }

    // The C-tilde gate itself comes out of one controlled-Z conjugated by
    // Fourier gates on the target.
    let direct = gates::ctilde_x(4);
    let from_fourier = gates::ctilde_from_fourier(4);
    println!(
        "ctilde_x(4) vs its Fourier construction: {:.2e}",
        direct.matrix().max_abs_diff(from_fourier.matrix())
    );

    // A qutrit talking to a ququart: swap the overlapping levels only.
    let partial = gates::partial_swap(3, 4, 3)?;
    let reg = Register::new(vec![3, 4])?;
    let mut psi = State::basis_state(&reg, &[2, 1])?;
    psi.apply(&partial, &[0, 1])?;
    let readout = psi.measure_all(0);
    println!("partial_swap(3,4,3) maps |2,1> to |{},{}>", readout[0], readout[1]);
    Ok(())
}
