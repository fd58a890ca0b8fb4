//! The quantum Fourier transform over base-d digits.
//!
//! One Hadamard-style Fourier gate per site, a controlled phase between
//! every pair, and a final wire reversal: the circuit multiplies out to the
//! d^n-dimensional DFT matrix exactly. The gate count is n Fourier gates
//! plus n(n-1)/2 two-site phases, quadratic in the digit count rather than
//! exponential in the dimension.

use quditkit::prelude::*;

fn main() -> Result<()> {
    for (d, n) in [(2usize, 3usize), (3, 2), (5, 2)] {
        let circuit = algorithms::qft_circuit(d, n)?;
        let dft = gates::hadamard(d.pow(n as u32));
        let err = circuit.unitary()?.max_abs_diff(dft.matrix());
        println!(
            "d = {d}, n = {n}: {} steps, |circuit - DFT| = {err:.2e}",
            circuit.len()
        );
    }

    // Fourier-transforming a basis state spreads it uniformly with a phase
    // ramp; transforming twice gives the index-reversal permutation.
    let d = 3;
    let circuit = algorithms::qft_circuit(d, 2)?;
    let reg = circuit.register().clone();
    let mut psi = State::basis_state(&reg, &[1, 0])?;
    circuit.apply_to(&mut psi)?;
    let p = psi.probabilities();
    println!(
        "QFT |10>: probabilities all 1/9 within {:.1e}",
        p.iter()
            .map(|&x| (x - 1.0 / 9.0).abs())
            .fold(0.0f64, f64::max)
    );

    circuit.apply_to(&mut psi)?;
    let outcome = psi.measure_all(0);
    println!("QFT^2 |10> = |{}{}>  (index reversal: 3 -> 6)", outcome[0], outcome[1]);
    Ok(())
}
