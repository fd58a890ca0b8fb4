//! Amplitude amplification over a d-ary search space.
//!
//! The oracle phases the marked basis state, and the diffusion step
//! reflects about the uniform superposition, built literally as Fourier
//! gates conjugating a phase on |0...0>. With both phases at pi the
//! success probability after k rounds is sin^2((2k+1) arcsin(1/sqrt(N))),
//! independent of how N factors into d^n.

use quditkit::prelude::*;
use std::f64::consts::PI;

fn main() -> Result<()> {
    // Sweep iterations on two qutrits (N = 9).
    println!("two qutrits, marked |12>:");
    for k in 0..=4 {
        let run = algorithms::grover(3, 2, &[1, 2], (PI, PI), k)?;
        let formula = algorithms::grover_success_formula(9, k as u64);
        println!(
            "  k = {k}: simulated {:.6}, closed form {:.6}",
            run.success_probability, formula
        );
    }
    let best = algorithms::grover_optimal_iterations(9);
    println!("  optimal iteration count: {best}");

    // Same search space as a single 9-level site: the probabilities match
    // because only N matters.
    let flat = algorithms::grover(9, 1, &[5], (PI, PI), 2)?;
    println!(
        "one 9-level site, marked |5>, k = 2: {:.6}",
        flat.success_probability
    );

    // Weaker oracle phases amplify more slowly.
    let soft = algorithms::grover(3, 2, &[1, 2], (PI / 2.0, PI / 2.0), 2)?;
    println!(
        "phases pi/2 instead of pi, k = 2: {:.6}",
        soft.success_probability
    );

    // Three qutrits at the optimal count get close to certainty.
    let n27 = algorithms::grover_optimal_iterations(27);
    let run = algorithms::grover(3, 3, &[2, 0, 1], (PI, PI), n27 as usize)?;
    println!(
        "three qutrits, k = {n27}: {:.6} (formula {:.6})",
        run.success_probability,
        algorithms::grover_success_formula(27, n27)
    );
    Ok(())
}
