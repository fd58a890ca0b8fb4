//! The d-level shift and clock operators and their commutation phase.
//!
//! X shifts basis states cyclically, Z multiplies |j> by the j-th power of
//! the d-th root of unity, and exchanging their order costs exactly one
//! factor of that root: Z X = omega X Z. Displacement operators package
//! X^x Z^z with a symmetrizing prefactor so that indices add cleanly.

use quditkit::gates::{self, DisplacementIndex};
use quditkit::math::omega;
use quditkit::prelude::*;

fn main() -> Result<()> {
    let d = 5;
    let x = gates::pauli_x(d);
    let z = gates::pauli_z(d);

    let zx = z.matrix() * x.matrix();
    let xz = x.matrix() * z.matrix();
    let scaled = xz.scale(omega(d));
    println!(
        "d = {d}: max |ZX - omega XZ| = {:.3e}",
        zx.max_abs_diff(&scaled)
    );

    // Powers of X act as addition, powers of Z as phase ramps.
    let reg = Register::uniform(d, 1)?;
    let mut psi = State::basis_state(&reg, &[3])?;
    psi.apply(&x, &[0])?;
    psi.apply(&x, &[0])?;
    let probs = psi.probabilities();
    println!("X^2 |3> concentrates on level {}", argmax(&probs));

    // Displacements compose up to a phase, so checking equality of the
    // matrices up to global phase is the right comparison.
    let a = gates::displacement(DisplacementIndex::new(d, 1, 2)?);
    let b = gates::displacement(DisplacementIndex::new(d, 3, 1)?);
    let ab = a.matrix() * b.matrix();
    let sum = gates::displacement(DisplacementIndex::new(d, 4, 3)?);
    let matches = quditkit::matrix::equal_up_to_global_phase(&ab, sum.matrix(), 1e-10);
    println!("D(1,2) D(3,1) ~ D(4,3) up to phase: {matches}");
    Ok(())
}

fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, &p) in v.iter().enumerate() {
        if p > v[best] {
            best = i;
        }
    }
    best
}
