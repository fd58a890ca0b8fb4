//! Phase estimation with base-d control digits.
//!
//! t control qudits each drive a power of the estimated unitary on the
//! target, and an inverse Fourier transform converts the accumulated
//! kickback into the base-d digits of the eigenphase. When the phase is an
//! exact t-digit fraction of a turn the readout is deterministic; otherwise
//! the distribution peaks at the nearest representable value.

use quditkit::math::{phase, ONE, ZERO};
use std::f64::consts::TAU;
use quditkit::prelude::*;

fn main() -> Result<()> {
    // diag(1, w, w^2) has eigenphases 0, 1/3, and 2/3 of a turn: all exact
    // in two base-3 digits.
    let d = 3;
    let u = Gate::new(
        vec![3],
        CMat::diag(&[ONE, phase(TAU / 3.0), phase(2.0 * TAU / 3.0)]),
    )?;
    println!("diag(1, w, w^2), t = 2 control qutrits:");
    for level in 0..3usize {
        let mut v = vec![ZERO; 3];
        v[level] = ONE;
        let est = algorithms::phase_estimate(d, 2, &u, &v)?;
        let value = est.digits[0] * 3 + est.digits[1];
        println!(
            "  eigenvector |{level}>: digits {:?} -> phase {}/9 of a turn, p = {:.6}",
            est.digits, value, est.probability
        );
    }

    // A phase with no finite base-3 expansion: the estimate concentrates
    // near the true value and sharpens as t grows.
    let target = 0.3511 * std::f64::consts::PI;
    let u = Gate::new(vec![3], CMat::diag(&[ONE, phase(target), phase(2.0 * target)]))?;
    let v = [ZERO, ONE, ZERO];
    println!("\nestimating phi = 0.3511 pi on |1> (true value {:.6} turns):", target / TAU);
    for t in 1..=4usize {
        let est = algorithms::phase_estimate(d, t, &u, &v)?;
        let mut value = 0usize;
        for &dg in &est.digits {
            value = value * 3 + dg;
        }
        let turns = value as f64 / 3f64.powi(t as i32);
        println!(
            "  t = {t}: readout {:?} -> {turns:.6} turns with p = {:.4}",
            est.digits, est.probability
        );
    }
    Ok(())
}
