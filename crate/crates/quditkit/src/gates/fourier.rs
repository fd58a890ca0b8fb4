//! The d-level Hadamard gate and the phase gates of the Fourier transform.

use crate::gate::{Gate, GateSpec};
use crate::math::{omega_pow, phase, ZERO};
use crate::matrix::CMat;
use serde_json::json;

/// Generalized Hadamard: `H|j> = (1/sqrt d) sum_i omega^{ij} |i>`.
///
/// This is the single-qudit discrete Fourier transform; it squares to the
/// index-reversal permutation and has order four.
pub fn hadamard(d: usize) -> Gate {
    assert!(d >= 2, "site dimension must be at least 2");
    let norm = 1.0 / (d as f64).sqrt();
    let m = CMat::from_fn(d, d, |i, j| omega_pow(d, (i * j) as i64).scale(norm));
    Gate::new(vec![d], m)
        .expect("scaled character matrix is unitary")
        .with_spec(GateSpec::new("hadamard", json!({ "d": d })))
}

/// Inverse of [`hadamard`], as its own named constructor so circuits that end
/// in an inverse transform serialize by name.
pub fn hadamard_dagger(d: usize) -> Gate {
    hadamard(d)
        .dagger()
        .with_spec(GateSpec::new("hadamard_dagger", json!({ "d": d })))
}

/// Single-qudit phase gate `diag(e^{2 pi i j / d^k})`, the rotation the QFT
/// applies between digit `l` and digit `l + k - 1`.
pub fn fourier_phase(d: usize, k: u32) -> Gate {
    assert!(d >= 2, "site dimension must be at least 2");
    assert!(k >= 1, "phase denominator exponent must be at least 1");
    let denom = (d as f64).powi(k as i32);
    let m = CMat::diag(
        &(0..d)
            .map(|j| phase(2.0 * std::f64::consts::PI * j as f64 / denom))
            .collect::<Vec<_>>(),
    );
    Gate::new(vec![d], m)
        .expect("diagonal of unit phases")
        .with_spec(GateSpec::new("fourier_phase", json!({ "d": d, "k": k })))
}

/// Two-qudit diagonal `|c,t> -> e^{2 pi i c t / d^k} |c,t>`.
///
/// Equivalently: a control in `|c>` applies [`fourier_phase`] `c` times to
/// the target, which is the multi-value-controlled reading of the QFT's
/// ladder of phase gates. The matrix is symmetric in control and target.
pub fn controlled_fourier_phase(d: usize, k: u32) -> Gate {
    assert!(d >= 2, "site dimension must be at least 2");
    assert!(k >= 1, "phase denominator exponent must be at least 1");
    let denom = (d as f64).powi(k as i32);
    let m = CMat::from_fn(d * d, d * d, |i, j| {
        if i != j {
            return ZERO;
        }
        let (c, t) = (i / d, i % d);
        phase(2.0 * std::f64::consts::PI * (c * t) as f64 / denom)
    });
    Gate::new(vec![d, d], m)
        .expect("diagonal of unit phases")
        .with_spec(GateSpec::new(
            "controlled_fourier_phase",
            json!({ "d": d, "k": k }),
        ))
}
