//! Level permutations and level-embedded qubit gates.

use crate::error::{Error, Result};
use crate::gate::{Gate, GateSpec};
use crate::math::{C64, ONE, ZERO};
use crate::matrix::CMat;
use serde_json::json;

/// Transposition of two levels: `|p> <-> |q>`, all other levels fixed.
pub fn transposition(d: usize, p: usize, q: usize) -> Result<Gate> {
    assert!(d >= 2, "site dimension must be at least 2");
    if p >= d || q >= d {
        return Err(Error::dimension(format!(
            "levels ({p}, {q}) out of range for d = {d}"
        )));
    }
    if p == q {
        return Err(Error::dimension("transposition needs two distinct levels"));
    }
    let mut m = CMat::identity(d);
    m[(p, p)] = ZERO;
    m[(q, q)] = ZERO;
    m[(p, q)] = ONE;
    m[(q, p)] = ONE;
    Ok(Gate::new(vec![d], m)
        .expect("transposition is a permutation")
        .with_spec(GateSpec::new(
            "transposition",
            json!({ "d": d, "p": p, "q": q }),
        )))
}

/// `X_m`: swaps `|0>` and `|m>`, fixes every other level. Requires
/// `1 <= m < d`.
pub fn x_m(d: usize, m: usize) -> Result<Gate> {
    if m < 1 {
        return Err(Error::dimension("x_m needs m >= 1; m = 0 is the identity"));
    }
    Ok(transposition(d, 0, m)?.with_spec(GateSpec::new("x_m", json!({ "d": d, "m": m }))))
}

/// Qubit Hadamard acting on levels `{0, 1}` of a `d`-level site, identity on
/// the rest (so for a qutrit, `H|2> = |2>`).
pub fn embedded_hadamard(d: usize) -> Gate {
    assert!(d >= 2, "site dimension must be at least 2");
    let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut m = CMat::identity(d);
    m[(0, 0)] = s;
    m[(0, 1)] = s;
    m[(1, 0)] = s;
    m[(1, 1)] = -s;
    Gate::new(vec![d], m)
        .expect("embedded Hadamard block is unitary")
        .with_spec(GateSpec::new("embedded_hadamard", json!({ "d": d })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_m_swaps_named_levels_only() {
        let g = x_m(3, 2).unwrap();
        assert!((g.matrix()[(2, 0)] - ONE).norm() < 1e-15);
        assert!((g.matrix()[(0, 2)] - ONE).norm() < 1e-15);
        assert!((g.matrix()[(1, 1)] - ONE).norm() < 1e-15);
        assert!(x_m(3, 0).is_err());
        assert!(x_m(3, 3).is_err());
    }

    #[test]
    fn transpositions_are_involutions() {
        for (d, p, q) in [(3, 0, 1), (4, 1, 3), (5, 2, 4)] {
            let g = transposition(d, p, q).unwrap();
            assert!(g.matrix().pow(2).approx_eq(&CMat::identity(d), 1e-15));
        }
        assert!(transposition(3, 1, 1).is_err());
    }

    #[test]
    fn embedded_hadamard_fixes_upper_levels() {
        let g = embedded_hadamard(3);
        assert!((g.matrix()[(2, 2)] - ONE).norm() < 1e-15);
        assert!(g.matrix()[(2, 0)].norm() < 1e-15);
        // Restriction to {0,1} squares to identity.
        assert!(g.matrix().pow(2).approx_eq(&CMat::identity(3), 1e-12));
        // d = 2 is the plain Hadamard.
        assert!(embedded_hadamard(2)
            .matrix()
            .approx_eq(crate::gates::hadamard(2).matrix(), 1e-12));
    }
}
