//! Two-level rotations embedded in a d-level site.

use crate::error::{Error, Result};
use crate::gate::{Gate, GateSpec};
use crate::math::C64;
use crate::matrix::CMat;
use serde_json::json;

/// Rotation touching only levels `l-1` and `l` of a `d`-level site:
///
/// ```text
/// block at rows/cols (l-1, l):
///     1 / sqrt(|x|^2 + |y|^2) * [ x    -y ]
///                               [ y*   x* ]
/// ```
///
/// with identity elsewhere. The block has determinant +1 for any nonzero
/// `(x, y)`, which is what lets chains of these rotations stay inside the
/// special unitary group during synthesis. Requires `1 <= l <= d-1`.
pub fn rot_x(d: usize, l: usize, x: C64, y: C64) -> Result<Gate> {
    assert!(d >= 2, "site dimension must be at least 2");
    if l < 1 || l >= d {
        return Err(Error::dimension(format!(
            "level pair ({}, {l}) out of range for d = {d}",
            l as i64 - 1
        )));
    }
    let norm_sqr = x.norm_sqr() + y.norm_sqr();
    if norm_sqr == 0.0 {
        return Err(Error::numeric("rotation parameters (x, y) are both zero"));
    }
    let norm = norm_sqr.sqrt();
    let mut m = CMat::identity(d);
    m[(l - 1, l - 1)] = x / norm;
    m[(l - 1, l)] = -y / norm;
    m[(l, l - 1)] = y.conj() / norm;
    m[(l, l)] = x.conj() / norm;
    Ok(Gate::new(vec![d], m)
        .expect("normalized two-level block is unitary")
        .with_spec(GateSpec::new(
            "rot_x",
            json!({ "d": d, "l": l, "x": [x.re, x.im], "y": [y.re, y.im] }),
        )))
}
