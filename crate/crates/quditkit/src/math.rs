//! Small numeric helpers: roots of unity, modular arithmetic, phases.

use num_complex::Complex64;

/// Shorthand for the complex scalar type used throughout the crate.
pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// `e^{i theta}`.
#[inline]
pub fn phase(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

/// Primitive `d`-th root of unity `e^{2 pi i / d}`.
#[inline]
pub fn omega(d: usize) -> C64 {
    phase(2.0 * std::f64::consts::PI / d as f64)
}

/// `omega(d)^k` for possibly large or negative `k`, computed from the reduced
/// exponent so precision does not degrade with `|k|`.
#[inline]
pub fn omega_pow(d: usize, k: i64) -> C64 {
    let r = k.rem_euclid(d as i64) as f64;
    phase(2.0 * std::f64::consts::PI * r / d as f64)
}

/// Square root of omega up to sign: `tau = e^{i pi (d + 1) / d}`.
/// Satisfies `tau^2 = omega(d)` and `tau^{d^2} = 1` for every `d`, which makes
/// it the right phase unit for displacement operators in both parities of `d`.
#[inline]
pub fn tau(d: usize) -> C64 {
    phase(std::f64::consts::PI * (d as f64 + 1.0) / d as f64)
}

/// `tau(d)^k` with exponent reduction mod `2d`.
#[inline]
pub fn tau_pow(d: usize, k: i64) -> C64 {
    let r = ((d as i64 + 1) * k).rem_euclid(2 * d as i64) as f64;
    phase(std::f64::consts::PI * r / d as f64)
}

/// Nonnegative remainder of `x` mod `m`.
#[inline]
pub fn umod(x: i64, m: usize) -> usize {
    x.rem_euclid(m as i64) as usize
}

/// Modular inverse of `a` mod `m` by the extended Euclidean algorithm.
/// Returns `None` when `gcd(a, m) != 1`.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_is_primitive_root() {
        for d in 2..=9 {
            let w = omega(d);
            assert!((w.powu(d as u32) - ONE).norm() < 1e-12);
            for k in 1..d {
                assert!((w.powu(k as u32) - ONE).norm() > 0.1);
            }
        }
    }

    #[test]
    fn tau_squares_to_omega() {
        for d in 2..=9 {
            assert!((tau(d) * tau(d) - omega(d)).norm() < 1e-12);
            // tau generates a 2d-th (d even) or d-th (d odd) root of unity;
            // either way tau^(d^2) = 1.
            assert!((tau_pow(d, (d * d) as i64) - ONE).norm() < 1e-12);
        }
    }

    #[test]
    fn omega_pow_handles_negative_exponents() {
        let d = 5;
        assert!((omega_pow(d, -3) - omega(d).powu(2)).norm() < 1e-12);
        assert!((omega_pow(d, 12) - omega(d).powu(2)).norm() < 1e-12);
    }

    #[test]
    fn mod_inverse_agrees_with_definition() {
        assert_eq!(mod_inverse(12, 5), Some(3)); // 12*3 = 36 = 1 mod 5
        assert_eq!(mod_inverse(12, 7), Some(3)); // 36 = 1 mod 7
        assert_eq!(mod_inverse(12, 11), Some(1));
        assert_eq!(mod_inverse(4, 8), None);
        for m in [5i64, 7, 11, 13] {
            let inv = mod_inverse(12, m).unwrap();
            assert_eq!((12 * inv).rem_euclid(m), 1);
        }
    }
}
