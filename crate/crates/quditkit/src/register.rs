//! Register layout for mixed-dimension qudit systems.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// An ordered list of qudit sites with per-site dimensions.
///
/// Site 0 carries the most significant digit: for dimensions `[d0, d1, d2]`
/// the basis label `|a, b, c>` maps to flat index `(a d1 + b) d2 + c`, i.e.
/// plain positional notation with mixed radix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Register {
    dims: Vec<usize>,
}

impl Register {
    /// A register with the given site dimensions. Every site must hold at
    /// least two levels, and the total state-space size must fit in `usize`.
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::dimension("register needs at least one site"));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::dimension(format!(
                "site dimension {d} is below 2; a carrier needs at least two levels"
            )));
        }
        let mut size: usize = 1;
        for &d in &dims {
            size = size
                .checked_mul(d)
                .ok_or_else(|| Error::dimension("register size overflows usize"))?;
        }
        Ok(Register { dims })
    }

    /// `n` sites of uniform dimension `d`.
    pub fn uniform(d: usize, n: usize) -> Result<Self> {
        Register::new(vec![d; n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_sites(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, site: usize) -> usize {
        self.dims[site]
    }

    /// Total number of basis states.
    pub fn size(&self) -> usize {
        self.dims.iter().product()
    }

    /// Flat-index stride of each site (site 0 has the largest stride).
    pub fn strides(&self) -> Vec<usize> {
        let n = self.dims.len();
        let mut s = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            s[i] = s[i + 1] * self.dims[i + 1];
        }
        s
    }

    /// Flat index of a digit string.
    pub fn index_of(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.dims.len() {
            return Err(Error::dimension(format!(
                "digit string has {} entries for a {}-site register",
                digits.len(),
                self.dims.len()
            )));
        }
        let mut idx = 0;
        for (site, (&g, &d)) in digits.iter().zip(&self.dims).enumerate() {
            if g >= d {
                return Err(Error::dimension(format!(
                    "digit {g} at site {site} exceeds dimension {d}"
                )));
            }
            idx = idx * d + g;
        }
        Ok(idx)
    }

    /// Digit string of a flat index.
    pub fn digits_of(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.dims.len()];
        for (i, &d) in self.dims.iter().enumerate().rev() {
            digits[i] = index % d;
            index /= d;
        }
        digits
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_dimensions() {
        assert!(Register::new(vec![]).is_err());
        assert!(Register::new(vec![2, 1, 3]).is_err());
        assert!(Register::new(vec![0]).is_err());
        assert!(Register::new(vec![2, 3]).is_ok());
    }

    #[test]
    fn rejects_overflowing_size() {
        assert!(Register::new(vec![usize::MAX / 2, 3]).is_err());
    }

    #[test]
    fn site_zero_is_most_significant() {
        let reg = Register::new(vec![2, 3, 4]).unwrap();
        assert_eq!(reg.size(), 24);
        assert_eq!(reg.strides(), vec![12, 4, 1]);
        assert_eq!(reg.index_of(&[1, 2, 3]).unwrap(), 23);
        assert_eq!(reg.index_of(&[1, 0, 0]).unwrap(), 12);
        assert_eq!(reg.digits_of(17), vec![1, 1, 1]);
    }

    #[test]
    fn index_digit_round_trip() {
        let reg = Register::new(vec![3, 2, 5]).unwrap();
        for idx in 0..reg.size() {
            let digits = reg.digits_of(idx);
            assert_eq!(reg.index_of(&digits).unwrap(), idx);
        }
    }

    #[test]
    fn out_of_range_digits_are_rejected() {
        let reg = Register::new(vec![2, 3]).unwrap();
        assert!(reg.index_of(&[0, 3]).is_err());
        assert!(reg.index_of(&[2, 0]).is_err());
        assert!(reg.index_of(&[0]).is_err());
    }
}
