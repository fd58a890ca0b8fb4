//! State vectors over a register, with strided gate application.
//!
//! A state is a dense amplitude vector of length `register.size()`. Gates are
//! applied in place: for a gate touching sites with local dimensions
//! multiplying to `k`, the kernel walks the `size / k` untouched-coordinate
//! combinations and applies the `k x k` matrix to each gathered slice. The
//! full `size x size` embedding of a gate is never materialized.

use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::math::{C64, ZERO};
use crate::matrix::CMat;
use crate::register::Register;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct State {
    register: Register,
    amps: Vec<C64>,
}

impl State {
    /// The computational basis state with the given digit string.
    pub fn basis_state(register: &Register, digits: &[usize]) -> Result<State> {
        let idx = register.index_of(digits)?;
        let mut amps = vec![ZERO; register.size()];
        amps[idx] = C64::new(1.0, 0.0);
        Ok(State {
            register: register.clone(),
            amps,
        })
    }

    /// Wrap an explicit amplitude vector. The length must match the register
    /// and the vector must be normalized to 1e-10, the same tolerance the
    /// rest of the crate uses for algebraic identities.
    pub fn from_amplitudes(register: &Register, amps: Vec<C64>) -> Result<State> {
        if amps.len() != register.size() {
            return Err(Error::dimension(format!(
                "amplitude vector has length {} for a register of size {}",
                amps.len(),
                register.size()
            )));
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > 1e-10 {
            return Err(Error::numeric(format!(
                "amplitude vector has squared norm {norm_sqr:.3e}, expected 1"
            )));
        }
        Ok(State {
            register: register.clone(),
            amps,
        })
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &State) -> Result<C64> {
        if self.register != other.register {
            return Err(Error::dimension("inner product across different registers"));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Apply `gate` to the listed sites, in place.
    ///
    /// Sites are given most-significant first and must be distinct; their
    /// dimensions must match the gate signature exactly. The sites need not
    /// be adjacent or ordered.
    pub fn apply(&mut self, gate: &Gate, sites: &[usize]) -> Result<()> {
        let n = self.register.num_sites();
        if sites.len() != gate.arity() {
            return Err(Error::dimension(format!(
                "gate touches {} sites but {} were given",
                gate.arity(),
                sites.len()
            )));
        }
        let mut seen = vec![false; n];
        for (&site, &want) in sites.iter().zip(gate.signature()) {
            if site >= n {
                return Err(Error::dimension(format!(
                    "site {site} out of range for a {n}-site register"
                )));
            }
            if seen[site] {
                return Err(Error::dimension(format!("site {site} listed twice")));
            }
            seen[site] = true;
            if self.register.dim(site) != want {
                return Err(Error::dimension(format!(
                    "gate expects dimension {want} at site {site}, register has {}",
                    self.register.dim(site)
                )));
            }
        }

        let strides = self.register.strides();
        let k = gate.size();

        // Flat offset of each local basis state of the gate subspace, with
        // the gate's own site order defining digit significance.
        let mut offsets = vec![0usize; k];
        for (l, off) in offsets.iter_mut().enumerate() {
            let mut rem = l;
            let mut acc = 0;
            for j in (0..sites.len()).rev() {
                let d = gate.signature()[j];
                acc += (rem % d) * strides[sites[j]];
                rem /= d;
            }
            *off = acc;
        }

        // Dims and strides of the untouched sites, for enumerating the base
        // index of every gate-subspace slice.
        let rest: Vec<(usize, usize)> = (0..n)
            .filter(|s| !seen[*s])
            .map(|s| (self.register.dim(s), strides[s]))
            .collect();
        let rest_count: usize = rest.iter().map(|&(d, _)| d).product();

        let m = gate.matrix();
        let mut scratch = vec![ZERO; k];
        for r in 0..rest_count {
            let mut rem = r;
            let mut base = 0;
            for &(d, stride) in rest.iter().rev() {
                base += (rem % d) * stride;
                rem /= d;
            }
            for (l, s) in scratch.iter_mut().enumerate() {
                *s = self.amps[base + offsets[l]];
            }
            for (i, &off) in offsets.iter().enumerate() {
                let mut acc = ZERO;
                for (j, &s) in scratch.iter().enumerate() {
                    acc += m[(i, j)] * s;
                }
                self.amps[base + off] = acc;
            }
        }
        Ok(())
    }

    /// Probability of each flat basis index.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Draw one measurement outcome in the computational basis, returning the
    /// digit string. Deterministic in the seed; the state is not collapsed.
    pub fn measure_all(&self, seed: u64) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(&mut rng)
    }

    /// Like [`measure_all`](State::measure_all) but drawing from a caller-owned
    /// generator, for taking many shots.
    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<usize> {
        let total: f64 = self.amps.iter().map(|a| a.norm_sqr()).sum();
        let mut ticket = rng.gen::<f64>() * total;
        let mut chosen = self.amps.len() - 1;
        for (i, a) in self.amps.iter().enumerate() {
            ticket -= a.norm_sqr();
            if ticket <= 0.0 {
                chosen = i;
                break;
            }
        }
        self.register.digits_of(chosen)
    }

    /// Density matrix `|psi><psi|` of this pure state.
    pub fn density_matrix(&self) -> CMat {
        CMat::from_fn(self.amps.len(), self.amps.len(), |i, j| {
            self.amps[i] * self.amps[j].conj()
        })
    }

    /// Pure-state shortcut for [`fidelity`]: `|<a|b>|^2` for normalized
    /// states, identical to the density-matrix formula on `|a><a|`, `|b><b|`.
    pub fn fidelity(a: &State, b: &State) -> Result<f64> {
        let overlap = a.inner(b)?.norm_sqr();
        let na = a.amps.iter().map(|x| x.norm_sqr()).sum::<f64>();
        let nb = b.amps.iter().map(|x| x.norm_sqr()).sum::<f64>();
        if na == 0.0 || nb == 0.0 {
            return Err(Error::numeric("fidelity of a zero vector"));
        }
        Ok(overlap / (na * nb))
    }

    /// True when the states agree up to one overall phase:
    /// `|<a|b>| / (|a| |b|) >= 1 - tol`.
    pub fn equal_up_to_global_phase(&self, other: &State, tol: f64) -> bool {
        match self.inner(other) {
            Ok(ip) => {
                let denom = self.norm() * other.norm();
                denom > 0.0 && ip.norm() / denom >= 1.0 - tol
            }
            Err(_) => false,
        }
    }
}

/// Normalized overlap of two density matrices:
/// `tr(a^dag b) / (sqrt(tr(a^dag a)) sqrt(tr(b^dag b)))`.
///
/// For Hermitian inputs the value is real in `[-1, 1]` and reaches 1 exactly
/// when the matrices are proportional. Pure states can go through
/// [`State::fidelity`] instead, which avoids building the outer products.
pub fn fidelity(rho_th: &CMat, rho_expt: &CMat) -> Result<f64> {
    if rho_th.rows() != rho_expt.rows() || !rho_th.is_square() || !rho_expt.is_square() {
        return Err(Error::dimension(format!(
            "density matrices are {}x{} and {}x{}",
            rho_th.rows(),
            rho_th.cols(),
            rho_expt.rows(),
            rho_expt.cols()
        )));
    }
    for (name, m) in [("first", rho_th), ("second", rho_expt)] {
        if m.max_abs_diff(&m.dagger()) > 1e-8 {
            return Err(Error::numeric(format!(
                "{name} density matrix is not Hermitian"
            )));
        }
    }
    let self_th = (&rho_th.dagger() * rho_th).trace().re;
    let self_expt = (&rho_expt.dagger() * rho_expt).trace().re;
    if self_th <= 0.0 || self_expt <= 0.0 {
        return Err(Error::numeric("fidelity of a zero density matrix"));
    }
    let cross = (&rho_th.dagger() * rho_expt).trace().re;
    Ok(cross / (self_th.sqrt() * self_expt.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates;
    use crate::math::ONE;

    #[test]
    fn basis_state_places_single_amplitude() {
        let reg = Register::new(vec![2, 3]).unwrap();
        let psi = State::basis_state(&reg, &[1, 2]).unwrap();
        let p = psi.probabilities();
        assert_eq!(p.len(), 6);
        for (i, &pi) in p.iter().enumerate() {
            let expect = if i == 5 { 1.0 } else { 0.0 };
            assert!((pi - expect).abs() < 1e-15);
        }
        assert!(State::basis_state(&reg, &[0, 3]).is_err());
    }

    #[test]
    fn apply_rejects_bad_site_lists() {
        let reg = Register::new(vec![3, 3, 2]).unwrap();
        let mut psi = State::basis_state(&reg, &[0, 0, 0]).unwrap();
        let g = gates::sum_gate(3);
        assert!(psi.apply(&g, &[0]).is_err()); // arity mismatch
        assert!(psi.apply(&g, &[0, 0]).is_err()); // repeated site
        assert!(psi.apply(&g, &[0, 3]).is_err()); // out of range
        assert!(psi.apply(&g, &[0, 2]).is_err()); // dimension mismatch
        assert!(psi.apply(&g, &[1, 0]).is_ok()); // order need not be ascending
    }

    #[test]
    fn apply_matches_dense_embedding_on_middle_site() {
        // X on the middle qutrit of [2, 3, 2]: check a couple of amplitudes
        // by hand. |0,1,1> -> |0,2,1>.
        let reg = Register::new(vec![2, 3, 2]).unwrap();
        let mut psi = State::basis_state(&reg, &[0, 1, 1]).unwrap();
        psi.apply(&gates::pauli_x(3), &[1]).unwrap();
        let expect = State::basis_state(&reg, &[0, 2, 1]).unwrap();
        assert!((State::fidelity(&psi, &expect).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn apply_respects_site_order_in_gate_signature() {
        // SUM with control listed second: |x, y> with sites [1, 0] means
        // y controls and x receives.
        let reg = Register::new(vec![3, 3]).unwrap();
        let mut psi = State::basis_state(&reg, &[1, 2]).unwrap();
        psi.apply(&gates::sum_gate(3), &[1, 0]).unwrap();
        // control = site 1 digit (2), target = site 0 digit: 1 + 2 = 0 mod 3.
        let expect = State::basis_state(&reg, &[0, 2]).unwrap();
        assert!((State::fidelity(&psi, &expect).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn measurement_is_seed_deterministic_and_distributed() {
        let reg = Register::new(vec![3]).unwrap();
        let mut psi = State::basis_state(&reg, &[0]).unwrap();
        psi.apply(&gates::hadamard(3), &[0]).unwrap();
        assert_eq!(psi.measure_all(42), psi.measure_all(42));

        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut counts = [0usize; 3];
        for _ in 0..3000 {
            counts[psi.sample_with(&mut rng)[0]] += 1;
        }
        for c in counts {
            // Each outcome has probability 1/3; a 5-sigma band around 1000.
            assert!((c as f64 - 1000.0).abs() < 5.0 * (3000.0f64 / 3.0 * 2.0 / 3.0).sqrt());
        }
    }

    #[test]
    fn fidelity_and_phase_comparison() {
        let reg = Register::new(vec![3]).unwrap();
        let a = State::basis_state(&reg, &[1]).unwrap();
        let mut b = a.clone();
        // Multiply by a global phase through a diagonal gate.
        let phase_gate = gates::pauli_z(3);
        b.apply(&phase_gate, &[0]).unwrap();
        // Z|1> = omega|1>, same ray.
        assert!((State::fidelity(&a, &b).unwrap() - 1.0).abs() < 1e-12);
        assert!(a.equal_up_to_global_phase(&b, 1e-12));

        let c = State::basis_state(&reg, &[2]).unwrap();
        assert!(State::fidelity(&a, &c).unwrap() < 1e-12);
        assert!(!a.equal_up_to_global_phase(&c, 0.5));
    }

    #[test]
    fn from_amplitudes_checks_length_and_norm() {
        let reg = Register::new(vec![2, 2]).unwrap();
        assert!(State::from_amplitudes(&reg, vec![ONE; 3]).is_err());
        assert!(State::from_amplitudes(&reg, vec![ONE; 4]).is_err()); // norm 2
        let half = C64::new(0.5, 0.0);
        assert!(State::from_amplitudes(&reg, vec![half; 4]).is_ok());
    }

    #[test]
    fn density_fidelity_known_values() {
        let reg = Register::new(vec![2]).unwrap();
        let zero = State::basis_state(&reg, &[0]).unwrap().density_matrix();
        let one = State::basis_state(&reg, &[1]).unwrap().density_matrix();
        assert!((fidelity(&zero, &zero).unwrap() - 1.0).abs() < 1e-12);
        assert!(fidelity(&zero, &one).unwrap().abs() < 1e-12);

        // Maximally mixed vs pure |0><0|: overlap (1/2) over sqrt(1/2)*1.
        let mixed = CMat::identity(2).scale(C64::new(0.5, 0.0));
        let expect = std::f64::consts::FRAC_1_SQRT_2;
        assert!((fidelity(&mixed, &zero).unwrap() - expect).abs() < 1e-12);

        assert!(fidelity(&zero, &CMat::identity(3)).is_err());
        assert!(fidelity(&CMat::zeros(2, 2), &zero).is_err());
    }
}
