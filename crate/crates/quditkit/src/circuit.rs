//! Circuits: an ordered gate sequence over a fixed register.

use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::matrix::CMat;
use crate::register::Register;
use crate::state::State;

/// One scheduled gate: the unitary plus the sites it acts on.
#[derive(Clone, Debug)]
pub struct Step {
    pub gate: Gate,
    pub sites: Vec<usize>,
}

/// A gate program. Steps are validated against the register as they are
/// pushed, so a stored circuit always runs.
#[derive(Clone, Debug)]
pub struct Circuit {
    register: Register,
    steps: Vec<Step>,
}

impl Circuit {
    pub fn new(register: Register) -> Self {
        Circuit {
            register,
            steps: Vec::new(),
        }
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Append a gate acting on `sites` (most significant first, distinct,
    /// dimensions matching the gate signature).
    pub fn push(&mut self, gate: Gate, sites: Vec<usize>) -> Result<&mut Self> {
        let n = self.register.num_sites();
        if sites.len() != gate.arity() {
            return Err(Error::dimension(format!(
                "gate touches {} sites but {} were scheduled",
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
                return Err(Error::dimension(format!("site {site} scheduled twice")));
            }
            seen[site] = true;
            if self.register.dim(site) != want {
                return Err(Error::dimension(format!(
                    "gate expects dimension {want} at site {site}, register has {}",
                    self.register.dim(site)
                )));
            }
        }
        self.steps.push(Step { gate, sites });
        Ok(self)
    }

    /// Run every step, mutating `state` in place.
    pub fn apply_to(&self, state: &mut State) -> Result<()> {
        if state.register() != &self.register {
            return Err(Error::dimension(
                "state register does not match circuit register",
            ));
        }
        for step in &self.steps {
            state.apply(&step.gate, &step.sites)?;
        }
        Ok(())
    }

    /// Run the circuit on the all-zeros basis state.
    pub fn run(&self) -> Result<State> {
        let zeros = vec![0usize; self.register.num_sites()];
        let mut state = State::basis_state(&self.register, &zeros)?;
        self.apply_to(&mut state)?;
        Ok(state)
    }

    /// Dense unitary of the whole circuit, built column by column from basis
    /// states. Exponential in register size; meant for verification and small
    /// registers, not simulation.
    pub fn unitary(&self) -> Result<CMat> {
        let size = self.register.size();
        let mut u = CMat::zeros(size, size);
        for col in 0..size {
            let digits = self.register.digits_of(col);
            let mut state = State::basis_state(&self.register, &digits)?;
            self.apply_to(&mut state)?;
            for (row, amp) in state.amplitudes().iter().enumerate() {
                u[(row, col)] = *amp;
            }
        }
        Ok(u)
    }
}
