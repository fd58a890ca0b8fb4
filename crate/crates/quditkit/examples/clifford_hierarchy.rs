//! Membership testing in the third level of the Clifford hierarchy.
//!
//! A gate U sits in level 3 when conjugating any displacement operator by U
//! lands in the Clifford group, equivalently when U D U^dag maps every
//! displacement to some displacement up to phase under a further
//! conjugation. The diagonal pi/8-style gates are the qudit analogue of the
//! qubit T gate and pass the check for every valid parameter choice; a
//! slightly wrong diagonal fails it.

use quditkit::gates::{self, Pi8Params};
use quditkit::prelude::*;

fn main() -> Result<()> {
    for d in [3usize, 5, 7] {
        let params = Pi8Params::new(d, 1, (d as i64) - 1, 0)?;
        let gate = gates::pi8_gate(params);
        let ok = gates::clifford_hierarchy_check(&gate, d)?;
        println!("d = {d}: pi/8 gate with (z'=1, gamma'={}, eps'=0) in level 3: {ok}", d - 1);
    }

    // Paulis are in level 2, hence also level 3.
    let ok = gates::clifford_hierarchy_check(&gates::pauli_z(5), 5)?;
    println!("pauli_z(5) passes: {ok}");

    // Not every diagonal of unit phases qualifies. This one has exponents
    // (0,1,0,0,0) over the 10th root of unity and sits outside level 3.
    let root = quditkit::math::phase(2.0 * std::f64::consts::PI / 10.0);
    let entries: Vec<_> = [0, 1, 0, 0, 0]
        .iter()
        .map(|&e| root.powi(e))
        .collect();
    let odd_one_out = Gate::new(vec![5], CMat::diag(&entries))?;
    let ok = gates::clifford_hierarchy_check(&odd_one_out, 5)?;
    println!("diag with exponents (0,1,0,0,0) at d=5 passes: {ok}");
    Ok(())
}
