//! Three one-query oracle problems on qudit registers.
//!
//! Parity: whether a cyclic-or-reflected permutation of d letters is even
//! or odd, read off a single Fourier-sandwiched query. Deutsch-Jozsa:
//! constant versus balanced for affine functions mod d, with the linear
//! coefficients recovered for free. Bernstein-Vazirani: the hidden string
//! of a dot-product oracle in one call, any d. All three beat the classical
//! query counts because the Fourier basis turns function structure into
//! relative phases.

use quditkit::algorithms::{
    bernstein_vazirani, deutsch_jozsa, AffineOracle, Parity, PermutationOracle,
};
use quditkit::prelude::*;

fn main() -> Result<()> {
    // All six qutrit permutations, classified in one query each.
    println!("qutrit permutation parity:");
    for perm in [
        vec![0, 1, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
        vec![0, 2, 1],
        vec![1, 0, 2],
        vec![2, 1, 0],
    ] {
        let oracle = PermutationOracle::new(perm.clone())?;
        let class = algorithms::parity(&oracle)?;
        let name = match class {
            Parity::Even => "even",
            Parity::Odd => "odd ",
        };
        println!("  {perm:?} -> {name}");
    }

    // Affine f(x, y) = 1 + 2x + y mod 3: balanced, coefficients recovered.
    let oracle = AffineOracle::new(3, vec![1, 2, 1])?;
    let outcome = deutsch_jozsa(&oracle)?;
    println!(
        "\nf = 1 + 2x + y mod 3: {:?} with coefficients {:?} in {} query",
        outcome.class, outcome.coefficients, outcome.oracle_calls
    );

    // Constant functions (all linear coefficients zero) leave the input
    // register on |0...0>.
    let constant = AffineOracle::new(3, vec![2, 0])?;
    let outcome = deutsch_jozsa(&constant)?;
    println!("f = 2: {:?}", outcome.class);

    // Hidden string over five levels, three digits: exact in one query, a
    // classical learner needs one query per digit.
    let g = vec![1, 4, 2];
    let outcome = bernstein_vazirani(5, &g)?;
    println!(
        "\nhidden g = {g:?} mod 5: recovered {:?} in {} query",
        outcome.recovered, outcome.oracle_calls
    );
    assert_eq!(outcome.recovered, g);
    Ok(())
}
