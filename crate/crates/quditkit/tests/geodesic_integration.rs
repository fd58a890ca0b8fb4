//! Basis completeness, norm axioms, and locality-closure properties of the
//! operator-basis layer on randomized batches.

use quditkit::geodesic::{cost, expand, gell_mann_basis, project_local, HamiltonianExpansion};
use quditkit::math::{C64, I};
use quditkit::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_hermitian(size: usize, rng: &mut ChaCha8Rng) -> CMat {
    let raw = CMat::from_fn(size, size, |_, _| {
        C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    });
    let mut h = CMat::zeros(size, size);
    for i in 0..size {
        for j in 0..size {
            h[(i, j)] = (raw[(i, j)] + raw[(j, i)].conj()).scale(0.5);
        }
    }
    h
}

#[test]
fn expansion_is_complete_for_small_registers() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for d in [2usize, 3] {
        for n in [1usize, 2] {
            for _ in 0..25 {
                let h = random_hermitian(d.pow(n as u32), &mut rng);
                let e = expand(&h, d).unwrap();
                assert!(
                    e.reconstruct().max_abs_diff(&h) < 1e-9,
                    "round trip failed at d = {d}, n = {n}"
                );
            }
        }
    }
}

#[test]
fn expansion_coefficients_are_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let a = random_hermitian(9, &mut rng);
    let b = random_hermitian(9, &mut rng);
    let sum = &a + &b;
    let ea = expand(&a, 3).unwrap();
    let eb = expand(&b, 3).unwrap();
    let es = expand(&sum, 3).unwrap();
    for (label, &hs) in es.coeffs() {
        let ha = ea.coeffs()[label];
        let hb = eb.coeffs()[label];
        assert!((hs - (ha + hb)).abs() < 1e-10, "nonlinear at {label:?}");
    }
}

#[test]
fn cost_satisfies_norm_axioms() {
    // Triangle inequality and absolute homogeneity over random pairs, at a
    // size with genuine three-body content so the penalty matters.
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for trial in 0..100 {
        let a = random_hermitian(8, &mut rng);
        let b = random_hermitian(8, &mut rng);
        let p = 1.0 + 9.0 * rng.gen::<f64>();

        let fa = cost(&expand(&a, 2).unwrap(), p).unwrap();
        let fb = cost(&expand(&b, 2).unwrap(), p).unwrap();
        let fsum = cost(&expand(&(&a + &b), 2).unwrap(), p).unwrap();
        assert!(
            fsum <= fa + fb + 1e-9,
            "triangle violated on trial {trial}: {fsum} > {fa} + {fb}"
        );

        let c: f64 = 4.0 * (rng.gen::<f64>() - 0.5);
        let scaled = a.scale(C64::new(c, 0.0));
        let fscaled = cost(&expand(&scaled, 2).unwrap(), p).unwrap();
        assert!(
            (fscaled - c.abs() * fa).abs() < 1e-9,
            "homogeneity violated on trial {trial}"
        );

        // Separating: zero cost only for the trace part.
        if fa < 1e-12 {
            let e = expand(&a, 2).unwrap();
            assert!(e.coeffs().values().all(|h| h.abs() < 1e-10));
        }
    }
}

#[test]
fn cost_is_monotone_in_the_penalty() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let h = random_hermitian(8, &mut rng);
    let e = expand(&h, 2).unwrap();
    let mut last = cost(&e, 1.0).unwrap();
    for p in [2.0, 4.0, 8.0, 16.0] {
        let f = cost(&e, p).unwrap();
        assert!(f >= last - 1e-12);
        last = f;
    }
}

#[test]
fn commutators_of_local_terms_stay_three_body() {
    // i[A, B] for random 1- and 2-body A, B on three qutrits never grows
    // support past three sites (here: past the union of supports).
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let basis = gell_mann_basis(3);
    let id = CMat::identity(3);
    for _ in 0..20 {
        let pick = |rng: &mut ChaCha8Rng| basis[rng.gen_range(0..basis.len())].matrix().clone();
        // A acts on sites {0,1}, B on sites {1,2}.
        let a = pick(&mut rng).kron(&pick(&mut rng)).kron(&id);
        let b = id.kron(&pick(&mut rng)).kron(&pick(&mut rng));
        let comm = (&(&a * &b) - &(&b * &a)).scale(I);
        let e = expand(&comm, 3).unwrap();
        for (label, &h) in e.coeffs() {
            if HamiltonianExpansion::body_count(label) > 3 {
                panic!("commutator grew beyond three-body support");
            }
            // Site support must stay within {0,1,2}: trivial here since
            // n = 3, but any term must vanish when outside the union.
            let _ = h;
        }
        assert!((e.identity_coeff()).abs() < 1e-10, "commutators are traceless");
    }
}

#[test]
fn project_local_never_increases_cost() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..25 {
        let h = random_hermitian(27, &mut rng);
        let e = expand(&h, 3).unwrap();
        let local = project_local(&e);
        for p in [1.0, 5.0] {
            assert!(cost(&local, p).unwrap() <= cost(&e, p).unwrap() + 1e-12);
        }
        // Projection is idempotent and keeps 1- and 2-body terms intact.
        let twice = project_local(&local);
        for (label, &h) in local.coeffs() {
            assert_eq!(twice.coeffs()[label], h);
            if HamiltonianExpansion::body_count(label) <= 2 {
                assert_eq!(h, e.coeffs()[label]);
            } else {
                assert_eq!(h, 0.0);
            }
        }
    }
}

#[test]
fn lifted_basis_products_are_orthogonal() {
    // Distinct labels give trace-orthogonal lifted products; this is what
    // makes the coefficient extraction well defined. Spot-check at (3, 2)
    // by expanding single products.
    let basis = gell_mann_basis(3);
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    for _ in 0..10 {
        let i = rng.gen_range(0..basis.len());
        let j = rng.gen_range(0..basis.len());
        let prod = basis[i].matrix().kron(basis[j].matrix());
        let e = expand(&prod, 3).unwrap();
        for (label, &h) in e.coeffs() {
            let expected = if label == &vec![i + 1, j + 1] { 1.0 } else { 0.0 };
            assert!(
                (h - expected).abs() < 1e-10,
                "label {label:?} got {h}, expected {expected}"
            );
        }
    }
}
