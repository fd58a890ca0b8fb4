//! Generalized Gell-Mann basis, Hamiltonian coefficient expansions, and the
//! penalty-weighted cost norm used to reason about two-local circuit
//! complexity.
//!
//! The basis elements keep their textbook un-normalized form (so the
//! matrices stay recognizable); coefficient extraction divides by the trace
//! norm on the fly. A Hamiltonian over `n` sites is expanded against all
//! tensor products of basis elements and identities, labelled by one basis
//! index per site, with the body count of a term read off as the number of
//! non-identity slots. The geodesic distance itself is not computed; this
//! module exposes the metric objects plus a formula evaluator for the
//! resolution/gate-count trade-off.

use crate::error::{Error, Result};
use crate::math::{C64, I, ONE, ZERO};
use crate::matrix::CMat;
use std::collections::BTreeMap;

/// Which of the three Gell-Mann families an element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// `e_jk + e_kj` for `j < k`.
    Symmetric,
    /// `i (e_jk - e_kj)` for `j < k`.
    Antisymmetric,
    /// `diag(1, ..., 1, -j, 0, ...)` with `j` ones.
    Diagonal,
}

/// One traceless Hermitian basis element of the `d x d` matrices.
///
/// Indices are 1-based to match the classical Gell-Mann labelling
/// (`j < k` select the off-diagonal pair; the diagonal family uses `j = k`).
/// Lifted to a register, the element's body support is wherever a label
/// places it, which is tracked by [`HamiltonianExpansion`] rather than here.
#[derive(Clone, Debug)]
pub struct BasisElement {
    pub kind: BasisKind,
    pub j: usize,
    pub k: usize,
    matrix: CMat,
    norm_sq: f64,
}

impl BasisElement {
    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    /// `tr(u^2)`: 2 for the off-diagonal families, `j (j + 1)` for the
    /// diagonal ones.
    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }
}

/// The `d^2 - 1` generalized Gell-Mann matrices, ordered as all symmetric
/// pairs (lexicographic), all antisymmetric pairs, then the `d - 1`
/// diagonal elements. The order is the contract for expansion labels: label
/// value `v >= 1` at a site means element `v - 1` of this list.
///
/// For `d = 2` the list is exactly the Pauli matrices
/// (`sigma_x`, `sigma_y`, `diag(1, -1)`).
pub fn gell_mann_basis(d: usize) -> Vec<BasisElement> {
    assert!(d >= 2, "site dimension must be at least 2");
    let mut out = Vec::with_capacity(d * d - 1);
    for j in 1..=d {
        for k in j + 1..=d {
            let m = CMat::from_fn(d, d, |r, c| {
                if (r, c) == (j - 1, k - 1) || (r, c) == (k - 1, j - 1) {
                    ONE
                } else {
                    ZERO
                }
            });
            out.push(BasisElement {
                kind: BasisKind::Symmetric,
                j,
                k,
                matrix: m,
                norm_sq: 2.0,
            });
        }
    }
    for j in 1..=d {
        for k in j + 1..=d {
            let m = CMat::from_fn(d, d, |r, c| {
                if (r, c) == (j - 1, k - 1) {
                    I
                } else if (r, c) == (k - 1, j - 1) {
                    -I
                } else {
                    ZERO
                }
            });
            out.push(BasisElement {
                kind: BasisKind::Antisymmetric,
                j,
                k,
                matrix: m,
                norm_sq: 2.0,
            });
        }
    }
    for j in 1..d {
        let m = CMat::from_fn(d, d, |r, c| {
            if r != c {
                ZERO
            } else if r < j {
                ONE
            } else if r == j {
                C64::new(-(j as f64), 0.0)
            } else {
                ZERO
            }
        });
        out.push(BasisElement {
            kind: BasisKind::Diagonal,
            j,
            k: j,
            matrix: m,
            norm_sq: (j * (j + 1)) as f64,
        });
    }
    out
}

/// A Hamiltonian written in the lifted Gell-Mann product basis.
///
/// Each label assigns one entry per site: 0 for identity, `v >= 1` for
/// element `v - 1` of [`gell_mann_basis`]. Coefficients are real (the input
/// is Hermitian); the identity-tensor component `tr(H) / d^n` is kept
/// separately since it is not an interaction term.
#[derive(Clone, Debug)]
pub struct HamiltonianExpansion {
    d: usize,
    n: usize,
    identity_coeff: f64,
    coeffs: BTreeMap<Vec<usize>, f64>,
}

impl HamiltonianExpansion {
    /// Reassemble an expansion from stored coefficients (the inverse of
    /// serialization). Labels must have one entry per site, each naming the
    /// identity (0) or a basis element index below `d^2`. Absent labels are
    /// implicitly zero.
    pub fn from_parts(
        d: usize,
        n: usize,
        identity_coeff: f64,
        coeffs: BTreeMap<Vec<usize>, f64>,
    ) -> Result<Self> {
        if d < 2 || n == 0 {
            return Err(Error::dimension("expansion needs d >= 2 and n >= 1"));
        }
        for (label, &h) in &coeffs {
            if label.len() != n {
                return Err(Error::dimension(format!(
                    "label {label:?} has {} entries, expected {n}",
                    label.len()
                )));
            }
            if label.iter().any(|&v| v >= d * d) {
                return Err(Error::dimension(format!(
                    "label {label:?} indexes beyond the {} basis elements of d = {d}",
                    d * d - 1
                )));
            }
            if !h.is_finite() {
                return Err(Error::numeric(format!("non-finite coefficient at {label:?}")));
            }
        }
        Ok(HamiltonianExpansion {
            d,
            n,
            identity_coeff,
            coeffs,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn num_sites(&self) -> usize {
        self.n
    }

    /// Coefficient of `identity / 1` (the trace part), zero for traceless
    /// input.
    pub fn identity_coeff(&self) -> f64 {
        self.identity_coeff
    }

    /// All interaction coefficients keyed by per-site label.
    pub fn coeffs(&self) -> &BTreeMap<Vec<usize>, f64> {
        &self.coeffs
    }

    /// Number of sites a label acts on non-trivially.
    pub fn body_count(label: &[usize]) -> usize {
        label.iter().filter(|&&v| v != 0).count()
    }

    /// Rebuild the dense matrix `sum_sigma h_sigma sigma + (tr part)`.
    pub fn reconstruct(&self) -> CMat {
        let basis = gell_mann_basis(self.d);
        let size = self.d.pow(self.n as u32);
        let mut acc = CMat::identity(size).scale(C64::new(self.identity_coeff, 0.0));
        for (label, &h) in &self.coeffs {
            if h == 0.0 {
                continue;
            }
            let term = lifted_product(self.d, label, &basis);
            acc = &acc + &term.scale(C64::new(h, 0.0));
        }
        acc
    }
}

/// Tensor product of the labelled basis elements with identity padding.
fn lifted_product(d: usize, label: &[usize], basis: &[BasisElement]) -> CMat {
    let mut acc = CMat::identity(1);
    for &v in label {
        let factor = if v == 0 {
            CMat::identity(d)
        } else {
            basis[v - 1].matrix.clone()
        };
        acc = acc.kron(&factor);
    }
    acc
}

/// Expand a Hermitian matrix of size `d^n` into the lifted product basis.
/// Coefficients come from trace inner products divided by each product's
/// trace norm, so `reconstruct` reproduces the input to machine precision.
/// The trace part is reported separately; non-Hermitian input is rejected.
pub fn expand(h: &CMat, d: usize) -> Result<HamiltonianExpansion> {
    if d < 2 {
        return Err(Error::dimension("site dimension must be at least 2"));
    }
    if !h.is_square() {
        return Err(Error::dimension(format!(
            "expected a square matrix, found {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    let size = h.rows();
    let mut n = 0usize;
    let mut grow = 1usize;
    while grow < size {
        grow *= d;
        n += 1;
    }
    if grow != size || n == 0 {
        return Err(Error::dimension(format!(
            "matrix size {size} is not d^n for d = {d} with n >= 1"
        )));
    }
    let mut herm_defect = 0f64;
    for i in 0..size {
        for j in 0..size {
            herm_defect = herm_defect.max((h[(i, j)] - h[(j, i)].conj()).norm());
        }
    }
    if herm_defect > 1e-9 {
        return Err(Error::numeric(format!(
            "input is not Hermitian (defect {herm_defect:.3e})"
        )));
    }

    let basis = gell_mann_basis(d);
    let trace: C64 = (0..size).map(|i| h[(i, i)]).sum();
    let identity_coeff = trace.re / size as f64;

    let num_labels = (d * d).pow(n as u32);
    let mut coeffs = BTreeMap::new();
    for flat in 1..num_labels {
        let mut label = vec![0usize; n];
        let mut rem = flat;
        for slot in label.iter_mut().rev() {
            *slot = rem % (d * d);
            rem /= d * d;
        }
        let term = lifted_product(d, &label, &basis);
        let mut ip = ZERO;
        for i in 0..size {
            for j in 0..size {
                // tr(sigma H) with sigma Hermitian.
                ip += term[(i, j)] * h[(j, i)];
            }
        }
        let mut norm_sq = 1f64;
        for &v in &label {
            norm_sq *= if v == 0 {
                d as f64
            } else {
                basis[v - 1].norm_sq
            };
        }
        coeffs.insert(label, ip.re / norm_sq);
    }
    Ok(HamiltonianExpansion {
        d,
        n,
        identity_coeff,
        coeffs,
    })
}

/// Penalty-weighted coefficient norm
/// `F = sqrt(sum_{<=2-body} h^2 + p^2 sum_{>=3-body} h^2)`.
/// The trace part is not an interaction and does not contribute. `p = 1`
/// collapses to the plain 2-norm; larger `p` charges many-body terms.
pub fn cost(expansion: &HamiltonianExpansion, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::numeric(format!(
            "penalty must be at least 1, got {p}"
        )));
    }
    let mut local = 0f64;
    let mut many = 0f64;
    for (label, &h) in &expansion.coeffs {
        if HamiltonianExpansion::body_count(label) >= 3 {
            many += h * h;
        } else {
            local += h * h;
        }
    }
    Ok((local + p * p * many).sqrt())
}

/// Zero every coefficient with three-or-more-body support, keeping the one-
/// and two-body part. Idempotent by construction.
pub fn project_local(expansion: &HamiltonianExpansion) -> HamiltonianExpansion {
    let mut out = expansion.clone();
    for (label, h) in out.coeffs.iter_mut() {
        if HamiltonianExpansion::body_count(label) >= 3 {
            *h = 0.0;
        }
    }
    out
}

/// The error-resolution trade-off for two-local synthesis along a geodesic.
#[derive(Clone, Copy, Debug)]
pub struct ResolutionBound {
    /// Per-interval approximation error `1 / (intervals d^2 n)`.
    pub epsilon: f64,
    /// Two-local gate-count scale `epsilon^{-2} = intervals^2 d^4 n^2`.
    pub gate_scale: f64,
}

/// Evaluate the resolution bound: cutting the path into `intervals` pieces
/// drives the per-piece error down linearly while the two-local gate count
/// grows with the square. This is a formula evaluator, not a synthesis; the
/// geodesic itself is never integrated here.
pub fn resolution_bound(intervals: u64, d: usize, n: usize) -> Result<ResolutionBound> {
    if intervals == 0 || d < 2 || n == 0 {
        return Err(Error::dimension(
            "resolution bound needs intervals >= 1, d >= 2, n >= 1",
        ));
    }
    let inv = intervals as f64 * (d * d) as f64 * n as f64;
    Ok(ResolutionBound {
        epsilon: 1.0 / inv,
        gate_scale: inv * inv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
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

    fn trace_ip(a: &CMat, b: &CMat) -> C64 {
        let mut acc = ZERO;
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                acc += a[(i, j)].conj() * b[(i, j)];
            }
        }
        acc
    }

    #[test]
    fn qubit_basis_is_pauli() {
        let basis = gell_mann_basis(2);
        assert_eq!(basis.len(), 3);
        let sx = CMat::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]);
        let sy = CMat::from_rows(&[vec![ZERO, I], vec![-I, ZERO]]);
        let sz = CMat::from_rows(&[vec![ONE, ZERO], vec![ZERO, -ONE]]);
        assert!(basis[0].matrix().max_abs_diff(&sx) < 1e-15);
        assert!(basis[1].matrix().max_abs_diff(&sy) < 1e-15);
        assert!(basis[2].matrix().max_abs_diff(&sz) < 1e-15);
    }

    #[test]
    fn basis_counts_and_structure() {
        for d in 2..=5 {
            let basis = gell_mann_basis(d);
            assert_eq!(basis.len(), d * d - 1);
            let pairs = d * (d - 1) / 2;
            assert_eq!(
                basis
                    .iter()
                    .filter(|b| b.kind == BasisKind::Symmetric)
                    .count(),
                pairs
            );
            assert_eq!(
                basis
                    .iter()
                    .filter(|b| b.kind == BasisKind::Antisymmetric)
                    .count(),
                pairs
            );
            assert_eq!(
                basis
                    .iter()
                    .filter(|b| b.kind == BasisKind::Diagonal)
                    .count(),
                d - 1
            );
            for b in &basis {
                let m = b.matrix();
                let tr: C64 = (0..d).map(|i| m[(i, i)]).sum();
                assert!(tr.norm() < 1e-15, "trace at d = {d}");
                for i in 0..d {
                    for j in 0..d {
                        assert!((m[(i, j)] - m[(j, i)].conj()).norm() < 1e-15);
                    }
                }
                let nsq = trace_ip(m, m);
                assert!((nsq.re - b.norm_sq()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn basis_is_trace_orthogonal() {
        let basis = gell_mann_basis(4);
        for (a, ea) in basis.iter().enumerate() {
            for (b, eb) in basis.iter().enumerate() {
                if a != b {
                    assert!(
                        trace_ip(ea.matrix(), eb.matrix()).norm() < 1e-12,
                        "elements {a} and {b} not orthogonal"
                    );
                }
            }
        }
    }

    #[test]
    fn expand_zero_and_identity() {
        let zero = CMat::zeros(9, 9);
        let e = expand(&zero, 3).unwrap();
        assert_eq!(e.identity_coeff(), 0.0);
        assert!(e.coeffs().values().all(|&h| h == 0.0));

        let e = expand(&CMat::identity(9), 3).unwrap();
        assert!((e.identity_coeff() - 1.0).abs() < 1e-12);
        assert!(e.coeffs().values().all(|&h| h.abs() < 1e-12));
    }

    #[test]
    fn expand_single_basis_product() {
        // sigma_x on site 0 of two qubits: exactly one unit coefficient.
        let basis = gell_mann_basis(2);
        let h = basis[0].matrix().kron(&CMat::identity(2));
        let e = expand(&h, 2).unwrap();
        for (label, &coeff) in e.coeffs() {
            let want = if label == &vec![1, 0] { 1.0 } else { 0.0 };
            assert!(
                (coeff - want).abs() < 1e-12,
                "label {label:?} coefficient {coeff}"
            );
        }
    }

    #[test]
    fn expand_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for (d, n) in [(2usize, 1usize), (2, 2), (3, 1), (3, 2)] {
            let size = d.pow(n as u32);
            let h = random_hermitian(size, &mut rng);
            let e = expand(&h, d).unwrap();
            assert_eq!(e.num_sites(), n);
            assert!(
                e.reconstruct().max_abs_diff(&h) < 1e-9,
                "round trip at d = {d}, n = {n}"
            );
        }
    }

    #[test]
    fn expand_rejects_bad_input() {
        let mut m = CMat::zeros(3, 3);
        m[(0, 1)] = ONE;
        assert!(expand(&m, 3).is_err());
        assert!(expand(&CMat::zeros(5, 5), 3).is_err());
        assert!(expand(&CMat::zeros(2, 3), 2).is_err());
    }

    #[test]
    fn cost_penalty_behavior() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let zero = expand(&CMat::zeros(9, 9), 3).unwrap();
        assert_eq!(cost(&zero, 3.0).unwrap(), 0.0);

        // A two-site expansion has no >= 3-body labels, so the cost cannot
        // depend on the penalty.
        let h = random_hermitian(9, &mut rng);
        let e = expand(&h, 3).unwrap();
        let f1 = cost(&e, 1.0).unwrap();
        let f9 = cost(&e, 9.0).unwrap();
        assert!((f1 - f9).abs() < 1e-12);
        assert!(f1 >= 0.0);

        // A single three-body product scales linearly with the penalty.
        let basis = gell_mann_basis(2);
        let x = basis[0].matrix();
        let h3 = x.kron(&x.kron(x)).scale(C64::new(0.25, 0.0));
        let e3 = expand(&h3, 2).unwrap();
        let f = cost(&e3, 10.0).unwrap();
        assert!((f - 10.0 * 0.25).abs() < 1e-10);

        assert!(cost(&e, 0.5).is_err());
    }

    #[test]
    fn project_local_zeroes_many_body() {
        let basis = gell_mann_basis(2);
        let x = basis[0].matrix();
        let z = basis[2].matrix();
        // One 3-body term plus one 1-body term.
        let h = &x.kron(&x.kron(x)) + &z.kron(&CMat::identity(4)).scale(C64::new(0.5, 0.0));
        let e = expand(&h, 2).unwrap();
        let p = project_local(&e);
        for (label, &coeff) in p.coeffs() {
            if HamiltonianExpansion::body_count(label) >= 3 {
                assert_eq!(coeff, 0.0);
            } else {
                assert!((coeff - e.coeffs()[label]).abs() < 1e-12);
            }
        }
        // Idempotent, and the removed part accounts for the whole difference.
        let pp = project_local(&p);
        assert!(pp.reconstruct().max_abs_diff(&p.reconstruct()) < 1e-12);
        let removed = &e.reconstruct() - &p.reconstruct();
        assert!(removed.max_abs_diff(&x.kron(&x.kron(x))) < 1e-9);
    }

    #[test]
    fn commutators_stay_within_three_body() {
        // A (site 0) and two overlapping two-body terms; nested commutators
        // of Hermitian parts must stay supported on <= 3 sites and do reach
        // a genuine 3-body term.
        let basis = gell_mann_basis(3);
        let id = CMat::identity(3);
        let s = basis[0].matrix(); // symmetric (1,2)
        let a = basis[3].matrix(); // antisymmetric (1,2)
        let h1 = a.kron(&id.kron(&id));
        let h2 = s.kron(&a.kron(&id));
        let h3 = id.kron(&s.kron(s));

        let comm = |x: &CMat, y: &CMat| {
            let m = &(x * y) - &(y * x);
            m.scale(I) // i [x, y] is Hermitian again
        };
        let inner = comm(&h2, &h3);
        let nested = comm(&h1, &inner);
        for m in [&inner, &nested] {
            let e = expand(m, 3).unwrap();
            let three_body: f64 = e
                .coeffs()
                .iter()
                .filter(|(l, _)| HamiltonianExpansion::body_count(l) == 3)
                .map(|(_, &h)| h.abs())
                .sum();
            assert!(
                three_body > 1e-6,
                "expected a surviving 3-body coefficient"
            );
        }
    }

    #[test]
    fn resolution_bound_formula() {
        let b = resolution_bound(4, 3, 2).unwrap();
        assert!((b.epsilon - 1.0 / 72.0).abs() < 1e-15);
        assert!((b.gate_scale - 72.0 * 72.0).abs() < 1e-9);
        assert!((b.gate_scale * b.epsilon * b.epsilon - 1.0).abs() < 1e-12);
        assert!(resolution_bound(0, 3, 2).is_err());
    }
}
