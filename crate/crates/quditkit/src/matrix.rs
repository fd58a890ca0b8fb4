//! Dense complex matrices and the eigensolvers the synthesis layer needs.
//!
//! Everything here is sized for gate work: matrices are `d^k x d^k` for small
//! `k`, so a straightforward row-major `Vec<Complex64>` with O(n^3) kernels is
//! the right tool. No BLAS, no sparsity, no cleverness.
//!
//! The two nontrivial routines are [`hermitian_eig`], a cyclic Jacobi solver
//! for complex Hermitian matrices, and [`unitary_eig`] built on top of it.
//! Jacobi is slower than Householder tridiagonalization but it is compact,
//! numerically benign (every update is a single unitary plane rotation), and
//! its eigenvectors come out orthogonal to machine precision, which is what
//! exact gate synthesis cares about.

use crate::math::{phase, C64, ONE, ZERO};
use rand::Rng;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = CMat::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = CMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Build from nested rows. Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = CMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows in CMat::from_rows");
            for (j, &e) in row.iter().enumerate() {
                m[(i, j)] = e;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: C64) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn frob_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in max_abs_diff"
        );
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &CMat, tol: f64) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.max_abs_diff(other) <= tol
    }

    /// Entrywise check of `A A^dag = I`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let prod = self * &self.dagger();
        prod.max_abs_diff(&CMat::identity(self.rows)) <= tol
    }

    /// Kronecker product, `self` on the left (most significant).
    pub fn kron(&self, other: &CMat) -> CMat {
        let mut out = CMat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Integer matrix power by binary exponentiation.
    pub fn pow(&self, mut e: u64) -> CMat {
        assert!(self.is_square(), "power of non-square matrix");
        let mut result = CMat::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    /// Determinant by LU factorization with partial pivoting.
    pub fn det(&self) -> C64 {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = ONE;
        for k in 0..n {
            // Pivot on the largest remaining entry in column k.
            let (mut piv, mut piv_abs) = (k, a[(k, k)].norm());
            for i in k + 1..n {
                let v = a[(i, k)].norm();
                if v > piv_abs {
                    piv = i;
                    piv_abs = v;
                }
            }
            if piv_abs == 0.0 {
                return ZERO;
            }
            if piv != k {
                for j in 0..n {
                    a.data.swap(k * n + j, piv * n + j);
                }
                det = -det;
            }
            let akk = a[(k, k)];
            det *= akk;
            for i in k + 1..n {
                let factor = a[(i, k)] / akk;
                for j in k..n {
                    let sub = factor * a[(k, j)];
                    a[(i, j)] -= sub;
                }
            }
        }
        det
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "({:+.4}{:+.4}i) ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Display for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Global-phase-insensitive comparison: for unitaries `|tr(A^dag B)| = n`
/// exactly when `B = e^{i phi} A`, so the normalized overlap is a phase-free
/// similarity score in `[0, 1]`.
pub fn equal_up_to_global_phase(a: &CMat, b: &CMat, tol: f64) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() || !a.is_square() {
        return false;
    }
    let overlap = (&a.dagger() * b).trace().norm() / a.rows() as f64;
    overlap >= 1.0 - tol
}

/// Spectral norm `max_x |Mx| / |x|`, computed as the square root of the
/// largest eigenvalue of `M^dag M`.
pub fn operator_norm(m: &CMat) -> f64 {
    let gram = &m.dagger() * m;
    let (vals, _) = hermitian_eig(&gram).expect("Gram matrix eigensolve failed");
    vals.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Haar-random unitary: complex Gaussian matrix orthonormalized by modified
/// Gram-Schmidt (this is QR with a positive-real-diagonal R, which makes the
/// Q factor Haar distributed).
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    let mut cols: Vec<Vec<C64>> = (0..n)
        .map(|_| (0..n).map(|_| gaussian(rng)).collect())
        .collect();
    for j in 0..n {
        for k in 0..j {
            let proj: C64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..n {
                let sub = proj * cols[k][i];
                cols[j][i] -= sub;
            }
        }
        let norm = cols[j].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    CMat::from_fn(n, n, |i, j| cols[j][i])
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    // Box-Muller; the radial factor is shared so the result is isotropic.
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let t = 2.0 * std::f64::consts::PI * u2;
    C64::new(r * t.cos(), r * t.sin())
}

// ---------------------------------------------------------------------------
// Eigensolvers
// ---------------------------------------------------------------------------

/// Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi.
///
/// Returns `(values, vectors)` with values ascending and the k-th column of
/// `vectors` the eigenvector for `values[k]`. Only the Hermitian part of the
/// input is consulted (diagonals are read as their real part).
pub fn hermitian_eig(a: &CMat) -> crate::error::Result<(Vec<f64>, CMat)> {
    assert!(a.is_square(), "eigensolve of non-square matrix");
    let n = a.rows();
    let mut w = a.clone();
    let mut v = CMat::identity(n);
    if n <= 1 {
        let vals = if n == 1 { vec![w[(0, 0)].re] } else { vec![] };
        return Ok((vals, v));
    }

    let scale = a.frob_norm().max(1.0);
    let target = (1e-13 * scale).powi(2);
    let mut converged = false;
    for _sweep in 0..100 {
        let off: f64 = off_diag_sqr(&w);
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = w[(p, q)];
                let abs = apq.norm();
                if abs <= 1e-300 {
                    continue;
                }
                // Strip the phase of the off-diagonal entry, then apply the
                // classic real rotation with the stable tangent formula.
                let f = apq / abs;
                let app = w[(p, p)].re;
                let aqq = w[(q, q)].re;
                let tau = (aqq - app) / (2.0 * abs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Plane rotation J: J[p][p]=c, J[p][q]=s, J[q][p]=-s f*, J[q][q]=c f*.
                let fc = f.conj();
                // W <- W J  (columns p, q)
                for i in 0..n {
                    let wip = w[(i, p)];
                    let wiq = w[(i, q)];
                    w[(i, p)] = c * wip - s * fc * wiq;
                    w[(i, q)] = s * wip + c * fc * wiq;
                }
                // W <- J^dag W  (rows p, q)
                for i in 0..n {
                    let wpi = w[(p, i)];
                    let wqi = w[(q, i)];
                    w[(p, i)] = c * wpi - s * f * wqi;
                    w[(q, i)] = s * wpi + c * f * wqi;
                }
                // V <- V J
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = c * vip - s * fc * viq;
                    v[(i, q)] = s * vip + c * fc * viq;
                }
            }
        }
    }
    if !converged && off_diag_sqr(&w) > target {
        return Err(crate::error::Error::numeric(
            "Jacobi eigensolver did not converge",
        ));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[(i, i)].re.total_cmp(&w[(j, j)].re));
    let vals: Vec<f64> = order.iter().map(|&i| w[(i, i)].re).collect();
    let vecs = CMat::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((vals, vecs))
}

fn off_diag_sqr(w: &CMat) -> f64 {
    let n = w.rows();
    let mut off = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                off += w[(p, q)].norm_sqr();
            }
        }
    }
    off
}

/// Eigendecomposition of a unitary matrix.
///
/// Returns `(phases, vectors)` with `U = V diag(e^{i phases}) V^dag`, phases
/// in `(-pi, pi]` sorted ascending, and `V` unitary.
///
/// Strategy: split `U = A + iB` into commuting Hermitian parts
/// `A = (U + U^dag)/2`, `B = (U - U^dag)/(2i)`, diagonalize `A`, then break
/// any `A`-degeneracy by rediagonalizing `B` inside each eigenspace. The
/// phase of each eigenvalue is recovered from the pair of real expectations
/// `(cos, sin) = (v^dag A v, v^dag B v)`.
pub fn unitary_eig(u: &CMat) -> crate::error::Result<(Vec<f64>, CMat)> {
    assert!(u.is_square(), "eigensolve of non-square matrix");
    let n = u.rows();
    let ud = u.dagger();
    let a = (u + &ud).scale(C64::new(0.5, 0.0));
    let b = (u - &ud).scale(C64::new(0.0, -0.5));

    let (avals, mut v) = hermitian_eig(&a)?;

    // Group eigenvalues of A that coincide numerically. Within such a group V
    // is only determined up to a unitary mix, so rotate the group columns to
    // also diagonalize B there.
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (avals[end] - avals[end - 1]).abs() < 1e-8 {
            end += 1;
        }
        let g = end - start;
        if g > 1 {
            let bg = CMat::from_fn(g, g, |r, c| {
                let mut sum = ZERO;
                for i in 0..n {
                    for j in 0..n {
                        sum += v[(i, start + r)].conj() * b[(i, j)] * v[(j, start + c)];
                    }
                }
                sum
            });
            let (_, wg) = hermitian_eig(&bg)?;
            let rotated = CMat::from_fn(n, g, |i, c| {
                (0..g).map(|r| v[(i, start + r)] * wg[(r, c)]).sum()
            });
            for i in 0..n {
                for c in 0..g {
                    v[(i, start + c)] = rotated[(i, c)];
                }
            }
        }
        start = end;
    }

    // Phase of each eigenvalue from the two real quadrature expectations.
    let mut phases = Vec::with_capacity(n);
    for k in 0..n {
        let col: Vec<C64> = (0..n).map(|i| v[(i, k)]).collect();
        let cos_part = quad_form(&a, &col);
        let sin_part = quad_form(&b, &col);
        phases.push(sin_part.atan2(cos_part));
    }

    // Deterministic ascending order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| phases[i].total_cmp(&phases[j]));
    let sorted_phases: Vec<f64> = order.iter().map(|&i| phases[i]).collect();
    let sorted_v = CMat::from_fn(n, n, |i, j| v[(i, order[j])]);

    // A non-normal input would sail through the algebra above and come out
    // wrong; reject it by checking the reconstruction.
    let diag = CMat::diag(&sorted_phases.iter().map(|&p| phase(p)).collect::<Vec<_>>());
    let rebuilt = &(&sorted_v * &diag) * &sorted_v.dagger();
    if rebuilt.max_abs_diff(u) > 1e-8 {
        return Err(crate::error::Error::numeric(
            "unitary eigendecomposition residual too large (input not unitary?)",
        ));
    }
    Ok((sorted_phases, sorted_v))
}

fn quad_form(m: &CMat, x: &[C64]) -> f64 {
    let n = m.rows();
    let mut sum = ZERO;
    for i in 0..n {
        for j in 0..n {
            sum += x[i].conj() * m[(i, j)] * x[j];
        }
    }
    sum.re
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{omega, I};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_is_multiplicative_unit() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = random_unitary(4, &mut rng);
        let id = CMat::identity(4);
        assert!((&u * &id).approx_eq(&u, 0.0));
        assert!((&id * &u).approx_eq(&u, 0.0));
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in [1, 2, 3, 5, 9] {
            let u = random_unitary(n, &mut rng);
            assert!(u.is_unitary(1e-12), "n = {n}");
        }
    }

    #[test]
    fn kron_of_identities() {
        let a = CMat::identity(2);
        let b = CMat::identity(3);
        assert!(a.kron(&b).approx_eq(&CMat::identity(6), 0.0));
    }

    #[test]
    fn det_of_known_matrices() {
        let m = CMat::from_rows(&[
            vec![C64::new(1.0, 0.0), C64::new(2.0, 0.0)],
            vec![C64::new(3.0, 0.0), C64::new(4.0, 0.0)],
        ]);
        assert!((m.det() - C64::new(-2.0, 0.0)).norm() < 1e-12);

        // det of a unitary lies on the unit circle.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_unitary(5, &mut rng);
        assert!((u.det().norm() - 1.0).abs() < 1e-12);

        // det is multiplicative.
        let v = random_unitary(5, &mut rng);
        assert!(((&u * &v).det() - u.det() * v.det()).norm() < 1e-10);
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let u = random_unitary(3, &mut rng);
        let mut manual = CMat::identity(3);
        for _ in 0..13 {
            manual = &manual * &u;
        }
        assert!(u.pow(13).approx_eq(&manual, 1e-10));
        assert!(u.pow(0).approx_eq(&CMat::identity(3), 0.0));
    }

    #[test]
    fn hermitian_eig_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let m = CMat::from_rows(&[vec![C64::new(2.0, 0.0), I], vec![-I, C64::new(2.0, 0.0)]]);
        let (vals, v) = hermitian_eig(&m).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!((vals[1] - 3.0).abs() < 1e-12);
        let rebuilt = &(&v * &CMat::diag(&[C64::new(vals[0], 0.0), C64::new(vals[1], 0.0)]))
            * &v.dagger();
        assert!(rebuilt.approx_eq(&m, 1e-12));
    }

    #[test]
    fn hermitian_eig_random_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [2, 3, 6, 9] {
            let g = random_unitary(n, &mut rng);
            let h = &g + &g.dagger(); // Hermitian by construction
            let (vals, v) = hermitian_eig(&h).unwrap();
            assert!(v.is_unitary(1e-12));
            let d = CMat::diag(&vals.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>());
            assert!((&(&v * &d) * &v.dagger()).approx_eq(&h, 1e-11), "n = {n}");
            assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn unitary_eig_diagonal_phases() {
        let w = omega(3);
        let u = CMat::diag(&[ONE, w, w * w]);
        let (phases, _) = unitary_eig(&u).unwrap();
        let expected = [-2.0 * std::f64::consts::PI / 3.0, 0.0, 2.0 * std::f64::consts::PI / 3.0];
        for (p, e) in phases.iter().zip(expected) {
            assert!((p - e).abs() < 1e-12);
        }
    }

    #[test]
    fn unitary_eig_handles_conjugate_pairs() {
        // Real rotation: eigenvalues e^{+-i theta} share cos(theta), which
        // exercises the degeneracy-splitting path.
        let th: f64 = 0.7;
        let u = CMat::from_rows(&[
            vec![C64::new(th.cos(), 0.0), C64::new(-th.sin(), 0.0)],
            vec![C64::new(th.sin(), 0.0), C64::new(th.cos(), 0.0)],
        ]);
        let (phases, v) = unitary_eig(&u).unwrap();
        assert!((phases[0] + th).abs() < 1e-12);
        assert!((phases[1] - th).abs() < 1e-12);
        assert!(v.is_unitary(1e-12));
    }

    #[test]
    fn unitary_eig_random_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for n in [2, 3, 5, 9] {
            let u = random_unitary(n, &mut rng);
            let (phases, v) = unitary_eig(&u).unwrap();
            let d = CMat::diag(&phases.iter().map(|&p| phase(p)).collect::<Vec<_>>());
            assert!((&(&v * &d) * &v.dagger()).approx_eq(&u, 1e-10), "n = {n}");
            assert!(phases.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn operator_norm_of_scaled_identity() {
        let m = CMat::identity(4).scale(C64::new(0.0, 2.5));
        assert!((operator_norm(&m) - 2.5).abs() < 1e-12);
    }

    #[test]
    fn global_phase_comparison() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let u = random_unitary(4, &mut rng);
        let shifted = u.scale(phase(1.234));
        assert!(equal_up_to_global_phase(&u, &shifted, 1e-12));
        let other = random_unitary(4, &mut rng);
        assert!(!equal_up_to_global_phase(&u, &other, 1e-3));
    }
}
