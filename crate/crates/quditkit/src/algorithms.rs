//! Qudit algorithm set: permutation parity, Deutsch-Jozsa,
//! Bernstein-Vazirani, the quantum Fourier transform, phase estimation,
//! Grover search, and the statistical phase fit used with photonic
//! estimation data.
//!
//! Everything here runs on the state-vector simulator with oracles compiled
//! exactly into permutation or diagonal unitaries, so deterministic
//! statements ("the readout is a basis state") are checked numerically at
//! tolerance rather than assumed.

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::gates;
use crate::math::{phase, C64, ONE, ZERO};
use crate::matrix::CMat;
use crate::register::Register;
use crate::state::State;
use std::f64::consts::TAU;
use std::sync::OnceLock;

/// Tolerance for claiming a readout distribution is a deterministic basis
/// state.
const DETERMINISTIC_TOL: f64 = 1e-10;

// ---------------------------------------------------------------------------
// Permutation parity on a single qudit
// ---------------------------------------------------------------------------

/// The two answer classes of the parity algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A permutation oracle `|x> -> |f(x)>` on one qudit, restricted to the two
/// families the single-qudit algorithm can tell apart: cyclic shifts
/// `x -> x + c` (even) and reflections `x -> c - x` (odd). For `d = 3` these
/// six maps are the whole permutation group and the class labels coincide
/// with the permutation sign; for larger `d` they are a proper subgroup and
/// the constructor rejects anything outside it.
#[derive(Clone, Debug)]
pub struct PermutationOracle {
    d: usize,
    mapping: Vec<usize>,
    parity: Parity,
}

impl PermutationOracle {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let d = mapping.len();
        if d < 3 {
            return Err(Error::dimension(
                "parity oracles need d >= 3; the two classes coincide below that",
            ));
        }
        let mut seen = vec![false; d];
        for &v in &mapping {
            if v >= d || seen[v] {
                return Err(Error::dimension(
                    "oracle mapping is not a bijection on 0..d",
                ));
            }
            seen[v] = true;
        }
        let is_shift = (0..d).all(|x| mapping[x] == (x + mapping[0]) % d);
        let is_reflection = (0..d).all(|x| mapping[x] == (mapping[0] + d - x) % d);
        let parity = if is_shift {
            Parity::Even
        } else if is_reflection {
            Parity::Odd
        } else {
            return Err(Error::dimension(
                "mapping is neither a cyclic shift nor a reflection; \
                 the single-qudit algorithm cannot classify it",
            ));
        };
        Ok(PermutationOracle { d, mapping, parity })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    /// Class label derived at construction (shift = even, reflection = odd).
    pub fn parity(&self) -> Parity {
        self.parity
    }

    fn gate(&self) -> Gate {
        let d = self.d;
        let m = CMat::from_fn(d, d, |i, j| {
            if i == self.mapping[j] {
                ONE
            } else {
                ZERO
            }
        });
        Gate::new(vec![d], m).expect("permutation matrices are unitary")
    }
}

/// Classify a permutation with one oracle call on a single qudit.
///
/// The qudit is prepared in a Fourier-graded superposition, the oracle is
/// applied once, and the inverse transform turns the surviving grading into
/// a deterministic basis readout. For `d = 3` the transform is the qutrit
/// matrix with rows ordered `{|1>, |0>, |-1>}` mapped to indices `{0, 1, 2}`,
/// so even permutations read out index 0 and odd ones index 2; for larger
/// `d` the standard Fourier gate is used and the classes land on indices 1
/// and `d - 1`.
pub fn parity(oracle: &PermutationOracle) -> Result<Parity> {
    let d = oracle.d;
    let (ft, start, even_idx, odd_idx) = if d == 3 {
        let s = C64::new(1.0 / 3f64.sqrt(), 0.0);
        let w = crate::math::omega(3);
        let rows = [
            [w, ONE, w.conj()],
            [ONE, ONE, ONE],
            [w.conj(), ONE, w],
        ];
        let m = CMat::from_fn(3, 3, |i, j| rows[i][j] * s);
        (Gate::new(vec![3], m)?, 0usize, 0usize, 2usize)
    } else {
        (gates::hadamard(d), 1, 1, d - 1)
    };

    let reg = Register::new(vec![d])?;
    let mut st = State::basis_state(&reg, &[start])?;
    st.apply(&ft, &[0])?;
    st.apply(&oracle.gate(), &[0])?;
    st.apply(&ft.dagger(), &[0])?;

    let probs = st.probabilities();
    let (idx, p) = probs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty distribution");
    if (1.0 - p).abs() > DETERMINISTIC_TOL {
        return Err(Error::numeric(format!(
            "parity readout is not deterministic (peak probability {p})"
        )));
    }
    if idx == even_idx {
        Ok(Parity::Even)
    } else if idx == odd_idx {
        Ok(Parity::Odd)
    } else {
        Err(Error::numeric(format!(
            "parity readout landed on unexpected index {idx}"
        )))
    }
}

// ---------------------------------------------------------------------------
// Oracle kickback machinery shared by Deutsch-Jozsa and Bernstein-Vazirani
// ---------------------------------------------------------------------------

/// Dense oracle `|x, y> -> |x, y + f(x) mod d>` over `r` input sites and one
/// target site, from the function table `f` indexed by the flat input value.
fn additive_oracle(d: usize, r: usize, f: &[usize]) -> Result<Gate> {
    let inputs = d.checked_pow(r as u32).ok_or_else(|| {
        Error::dimension("oracle input register too large")
    })?;
    if f.len() != inputs {
        return Err(Error::dimension(format!(
            "function table has {} entries, expected d^r = {inputs}",
            f.len()
        )));
    }
    if let Some(&bad) = f.iter().find(|&&v| v >= d) {
        return Err(Error::dimension(format!(
            "function value {bad} out of range for d = {d}"
        )));
    }
    let size = inputs * d;
    let m = CMat::from_fn(size, size, |i, j| {
        let (x, y) = (j / d, j % d);
        if i == x * d + (y + f[x]) % d {
            ONE
        } else {
            ZERO
        }
    });
    Gate::new(vec![d; r + 1], m)
}

/// One round of the qudit kickback pattern: start in `|0...0>|d-1>`, Fourier
/// every site, query the oracle once, and invert the Fourier on every site.
fn kickback_query(d: usize, r: usize, f: &[usize]) -> Result<State> {
    let reg = Register::new(vec![d; r + 1])?;
    let mut digits = vec![0usize; r + 1];
    digits[r] = d - 1;
    let mut st = State::basis_state(&reg, &digits)?;
    let h = gates::hadamard(d);
    for s in 0..=r {
        st.apply(&h, &[s])?;
    }
    let sites: Vec<usize> = (0..=r).collect();
    st.apply(&additive_oracle(d, r, f)?, &sites)?;
    let hd = gates::hadamard_dagger(d);
    for s in 0..=r {
        st.apply(&hd, &[s])?;
    }
    Ok(st)
}

/// Digits of the peak outcome when the state is a basis state within
/// [`DETERMINISTIC_TOL`], else `None`.
fn deterministic_digits(st: &State) -> Option<Vec<usize>> {
    let probs = st.probabilities();
    let (idx, p) = probs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))?;
    if (1.0 - p).abs() <= DETERMINISTIC_TOL {
        Some(st.register().digits_of(idx))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Deutsch-Jozsa
// ---------------------------------------------------------------------------

/// An affine function `f(x_1, ..., x_r) = A_0 + A_1 x_1 + ... + A_r x_r`
/// with everything mod `d`. Affine functions are exactly constant (all
/// `A_{i>0}` zero) or balanced, so they always satisfy the Deutsch-Jozsa
/// promise.
#[derive(Clone, Debug)]
pub struct AffineOracle {
    d: usize,
    coeffs: Vec<usize>,
}

impl AffineOracle {
    /// `coeffs` lists `A_0..A_r`; entries are reduced mod `d`.
    pub fn new(d: usize, coeffs: Vec<usize>) -> Result<Self> {
        if d < 2 {
            return Err(Error::dimension("modulus must be at least 2"));
        }
        if coeffs.len() < 2 {
            return Err(Error::dimension(
                "affine oracle needs a constant term and at least one coefficient",
            ));
        }
        let coeffs = coeffs.into_iter().map(|c| c % d).collect();
        Ok(AffineOracle { d, coeffs })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of input variables `r`.
    pub fn arity(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `A_0..A_r` reduced mod `d`.
    pub fn coeffs(&self) -> &[usize] {
        &self.coeffs
    }

    /// Function table over all `d^r` inputs, flat index with the first
    /// variable most significant.
    pub fn table(&self) -> Vec<usize> {
        let d = self.d;
        let r = self.arity();
        let inputs = d.pow(r as u32);
        (0..inputs)
            .map(|mut x| {
                let mut acc = self.coeffs[0];
                for i in (1..=r).rev() {
                    acc += self.coeffs[i] * (x % d);
                    x /= d;
                }
                acc % d
            })
            .collect()
    }
}

/// Answer class of the Deutsch-Jozsa promise problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DjClass {
    Constant,
    Balanced,
}

/// What one Deutsch-Jozsa query learned.
#[derive(Clone, Debug)]
pub struct DjOutcome {
    pub class: DjClass,
    /// Recovered linear coefficients `A_1..A_r`, present whenever the input
    /// register reads out deterministically (always the case for affine
    /// oracles; the constant term is a global phase and is lost).
    pub coefficients: Option<Vec<usize>>,
    /// Oracle invocations used (always 1).
    pub oracle_calls: usize,
}

/// Classify an affine oracle with a single query and read its linear
/// coefficients off the input register.
pub fn deutsch_jozsa(oracle: &AffineOracle) -> Result<DjOutcome> {
    let st = kickback_query(oracle.d, oracle.arity(), &oracle.table())?;
    let digits = deterministic_digits(&st).ok_or_else(|| {
        Error::numeric("affine oracle readout was not deterministic")
    })?;
    let coeffs = digits[..oracle.arity()].to_vec();
    let class = if coeffs.iter().all(|&c| c == 0) {
        DjClass::Constant
    } else {
        DjClass::Balanced
    };
    Ok(DjOutcome {
        class,
        coefficients: Some(coeffs),
        oracle_calls: 1,
    })
}

/// Deutsch-Jozsa on a raw function table of length `d^r`. The promise
/// (constant, or every output value equally often) is checked classically
/// first and a violation is an error. The class readout is the probability
/// of the all-zeros input register; balanced functions put exactly zero
/// weight there.
pub fn deutsch_jozsa_table(d: usize, table: &[usize]) -> Result<DjOutcome> {
    if d < 2 {
        return Err(Error::dimension("modulus must be at least 2"));
    }
    let mut r = 0usize;
    let mut n = 1usize;
    while n < table.len() {
        n *= d;
        r += 1;
    }
    if n != table.len() || r == 0 {
        return Err(Error::dimension(format!(
            "table length {} is not d^r for d = {d} with r >= 1",
            table.len()
        )));
    }
    let mut counts = vec![0usize; d];
    for &v in table {
        if v >= d {
            return Err(Error::dimension(format!(
                "function value {v} out of range for d = {d}"
            )));
        }
        counts[v] += 1;
    }
    let constant = counts.iter().filter(|&&c| c > 0).count() == 1;
    let balanced = counts.iter().all(|&c| c == table.len() / d);
    if !constant && !balanced {
        return Err(Error::numeric(
            "table violates the promise: neither constant nor balanced",
        ));
    }

    let st = kickback_query(d, r, table)?;
    let probs = st.probabilities();
    let p_zero: f64 = probs[..d].iter().sum();
    let class = if (1.0 - p_zero).abs() <= DETERMINISTIC_TOL {
        DjClass::Constant
    } else {
        DjClass::Balanced
    };
    let coefficients = deterministic_digits(&st).map(|dg| dg[..r].to_vec());
    Ok(DjOutcome {
        class,
        coefficients,
        oracle_calls: 1,
    })
}

// ---------------------------------------------------------------------------
// Bernstein-Vazirani
// ---------------------------------------------------------------------------

/// Result of the single-query string recovery.
#[derive(Clone, Debug)]
pub struct BvOutcome {
    pub recovered: Vec<usize>,
    pub oracle_calls: usize,
}

/// Recover the hidden string `g` of `f(x) = g . x mod d` from one oracle
/// query. The input register starts in `|0>^N`, the target in `|d-1>`, and
/// after the Fourier sandwich the input register reads `g` exactly.
pub fn bernstein_vazirani(d: usize, g: &[usize]) -> Result<BvOutcome> {
    if d < 2 {
        return Err(Error::dimension("modulus must be at least 2"));
    }
    if g.is_empty() {
        return Err(Error::dimension("hidden string must be non-empty"));
    }
    if let Some(&bad) = g.iter().find(|&&v| v >= d) {
        return Err(Error::dimension(format!(
            "hidden string entry {bad} out of range for d = {d}"
        )));
    }
    let n = g.len();
    let inputs = d
        .checked_pow(n as u32)
        .ok_or_else(|| Error::dimension("input register too large"))?;
    let table: Vec<usize> = (0..inputs)
        .map(|mut x| {
            let mut acc = 0usize;
            for i in (0..n).rev() {
                acc += g[i] * (x % d);
                x /= d;
            }
            acc % d
        })
        .collect();
    let st = kickback_query(d, n, &table)?;
    let digits = deterministic_digits(&st)
        .ok_or_else(|| Error::numeric("string readout was not deterministic"))?;
    Ok(BvOutcome {
        recovered: digits[..n].to_vec(),
        oracle_calls: 1,
    })
}

// ---------------------------------------------------------------------------
// Quantum Fourier transform
// ---------------------------------------------------------------------------

/// The textbook QFT circuit on `n` sites of dimension `d`: a Fourier gate on
/// each site, a falling ladder of two-site phase rotations (control value
/// `c` contributes `c` applications of the `1/d^k` phase), and a final site
/// reversal with swaps. The whole circuit equals the `d^n`-point DFT matrix.
pub fn qft_circuit(d: usize, n: usize) -> Result<Circuit> {
    if d < 2 || n == 0 {
        return Err(Error::dimension(
            "QFT needs site dimension >= 2 and at least one site",
        ));
    }
    let mut c = Circuit::new(Register::new(vec![d; n])?);
    for l in 0..n {
        c.push(gates::hadamard(d), vec![l])?;
        for m in l + 1..n {
            let k = (m - l + 1) as u32;
            c.push(gates::controlled_fourier_phase(d, k), vec![m, l])?;
        }
    }
    for i in 0..n / 2 {
        c.push(gates::partial_swap(d, d, d)?, vec![i, n - 1 - i])?;
    }
    Ok(c)
}

// ---------------------------------------------------------------------------
// Phase estimation
// ---------------------------------------------------------------------------

/// Outcome of a phase-estimation run with `t` control digits.
#[derive(Clone, Debug)]
pub struct PhaseEstimate {
    /// Base-`d` digits of the estimate, most significant first; the
    /// eigenphase estimate is `2 pi R / d^t` with `R` the digits' value.
    pub digits: Vec<usize>,
    /// Probability of that readout.
    pub probability: f64,
    /// Full distribution over the `d^t` control outcomes.
    pub distribution: Vec<f64>,
}

/// Estimate the eigenphase of `u` on `eigvec` with `t` base-`d` digits of
/// precision. Control digit `s` drives `u^{d^{t-1-s}}` through a
/// multi-value-controlled gate, and the inverse QFT turns the accumulated
/// kickback into the digit string. When the eigenphase is exactly `R / d^t`
/// of a turn the readout is deterministic; otherwise the peak of the
/// returned distribution is the best `t`-digit rounding.
pub fn phase_estimate(d: usize, t: usize, u: &Gate, eigvec: &[C64]) -> Result<PhaseEstimate> {
    if d < 2 || t == 0 {
        return Err(Error::dimension(
            "phase estimation needs d >= 2 and at least one control digit",
        ));
    }
    if u.arity() != 1 {
        return Err(Error::dimension(
            "the estimated unitary must act on a single site",
        ));
    }
    let du = u.size();
    if eigvec.len() != du {
        return Err(Error::dimension(format!(
            "eigenvector has {} entries for a {du}-dimensional unitary",
            eigvec.len()
        )));
    }
    let norm: f64 = eigvec.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return Err(Error::numeric("eigenvector must be nonzero"));
    }
    let v: Vec<C64> = eigvec.iter().map(|a| a / norm).collect();
    // Eigenvector residual check: || U v - (v* . U v) v || must vanish.
    let mut uv = vec![ZERO; du];
    for i in 0..du {
        for j in 0..du {
            uv[i] += u.matrix()[(i, j)] * v[j];
        }
    }
    let lam: C64 = v.iter().zip(&uv).map(|(a, b)| a.conj() * b).sum();
    let residual: f64 = uv
        .iter()
        .zip(&v)
        .map(|(w, a)| (w - lam * a).norm_sqr())
        .sum::<f64>()
        .sqrt();
    if residual > 1e-8 {
        return Err(Error::numeric(format!(
            "input is not an eigenvector (residual {residual:.3e})"
        )));
    }

    let controls = d
        .checked_pow(t as u32)
        .ok_or_else(|| Error::dimension("control register too large"))?;
    let mut dims = vec![d; t];
    dims.push(du);
    let reg = Register::new(dims)?;
    let mut amps = vec![ZERO; controls * du];
    amps[..du].copy_from_slice(&v);
    let mut st = State::from_amplitudes(&reg, amps)?;

    let h = gates::hadamard(d);
    for s in 0..t {
        st.apply(&h, &[s])?;
    }
    for s in 0..t {
        let p = d.pow((t - 1 - s) as u32) as u64;
        let blocks: Vec<Gate> = (0..d as u64)
            .map(|c| Gate::new(vec![du], u.matrix().pow(p * c)))
            .collect::<Result<_>>()?;
        st.apply(&gates::mvcg(&blocks)?, &[s, t])?;
    }
    for step in qft_circuit(d, t)?.steps().iter().rev() {
        st.apply(&step.gate.dagger(), &step.sites)?;
    }

    let probs = st.probabilities();
    let distribution: Vec<f64> = (0..controls)
        .map(|j| probs[j * du..(j + 1) * du].iter().sum())
        .collect();
    let (best, &p) = distribution
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty distribution");
    let mut digits = vec![0usize; t];
    let mut rem = best;
    for slot in digits.iter_mut().rev() {
        *slot = rem % d;
        rem /= d;
    }
    Ok(PhaseEstimate {
        digits,
        probability: p,
        distribution,
    })
}

// ---------------------------------------------------------------------------
// Grover search
// ---------------------------------------------------------------------------

/// Final state and success probability of a Grover run.
#[derive(Clone, Debug)]
pub struct GroverOutcome {
    pub success_probability: f64,
    pub state: State,
}

/// Run `iterations` rounds of phase-oracle Grover search for one marked
/// basis state, with oracle and diffusion phases `phis = (phi_s, phi_a)`
/// (both `pi` for textbook search).
///
/// Each round applies the selective phase on the marked state and then the
/// reflection about the uniform state, realized literally as Fourier gates
/// conjugating the selective phase on `|0...0>`. With both phases `pi` the
/// success probability follows `sin^2((2k+1) arcsin(d^{-n/2}))`.
pub fn grover(
    d: usize,
    n: usize,
    marked: &[usize],
    phis: (f64, f64),
    iterations: usize,
) -> Result<GroverOutcome> {
    if d < 2 || n == 0 {
        return Err(Error::dimension(
            "search needs site dimension >= 2 and at least one site",
        ));
    }
    if marked.len() != n {
        return Err(Error::dimension(format!(
            "marked string has {} digits for an {n}-site register",
            marked.len()
        )));
    }
    let reg = Register::new(vec![d; n])?;
    let target = reg.index_of(marked)?;
    let size = reg.size();

    let selective = |idx: usize, phi: f64| -> Gate {
        let mut entries = vec![ONE; size];
        entries[idx] = phase(phi);
        Gate::new(vec![d; n], CMat::diag(&entries)).expect("diagonal of unit phases")
    };
    let r_marked = selective(target, phis.0);
    let r_zero = selective(0, phis.1);
    let h = gates::hadamard(d);
    let hd = gates::hadamard_dagger(d);
    let all: Vec<usize> = (0..n).collect();

    let mut st = State::basis_state(&reg, &vec![0; n])?;
    for s in 0..n {
        st.apply(&h, &[s])?;
    }
    for _ in 0..iterations {
        st.apply(&r_marked, &all)?;
        for s in 0..n {
            st.apply(&hd, &[s])?;
        }
        st.apply(&r_zero, &all)?;
        for s in 0..n {
            st.apply(&h, &[s])?;
        }
    }
    let success_probability = st.probabilities()[target];
    Ok(GroverOutcome {
        success_probability,
        state: st,
    })
}

/// Closed-form success probability `sin^2((2k+1) arcsin(1/sqrt(N)))` after
/// `k` textbook iterations in a search space of size `N`.
pub fn grover_success_formula(search_space: u64, iterations: u64) -> f64 {
    let theta = (1.0 / (search_space as f64).sqrt()).asin();
    ((2 * iterations + 1) as f64 * theta).sin().powi(2)
}

/// The iteration count `round((pi/4) sqrt(N))` that maximizes the textbook
/// success probability.
pub fn grover_optimal_iterations(search_space: u64) -> u64 {
    (std::f64::consts::FRAC_PI_4 * (search_space as f64).sqrt()).round() as u64
}

// ---------------------------------------------------------------------------
// Photonic control statistics and the phase fit
// ---------------------------------------------------------------------------

/// Probability of reading control outcome `n` from the qutrit interference
/// pattern at phase `phi`:
/// `C(n, phi) = |1 + e^{i(phi - 2 pi n/3)} + e^{2i(phi - 2 pi n/3)}|^2 / 9`.
pub fn control_probability(n: usize, phi: f64) -> Result<f64> {
    if n > 2 {
        return Err(Error::dimension(format!(
            "control outcome {n} out of range (0..=2)"
        )));
    }
    let delta = phi - TAU * n as f64 / 3.0;
    let amp = ONE + phase(delta) + phase(2.0 * delta);
    Ok(amp.norm_sqr() / 9.0)
}

/// A fitted phase and the residual it achieved.
#[derive(Clone, Copy, Debug)]
pub struct PhaseFitResult {
    /// Estimate in radians, `[0, 2 pi)`.
    pub phi_hat: f64,
    /// Sum of squared residuals between the counts and `C(n, phi_hat)`.
    pub mse: f64,
    /// Coarse grid resolution used for the global scan.
    pub grid_points: usize,
    /// Width of the final bracketing interval in the local refinement.
    pub refine_tolerance: f64,
}

/// Coarse scan resolution. One shared table of `C(n, .)` on this grid is
/// built lazily; grid scans then cost three multiplications per point.
const FIT_GRID: usize = 200_000;
const FIT_TOL: f64 = 1e-10;

fn fit_table() -> &'static Vec<[f64; 3]> {
    static TABLE: OnceLock<Vec<[f64; 3]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..FIT_GRID)
            .map(|i| {
                let phi = TAU * i as f64 / FIT_GRID as f64;
                [
                    control_probability(0, phi).expect("valid outcome"),
                    control_probability(1, phi).expect("valid outcome"),
                    control_probability(2, phi).expect("valid outcome"),
                ]
            })
            .collect()
    })
}

fn fit_residual(counts: &[f64; 3], phi: f64) -> f64 {
    (0..3)
        .map(|n| {
            let diff = counts[n] - control_probability(n, phi).expect("valid outcome");
            diff * diff
        })
        .sum()
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let invphi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - invphi * (b - a);
    let mut d = a + invphi * (b - a);
    while (b - a).abs() > tol {
        if f(c) < f(d) {
            b = d;
            d = c;
            c = b - invphi * (b - a);
        } else {
            a = c;
            c = d;
            d = a + invphi * (b - a);
        }
    }
    (a + b) / 2.0
}

/// Local two-stage refinement around one coarse-grid cell: a 257-point fine
/// scan to isolate the basin, then golden-section inside one fine cell.
fn refine(counts: &[f64; 3], center: f64) -> f64 {
    let cell = TAU / FIT_GRID as f64;
    let step = 2.0 * cell / 256.0;
    let start = center - cell;
    let mut best_j = 0usize;
    let mut best_val = f64::INFINITY;
    for j in 0..257 {
        let val = fit_residual(counts, start + j as f64 * step);
        if val < best_val {
            best_val = val;
            best_j = j;
        }
    }
    let lo = start + best_j.saturating_sub(1) as f64 * step;
    let hi = start + (best_j.min(255) + 1) as f64 * step;
    golden_section(|p| fit_residual(counts, p), lo, hi, FIT_TOL).rem_euclid(TAU)
}

/// Least-squares phase estimate from the three control-outcome counts:
/// minimize `sum_n (E_n - C(n, phi))^2` over a 200k-point grid with local
/// refinement. Reflecting the phase about `0`, `2 pi/3` or `4 pi/3`
/// permutes the outcome triple, so near those axes the landscape has a
/// near-double minimum; every reflection image of the coarse argmin is
/// refined too and ties break toward the smaller angle. Counts need not be
/// normalized; an all-zero triple is rejected.
pub fn phase_fit(counts: &[f64]) -> Result<PhaseFitResult> {
    if counts.len() != 3 {
        return Err(Error::dimension(format!(
            "expected 3 outcome counts, found {}",
            counts.len()
        )));
    }
    if let Some(&bad) = counts.iter().find(|&&c| !(c >= 0.0) || !c.is_finite()) {
        return Err(Error::numeric(format!("invalid count {bad}")));
    }
    let total: f64 = counts.iter().sum();
    if total <= 0.0 {
        return Err(Error::numeric("all-zero counts carry no phase information"));
    }
    let e = [counts[0] / total, counts[1] / total, counts[2] / total];

    let table = fit_table();
    let mut best_i = 0usize;
    let mut best_val = f64::INFINITY;
    for (i, c) in table.iter().enumerate() {
        let val = (e[0] - c[0]).powi(2) + (e[1] - c[1]).powi(2) + (e[2] - c[2]).powi(2);
        if val < best_val {
            best_val = val;
            best_i = i;
        }
    }
    let coarse = TAU * best_i as f64 / FIT_GRID as f64;
    let primary = refine(&e, coarse);
    let mut candidates = vec![primary];
    for k in 0..3 {
        let mirror = (TAU * k as f64 / 3.0 - primary).rem_euclid(TAU);
        candidates.push(refine(&e, mirror));
    }
    candidates.sort_by(f64::total_cmp);
    let mut phi_hat = candidates[0];
    let mut best_err = fit_residual(&e, phi_hat);
    for &c in &candidates[1..] {
        let err = fit_residual(&e, c);
        if err < best_err {
            best_err = err;
            phi_hat = c;
        }
    }
    Ok(PhaseFitResult {
        phi_hat,
        mse: best_err,
        grid_points: FIT_GRID,
        refine_tolerance: FIT_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn sign_of(mapping: &[usize]) -> Parity {
        let mut swaps = 0;
        let mut seen = vec![false; mapping.len()];
        for start in 0..mapping.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = mapping[x];
                len += 1;
            }
            swaps += len - 1;
        }
        if swaps % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    #[test]
    fn parity_matches_sign_for_all_qutrit_permutations() {
        let perms = [
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
            [1, 0, 2],
            [0, 2, 1],
        ];
        for p in perms {
            let oracle = PermutationOracle::new(p.to_vec()).unwrap();
            let got = parity(&oracle).unwrap();
            assert_eq!(got, sign_of(&p), "permutation {p:?}");
            assert_eq!(got, oracle.parity());
        }
    }

    #[test]
    fn parity_classifies_larger_dimensions() {
        // Shift by 2 at d = 5.
        let shift: Vec<usize> = (0..5).map(|x| (x + 2) % 5).collect();
        let oracle = PermutationOracle::new(shift).unwrap();
        assert_eq!(parity(&oracle).unwrap(), Parity::Even);

        // Reflection x -> 3 - x at d = 5.
        let refl: Vec<usize> = (0..5).map(|x| (3 + 5 - x) % 5).collect();
        let oracle = PermutationOracle::new(refl).unwrap();
        assert_eq!(parity(&oracle).unwrap(), Parity::Odd);

        // Shift by 1 at d = 4 is an odd permutation as a cycle, but sits in
        // the algorithm's even (cyclic) class.
        let shift4: Vec<usize> = (0..4).map(|x| (x + 1) % 4).collect();
        let oracle = PermutationOracle::new(shift4).unwrap();
        assert_eq!(parity(&oracle).unwrap(), Parity::Even);
    }

    #[test]
    fn parity_oracle_rejects_bad_mappings() {
        assert!(PermutationOracle::new(vec![0, 0, 1]).is_err());
        assert!(PermutationOracle::new(vec![0, 1]).is_err());
        // A 4-cycle composed with a fixed point is neither shift nor
        // reflection at d = 5.
        assert!(PermutationOracle::new(vec![1, 0, 3, 4, 2]).is_err());
    }

    #[test]
    fn deutsch_jozsa_affine_cases() {
        // Constant f = 2 over two qutrit inputs.
        let oracle = AffineOracle::new(3, vec![2, 0, 0]).unwrap();
        let out = deutsch_jozsa(&oracle).unwrap();
        assert_eq!(out.class, DjClass::Constant);
        assert_eq!(out.coefficients, Some(vec![0, 0]));
        assert_eq!(out.oracle_calls, 1);

        // A = (1, 2, 1): balanced with recoverable linear part.
        let oracle = AffineOracle::new(3, vec![1, 2, 1]).unwrap();
        let out = deutsch_jozsa(&oracle).unwrap();
        assert_eq!(out.class, DjClass::Balanced);
        assert_eq!(out.coefficients, Some(vec![2, 1]));
    }

    #[test]
    fn deutsch_jozsa_table_mode() {
        // f(x) = x on one qutrit: balanced, linear coefficient 1.
        let out = deutsch_jozsa_table(3, &[0, 1, 2]).unwrap();
        assert_eq!(out.class, DjClass::Balanced);
        assert_eq!(out.coefficients, Some(vec![1]));

        // Constant table.
        let out = deutsch_jozsa_table(3, &[1, 1, 1]).unwrap();
        assert_eq!(out.class, DjClass::Constant);

        // Promise violation: value 0 appears twice, value 1 once.
        assert!(deutsch_jozsa_table(3, &[0, 0, 1]).is_err());

        // Balanced but not affine at d = 2, r = 2: coefficients undefined.
        let out = deutsch_jozsa_table(2, &[0, 1, 1, 0]).unwrap();
        assert_eq!(out.class, DjClass::Balanced);
    }

    #[test]
    fn bernstein_vazirani_recovers_strings() {
        assert_eq!(
            bernstein_vazirani(3, &[0, 0]).unwrap().recovered,
            vec![0, 0]
        );
        let out = bernstein_vazirani(3, &[1, 2]).unwrap();
        assert_eq!(out.recovered, vec![1, 2]);
        assert_eq!(out.oracle_calls, 1);
        assert_eq!(
            bernstein_vazirani(5, &[4, 0, 3]).unwrap().recovered,
            vec![4, 0, 3]
        );
        assert!(bernstein_vazirani(3, &[3]).is_err());
    }

    #[test]
    fn qft_matches_dft() {
        for (d, n) in [(2usize, 1usize), (3, 1), (2, 2), (3, 2)] {
            let size = d.pow(n as u32);
            let got = qft_circuit(d, n).unwrap().unitary().unwrap();
            // The single-site Fourier gate at dimension d^n is the DFT.
            let want = gates::hadamard(size);
            assert!(
                got.max_abs_diff(want.matrix()) < 1e-9,
                "QFT mismatch at d = {d}, n = {n}"
            );
        }
    }

    #[test]
    fn qft_single_site_is_fourier_gate() {
        let c = qft_circuit(3, 1).unwrap();
        assert_eq!(c.len(), 1);
        let got = c.unitary().unwrap();
        assert!(got.max_abs_diff(gates::hadamard(3).matrix()) < 1e-12);
    }

    #[test]
    fn phase_estimation_identity_and_clock() {
        let id = gates::identity(3);
        let v = vec![ONE, ZERO, ZERO];
        let est = phase_estimate(3, 2, &id, &v).unwrap();
        assert_eq!(est.digits, vec![0, 0]);
        assert!((est.probability - 1.0).abs() < 1e-9);

        // diag(1, w, w^2) on |1>: phase 1/3 of a turn = 3/9, digits (1, 0).
        let u1 = gates::pauli_z(3);
        let v = vec![ZERO, ONE, ZERO];
        let est = phase_estimate(3, 2, &u1, &v).unwrap();
        assert_eq!(est.digits, vec![1, 0]);
        assert!((est.probability - 1.0).abs() < 1e-9);

        // Four digits on |2>: 2/3 = 54/81, digits (2, 0, 0, 0).
        let v = vec![ZERO, ZERO, ONE];
        let est = phase_estimate(3, 4, &u1, &v).unwrap();
        assert_eq!(est.digits, vec![2, 0, 0, 0]);
        assert!((est.probability - 1.0).abs() < 1e-9);
    }

    #[test]
    fn phase_estimation_rejects_non_eigenvectors() {
        let u1 = gates::pauli_z(3);
        let s = C64::new(0.5f64.sqrt(), 0.0);
        let v = vec![s, s, ZERO];
        assert!(phase_estimate(3, 2, &u1, &v).is_err());
    }

    #[test]
    fn grover_matches_closed_form() {
        // Two qubits, one iteration: certainty.
        let out = grover(2, 2, &[1, 1], (PI, PI), 1).unwrap();
        assert!((out.success_probability - 1.0).abs() < 1e-9);

        // Two qutrits, two iterations.
        let out = grover(3, 2, &[0, 2], (PI, PI), 2).unwrap();
        let want = grover_success_formula(9, 2);
        assert!((out.success_probability - want).abs() < 1e-9);
        assert!((want - 0.9836068350).abs() < 1e-9);

        // Zero iterations leave the uniform state.
        let out = grover(3, 2, &[1, 1], (PI, PI), 0).unwrap();
        assert!((out.success_probability - 1.0 / 9.0).abs() < 1e-12);

        assert_eq!(grover_optimal_iterations(4), 2);
        assert!(grover(3, 2, &[3, 0], (PI, PI), 1).is_err());
    }

    #[test]
    fn control_probability_values() {
        assert!((control_probability(0, 0.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((control_probability(1, TAU / 3.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(control_probability(0, TAU / 3.0).unwrap() < 1e-12);
        let total: f64 = (0..3)
            .map(|n| control_probability(n, 1.234).unwrap())
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(control_probability(3, 0.0).is_err());
    }

    #[test]
    fn phase_fit_round_trip() {
        let fit = phase_fit(&[1.0, 0.0, 0.0]).unwrap();
        assert!(fit.phi_hat.min(TAU - fit.phi_hat) < 1e-6);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..25 {
            let phi = rng.gen::<f64>() * TAU;
            let counts: Vec<f64> = (0..3)
                .map(|n| control_probability(n, phi).unwrap())
                .collect();
            let fit = phase_fit(&counts).unwrap();
            let diff = (fit.phi_hat - phi).abs();
            assert!(
                diff.min(TAU - diff) < 1e-5,
                "round trip {phi} -> {}",
                fit.phi_hat
            );
        }
    }

    #[test]
    fn phase_fit_table_columns() {
        // First and last columns of the photonic data; the frozen expected
        // values cover all six in the integration suite.
        let fit = phase_fit(&[0.9948, 0.0023, 0.0029]).unwrap();
        assert!((fit.phi_hat / PI - 1.9718370264).abs() < 1e-6);
        let fit = phase_fit(&[0.143, 0.318, 0.539]).unwrap();
        assert!((fit.phi_hat / PI - 1.0451449412).abs() < 1e-6);
    }

    #[test]
    fn phase_fit_rejects_empty_counts() {
        assert!(phase_fit(&[0.0, 0.0, 0.0]).is_err());
        assert!(phase_fit(&[1.0, 0.0]).is_err());
        assert!(phase_fit(&[1.0, -0.1, 0.0]).is_err());
    }

    #[test]
    fn affine_oracle_reduces_and_tabulates() {
        let o = AffineOracle::new(3, vec![4, 5, 1]).unwrap();
        assert_eq!(o.coeffs(), &[1, 2, 1]);
        assert_eq!(o.arity(), 2);
        let t = o.table();
        assert_eq!(t.len(), 9);
        // f(2, 1) = 1 + 2*2 + 1*1 = 6 = 0 mod 3, flat index 2*3 + 1 = 7.
        assert_eq!(t[7], 0);
        assert!(AffineOracle::new(3, vec![1]).is_err());
        assert!(AffineOracle::new(1, vec![0, 0]).is_err());
    }
}
