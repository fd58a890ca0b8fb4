//! Command-line front end: run circuit files, compile unitaries, emit
//! algorithm circuits and results, and evaluate the operator-basis
//! utilities, all with machine-readable JSON (or CSV) on stdout.
//!
//! Every command is deterministic for a fixed seed, which comes from
//! `--seed`, then the `QUDITKIT_SEED` environment variable, then 0. Exit
//! codes: 0 success, 2 parse errors, 3 dimension mismatches, 4 numeric
//! validation failures.

use clap::{Parser, Subcommand, ValueEnum};
use quditkit::error::{Error, Result};
use quditkit::state::State;
use quditkit::{algorithms, decompose, gates, geodesic, io};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "quditkit", version, about = "Mixed-dimension qudit circuits: simulate, compile, analyze")]
struct Cli {
    /// Indent JSON output for reading; default is one line for piping.
    #[arg(long, global = true)]
    pretty: bool,
    /// RNG seed for sampling commands. Falls back to QUDITKIT_SEED, then 0.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a circuit file: exact amplitudes, or sampled counts with --shots.
    Run {
        /// Circuit JSON path.
        circuit: PathBuf,
        /// Initial basis digits, comma-separated; defaults to all zeros.
        #[arg(long, value_delimiter = ',')]
        init: Option<Vec<usize>>,
        /// Number of measurement samples; 0 means exact amplitude output.
        #[arg(long, default_value_t = 0)]
        shots: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compile a unitary (CSV) into elementary gates over a uniform register.
    Decompose {
        /// Unitary as row,col,re,im CSV.
        matrix: PathBuf,
        /// Local dimension of every site.
        d: usize,
        /// Number of sites.
        n: usize,
    },
    /// Gate counts of the generalized Toffoli for n controls.
    Gatecount { n: u64 },
    /// Emit the base-d quantum Fourier transform over n sites as a circuit file.
    Qft {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    /// Phase estimation: t base-d digits for a unitary and eigenvector (CSV).
    Pea {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        t: usize,
        /// Estimated unitary as row,col,re,im CSV.
        #[arg(long)]
        unitary: PathBuf,
        /// Eigenvector as index,re,im CSV.
        #[arg(long)]
        eigvec: PathBuf,
    },
    /// Phase-oracle search for one marked basis state.
    Grover {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Digits of the marked state, comma-separated, most significant first.
        #[arg(long, value_delimiter = ',')]
        marked: Vec<usize>,
        /// Number of oracle plus diffusion rounds.
        #[arg(long)]
        iters: usize,
        /// Oracle phase in radians.
        #[arg(long, default_value_t = std::f64::consts::PI)]
        phi_s: f64,
        /// Diffusion phase in radians.
        #[arg(long, default_value_t = std::f64::consts::PI)]
        phi_a: f64,
    },
    /// Classify a cyclic or reflected permutation as even or odd in one query.
    Parity {
        #[arg(long)]
        d: usize,
        /// The permutation as its value table, comma-separated.
        #[arg(long, value_delimiter = ',')]
        perm: Vec<usize>,
    },
    /// Constant-vs-balanced classification of an affine oracle in one query.
    Dj {
        #[arg(long)]
        d: usize,
        /// Affine coefficients A0,A1,...,Ar (constant term first).
        #[arg(long, value_delimiter = ',', conflicts_with = "table")]
        coeffs: Option<Vec<usize>>,
        /// Explicit truth table f(0),f(1),... over all d^r inputs.
        #[arg(long, value_delimiter = ',')]
        table: Option<Vec<usize>>,
    },
    /// Recover the hidden string of a mod-d dot-product oracle in one query.
    Bv {
        #[arg(long)]
        d: usize,
        /// Hidden string g1,...,gr.
        #[arg(long, value_delimiter = ',')]
        g: Vec<usize>,
    },
    /// Fit an eigenphase to qutrit-control measurement counts.
    PhaseFit {
        /// Counts as n,count CSV rows for outcomes 0, 1, 2.
        counts: PathBuf,
    },
    /// Print the generalized Gell-Mann basis of the d-level matrices.
    Gellmann { d: usize },
    /// Expand a Hermitian matrix (CSV) in the lifted operator basis.
    Expand {
        /// Matrix as row,col,re,im CSV.
        matrix: PathBuf,
        /// Local dimension of every site.
        d: usize,
        /// Number of sites; must match the matrix size.
        n: usize,
    },
    /// Evaluate the penalty-weighted cost of a stored expansion.
    Cost {
        /// Expansion JSON as written by `expand`.
        expansion: PathBuf,
        /// Penalty on three-or-more-body terms; at least 1.
        p: f64,
    },
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::parse(format!("cannot read {}: {e}", path.display())))
}

fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("QUDITKIT_SEED") {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::parse(format!("QUDITKIT_SEED is not an integer: `{text}`"))),
        Err(_) => Ok(0),
    }
}

fn emit(value: &Value, pretty: bool) {
    println!("{}", io::render(value, pretty));
}

fn parity_name(p: algorithms::Parity) -> &'static str {
    match p {
        algorithms::Parity::Even => "even",
        algorithms::Parity::Odd => "odd",
    }
}

fn class_name(c: algorithms::DjClass) -> &'static str {
    match c {
        algorithms::DjClass::Constant => "constant",
        algorithms::DjClass::Balanced => "balanced",
    }
}

fn run_command(cli: Cli) -> Result<ExitCode> {
    let pretty = cli.pretty;
    let seed = resolve_seed(cli.seed)?;
    match cli.command {
        Cmd::Run {
            circuit,
            init,
            shots,
            format,
        } => {
            let circuit = io::circuit_from_json(&read_file(&circuit)?)?;
            let register = circuit.register().clone();
            let digits = init.unwrap_or_else(|| vec![0; register.num_sites()]);
            let mut state = State::basis_state(&register, &digits)?;
            circuit.apply_to(&mut state)?;
            if shots == 0 {
                match format {
                    Format::Csv => print!("{}", io::amplitudes_to_csv(&state)),
                    Format::Json => {
                        let amps: Vec<Value> = state
                            .amplitudes()
                            .iter()
                            .enumerate()
                            .map(|(index, a)| {
                                json!({
                                    "index": index,
                                    "digits": register.digits_of(index),
                                    "re": a.re,
                                    "im": a.im,
                                })
                            })
                            .collect();
                        emit(
                            &json!({
                                "dims": register.dims(),
                                "init": digits,
                                "shots": 0,
                                "amplitudes": amps,
                            }),
                            pretty,
                        );
                    }
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
                for _ in 0..shots {
                    let outcome = state.sample_with(&mut rng);
                    let index = register.index_of(&outcome)?;
                    *counts.entry(index).or_insert(0) += 1;
                }
                match format {
                    Format::Csv => print!("{}", io::histogram_to_csv(&register, &counts)),
                    Format::Json => {
                        let rows: Vec<Value> = counts
                            .iter()
                            .map(|(&index, &count)| {
                                json!({
                                    "index": index,
                                    "digits": register.digits_of(index),
                                    "count": count,
                                })
                            })
                            .collect();
                        emit(
                            &json!({
                                "dims": register.dims(),
                                "init": digits,
                                "shots": shots,
                                "seed": seed,
                                "counts": rows,
                            }),
                            pretty,
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Decompose { matrix, d, n } => {
            let m = io::matrix_from_csv(&read_file(&matrix)?)?;
            let register = quditkit::Register::uniform(d, n)?;
            let gate = quditkit::Gate::new(vec![register.size()], m)?;
            let report = decompose::compile(&gate, &register)?;
            let mut circuit =
                quditkit::Circuit::new(quditkit::Register::uniform(d, n + report.ancillas)?);
            for op in &report.ops {
                circuit.push(op.to_gate()?, op.sites())?;
            }
            emit(
                &json!({
                    "d": d,
                    "n": n,
                    "gate_count": report.gate_count,
                    "bound": report.bound,
                    "ancillas": report.ancillas,
                    "reconstruction_error": report.reconstruction_error,
                    "global_phase": report.global_phase,
                    "circuit": io::circuit_to_value(&circuit),
                }),
                pretty,
            );
            if report.reconstruction_error > 1e-8 {
                eprintln!(
                    "error: reconstruction error {:e} exceeds 1e-8",
                    report.reconstruction_error
                );
                return Ok(ExitCode::from(4));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Gatecount { n } => {
            let (qudit_target, tree, qubit_best) = gates::toffoli_gate_counts(n)?;
            emit(
                &json!({
                    "n": n,
                    "qudit_target": qudit_target,
                    "tree": tree,
                    "qubit_best": qubit_best,
                }),
                pretty,
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Qft { d, n } => {
            let circuit = algorithms::qft_circuit(d, n)?;
            emit(&io::circuit_to_value(&circuit), pretty);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Pea {
            d,
            t,
            unitary,
            eigvec,
        } => {
            let m = io::matrix_from_csv(&read_file(&unitary)?)?;
            let rows = m.rows();
            let gate = quditkit::Gate::new(vec![rows], m)?;
            let v = io::vector_from_csv(&read_file(&eigvec)?)?;
            let est = algorithms::phase_estimate(d, t, &gate, &v)?;
            let mut value = 0u64;
            for &digit in &est.digits {
                value = value * d as u64 + digit as u64;
            }
            let turns = value as f64 / (d as f64).powi(t as i32);
            emit(
                &json!({
                    "d": d,
                    "t": t,
                    "digits": est.digits,
                    "phase_rad": std::f64::consts::TAU * turns,
                    "phase_turns": turns,
                    "probability": est.probability,
                    "distribution": est.distribution,
                }),
                pretty,
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Grover {
            d,
            n,
            marked,
            iters,
            phi_s,
            phi_a,
        } => {
            let outcome = algorithms::grover(d, n, &marked, (phi_s, phi_a), iters)?;
            let space = (d as u64).pow(n as u32);
            emit(
                &json!({
                    "d": d,
                    "n": n,
                    "marked": marked,
                    "iterations": iters,
                    "phi_s": phi_s,
                    "phi_a": phi_a,
                    "success_probability": outcome.success_probability,
                    "optimal_iterations": algorithms::grover_optimal_iterations(space),
                }),
                pretty,
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Parity { d, perm } => {
            if perm.len() != d {
                return Err(Error::dimension(format!(
                    "permutation lists {} values for d = {d}",
                    perm.len()
                )));
            }
            let oracle = algorithms::PermutationOracle::new(perm.clone())?;
            let class = algorithms::parity(&oracle)?;
            emit(
                &json!({
                    "d": d,
                    "perm": perm,
                    "parity": parity_name(class),
                }),
                pretty,
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Dj { d, coeffs, table } => {
            let outcome = match (&coeffs, &table) {
                (Some(coeffs), None) => {
                    let oracle = algorithms::AffineOracle::new(d, coeffs.clone())?;
                    algorithms::deutsch_jozsa(&oracle)?
                }
                (None, Some(table)) => algorithms::deutsch_jozsa_table(d, table)?,
                _ => {
                    return Err(Error::parse(
                        "provide exactly one of --coeffs or --table",
                    ))
                }
            };
            emit(
                &json!({
                    "d": d,
                    "coeffs": coeffs,
                    "table": table,
                    "class": class_name(outcome.class),
                    "coefficients": outcome.coefficients,
                    "oracle_calls": outcome.oracle_calls,
                }),
                pretty,
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bv { d, g } => {
            let outcome = algorithms::bernstein_vazirani(d, &g)?;
            emit(
                &json!({
                    "d": d,
                    "g": g,
                    "recovered": outcome.recovered,
                    "oracle_calls": outcome.oracle_calls,
                }),
                pretty,
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::PhaseFit { counts } => {
            let rows = io::counts_from_csv(&read_file(&counts)?)?;
            let mut slots = [None; 3];
            for (n, count) in rows {
                if n > 2 || slots[n].is_some() {
                    return Err(Error::parse(
                        "counts must list outcomes 0, 1, 2 exactly once each",
                    ));
                }
                slots[n] = Some(count);
            }
            let counts: Vec<f64> = slots
                .iter()
                .map(|s| s.ok_or_else(|| Error::parse("counts must cover outcomes 0, 1, 2")))
                .collect::<Result<_>>()?;
            let fit = algorithms::phase_fit(&counts)?;
            emit(
                &json!({
                    "phi_hat_rad": fit.phi_hat,
                    "phi_hat_over_pi": fit.phi_hat / std::f64::consts::PI,
                    "mse": fit.mse,
                }),
                pretty,
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Gellmann { d } => {
            if d < 2 {
                return Err(Error::dimension("basis needs d >= 2"));
            }
            let elements: Vec<Value> = geodesic::gell_mann_basis(d)
                .iter()
                .map(|e| {
                    let kind = match e.kind {
                        geodesic::BasisKind::Symmetric => "symmetric",
                        geodesic::BasisKind::Antisymmetric => "antisymmetric",
                        geodesic::BasisKind::Diagonal => "diagonal",
                    };
                    json!({
                        "kind": kind,
                        "j": e.j,
                        "k": e.k,
                        "norm_sq": e.norm_sq(),
                        "matrix": io::matrix_to_value(e.matrix()),
                    })
                })
                .collect();
            emit(&json!({ "d": d, "elements": elements }), pretty);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Expand { matrix, d, n } => {
            let m = io::matrix_from_csv(&read_file(&matrix)?)?;
            let expansion = geodesic::expand(&m, d)?;
            if expansion.num_sites() != n {
                return Err(Error::dimension(format!(
                    "matrix size {} describes {} sites at d = {d}, not {n}",
                    m.rows(),
                    expansion.num_sites()
                )));
            }
            emit(&io::expansion_to_value(&expansion), pretty);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Cost { expansion, p } => {
            let e = io::expansion_from_json(&read_file(&expansion)?)?;
            let f = geodesic::cost(&e, p)?;
            emit(&json!({ "p": p, "cost": f }), pretty);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_command(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
