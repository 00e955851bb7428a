//! `puresep`: separability analysis of pure multipartite quantum states.
//!
//! Exit codes: 0 analysis succeeded (whatever the verdict), 1 semantic
//! negative (state not separable / stress found a counterexample), 2 input
//! or parse error, 3 internal criterion disagreement.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use puresep::{
    check, factorize, measure, norm_target, DimVector, Error, GeneratorBasis, RandomSpec,
    StateKind,
};

mod output;
mod statefile;
mod stress;

use output::{fnum, to_json_pretty};
use statefile::{load_path, LoadedState, StateFile};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "puresep",
    version,
    about = "Decide separability of pure multipartite quantum states, factorize the separable \
             ones, and compute coherence-norm entanglement measures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-partite separability verdicts from the norm criterion,
    /// cross-checked against the minor criterion
    Check {
        /// State file (JSON)
        file: PathBuf,
        /// Decision tolerance
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Emit a machine-readable JSON report
        #[arg(long)]
        json: bool,
    },
    /// Factorize a fully separable state into single-partite factors
    Factor {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Print the coherence vector of one partite's reduced density matrix
    Coherence {
        file: PathBuf,
        /// Partite index, 1-based
        #[arg(long)]
        partite: usize,
        #[arg(long)]
        json: bool,
    },
    /// Entanglement measures (norm deficit, linear entropy, von Neumann
    /// entropy) for every partite
    Measure {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Generate a state file
    Gen {
        /// State family
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Local dimensions, comma separated (e.g. 2,3,2)
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
        /// RNG seed; the same seed always produces the same file
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Noise scale (near-product only)
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        /// Write to this path instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized criterion-vs-oracle equivalence run
    Stress {
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
        /// Number of random states to draw
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum KindArg {
    Bell,
    Ghz,
    W,
    Product,
    Haar,
    NearProduct,
}

struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn map_core_error(e: Error) -> Failure {
    let code = match e {
        Error::NotSeparable(_) => EXIT_NEGATIVE,
        Error::CriterionDisagreement { .. } => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

// die quietly when the read end of a pipe goes away (e.g. `puresep ... | head`)
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn validate_tol(tol: f64) -> Result<(), Failure> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(input_error(format!("tol must be a positive number, got {tol}")));
    }
    Ok(())
}

fn load(file: &Path) -> Result<LoadedState, Failure> {
    let loaded = load_path(file).map_err(input_error)?;
    if loaded.was_rescaled {
        eprintln!("warning: input state was not normalized; normalizing");
    }
    Ok(loaded)
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Check { file, tol, json } => cmd_check(&file, tol, json),
        Command::Factor { file, tol, json } => cmd_factor(&file, tol, json),
        Command::Coherence { file, partite, json } => cmd_coherence(&file, partite, json),
        Command::Measure { file, json } => cmd_measure(&file, json),
        Command::Gen {
            kind,
            dims,
            seed,
            eps,
            out,
        } => cmd_gen(kind, dims, seed, eps, out.as_deref()),
        Command::Stress {
            dims,
            samples,
            seed,
            tol,
            json,
        } => cmd_stress(dims, samples, seed, tol, json),
    }
}

fn cmd_check(file: &Path, tol: f64, json: bool) -> Result<u8, Failure> {
    validate_tol(tol)?;
    let loaded = load(file)?;
    let report = check(&loaded.state, tol).map_err(map_core_error)?;
    if json {
        let doc = output::check_json(loaded.label, &loaded.state, &report);
        println!("{}", to_json_pretty(&doc));
    } else {
        output::print_check_human(loaded.label.as_deref(), &loaded.state, &report);
    }
    Ok(0)
}

fn cmd_factor(file: &Path, tol: f64, json: bool) -> Result<u8, Failure> {
    validate_tol(tol)?;
    let loaded = load(file)?;
    match factorize(&loaded.state, tol) {
        Ok(f) => {
            let factors: Vec<StateFile> = f
                .factors
                .iter()
                .map(|s| StateFile::from_state(s, None))
                .collect();
            if json {
                let doc = output::FactorJson {
                    command: "factor",
                    label: loaded.label,
                    dims: loaded.state.dims().dims().to_vec(),
                    tol,
                    separable: true,
                    fidelity: Some(f.residual_fidelity),
                    factors: Some(factors),
                    failing_partites: None,
                };
                println!("{}", to_json_pretty(&doc));
            } else {
                println!(
                    "{}",
                    output::describe_state(loaded.label.as_deref(), &loaded.state)
                );
                println!(
                    "fully separable: yes  round-trip fidelity: {}",
                    fnum(f.residual_fidelity)
                );
                for (i, factor) in factors.iter().enumerate() {
                    let body = serde_json::to_string(factor).expect("factor serialization");
                    println!("factor {}: {}", i + 1, body);
                }
            }
            Ok(0)
        }
        Err(Error::NotSeparable(parts)) => {
            let one_based: Vec<usize> = parts.iter().map(|p| p + 1).collect();
            if json {
                let doc = output::FactorJson {
                    command: "factor",
                    label: loaded.label,
                    dims: loaded.state.dims().dims().to_vec(),
                    tol,
                    separable: false,
                    fidelity: None,
                    factors: None,
                    failing_partites: Some(one_based),
                };
                println!("{}", to_json_pretty(&doc));
            } else {
                let list: Vec<String> = one_based.iter().map(|p| p.to_string()).collect();
                println!(
                    "not separable: partites {} fail the criterion at tol {:e}",
                    list.join(", "),
                    tol
                );
            }
            Ok(EXIT_NEGATIVE)
        }
        Err(e) => Err(map_core_error(e)),
    }
}

fn cmd_coherence(file: &Path, partite: usize, json: bool) -> Result<u8, Failure> {
    let loaded = load(file)?;
    let n = loaded.state.dims().n();
    if partite == 0 || partite > n {
        return Err(input_error(format!(
            "partite must be between 1 and {n} (1-based), got {partite}"
        )));
    }
    let index = partite - 1;
    let rho = loaded.state.partial_trace(&[index]).map_err(map_core_error)?;
    let basis = GeneratorBasis::new(rho.dim()).map_err(map_core_error)?;
    let xi = basis.coherence_vector(&rho, index).map_err(map_core_error)?;
    let norm_sq = xi.norm_squared();
    let target = norm_target(rho.dim());
    if json {
        let doc = output::CoherenceJson {
            command: "coherence",
            label: loaded.label,
            dims: loaded.state.dims().dims().to_vec(),
            partite,
            values: xi.values.clone(),
            norm_sq,
            target,
        };
        println!("{}", to_json_pretty(&doc));
    } else {
        println!(
            "{}",
            output::describe_state(loaded.label.as_deref(), &loaded.state)
        );
        let vals: Vec<String> = xi.values.iter().map(|&v| fnum(v)).collect();
        println!("partite {partite} coherence vector:");
        println!("[{}]", vals.join(", "));
        println!("norm_sq: {}  target: {}", fnum(norm_sq), fnum(target));
    }
    Ok(0)
}

fn cmd_measure(file: &Path, json: bool) -> Result<u8, Failure> {
    let loaded = load(file)?;
    let report = measure(&loaded.state);
    if json {
        let doc = output::measure_json(loaded.label, &loaded.state, &report);
        println!("{}", to_json_pretty(&doc));
    } else {
        output::print_measure_human(loaded.label.as_deref(), &loaded.state, &report);
    }
    Ok(0)
}

fn cmd_gen(
    kind: KindArg,
    dims: Vec<usize>,
    seed: u64,
    eps: f64,
    out: Option<&std::path::Path>,
) -> Result<u8, Failure> {
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(input_error(format!("eps must be a nonnegative number, got {eps}")));
    }
    let dims = DimVector::new(dims).map_err(map_core_error)?;
    let (state_kind, label) = match kind {
        KindArg::Bell => (StateKind::Bell, "bell"),
        KindArg::Ghz => (StateKind::Ghz, "ghz"),
        KindArg::W => (StateKind::W, "w"),
        KindArg::Product => (StateKind::Product, "product"),
        KindArg::Haar => (StateKind::HaarLike, "haar"),
        KindArg::NearProduct => (StateKind::BiasedNearProduct { eps }, "near-product"),
    };
    let spec = RandomSpec {
        dims,
        kind: state_kind,
        seed,
    };
    let state = puresep::generate(&spec).map_err(map_core_error)?;
    let file = StateFile::from_state(&state, Some(label.to_string()));
    let text = file.to_json_pretty();
    match out {
        Some(path) => {
            std::fs::write(path, text + "\n")
                .map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))?;
        }
        None => println!("{text}"),
    }
    Ok(0)
}

fn cmd_stress(
    dims: Vec<usize>,
    samples: usize,
    seed: u64,
    tol: f64,
    json: bool,
) -> Result<u8, Failure> {
    validate_tol(tol)?;
    if samples == 0 {
        return Err(input_error("samples must be at least 1"));
    }
    let dims = DimVector::new(dims).map_err(map_core_error)?;
    if dims.n() < 2 {
        return Err(input_error("stress needs at least two partites"));
    }
    let report = stress::run(&dims, samples, seed, tol).map_err(map_core_error)?;
    if json {
        println!("{}", to_json_pretty(&report));
    } else {
        stress::print_human(&report);
    }
    Ok(if report.disagreements == 0 { 0 } else { EXIT_NEGATIVE })
}
