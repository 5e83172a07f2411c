//! `qbasis`: simulate, sample, compare and inspect QCF circuits.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use qbasis::format::{amplitude_dump, amplitude_line};
use qbasis::ir::{parse_circuit, BasisState, Circuit};
use qbasis::tn::{amplitude_tn, circuit_to_network, full_state_tn, greedy_plan, stats_line};
use qbasis::verify::{check_equivalence, BackendId, Status};
use qbasis::zx::reduce_circuit;
use qbasis::{dense, DdPackage, Error};

const EXIT_OK: u8 = 0;
const EXIT_NOT_EQUIVALENT: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_PARSE: u8 = 65;
const EXIT_CAPACITY: u8 = 70;

#[derive(Debug, Parser)]
#[command(name = "qbasis", version, about = "Quantum circuit simulation and equivalence checking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    Dense,
    Dd,
    Tn,
    Zx,
}

impl From<Backend> for BackendId {
    fn from(b: Backend) -> Self {
        match b {
            Backend::Dense => BackendId::Dense,
            Backend::Dd => BackendId::Dd,
            Backend::Tn => BackendId::Tn,
            Backend::Zx => BackendId::Zx,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the final state from |0…0⟩, one `bits re im` line per amplitude.
    Simulate {
        #[arg(long, value_enum)]
        backend: Backend,
        /// Print every amplitude, including zeros.
        #[arg(long)]
        full: bool,
        file: PathBuf,
    },
    /// Print one amplitude of the final state.
    Amplitude {
        #[arg(long, value_enum)]
        backend: Backend,
        /// Basis state, most significant qubit first.
        #[arg(long)]
        basis: String,
        file: PathBuf,
    },
    /// Measure the final state `shots` times and print `bits count` lines.
    Sample {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        shots: u64,
        #[arg(long)]
        seed: u64,
        /// Non-dense backends reconstruct the state vector before sampling.
        #[arg(long, value_enum, default_value = "dense")]
        backend: Backend,
        file: PathBuf,
    },
    /// Check two circuits for equality up to global phase.
    Verify {
        #[arg(long, value_enum)]
        method: Backend,
        file1: PathBuf,
        file2: PathBuf,
    },
    /// Print backend statistics for the circuit.
    Stats {
        #[arg(long, value_enum)]
        backend: Backend,
        file: PathBuf,
    },
}

/// A failure and the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_PARSE,
            Error::Capacity { .. } => EXIT_CAPACITY,
            _ => EXIT_USAGE,
        };
        Self { code, message: e.to_string() }
    }
}

fn load(path: &Path) -> Result<Circuit, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_circuit(&text).map_err(|e| Failure { code: EXIT_PARSE, message: format!("{}: {e}", path.display()) })
}

fn state_vector(c: &Circuit, backend: Backend) -> Result<dense::StateVector<f64>, Failure> {
    Ok(match backend {
        Backend::Dense => dense::simulate(c)?,
        Backend::Dd => {
            let mut pkg = DdPackage::new();
            let dd = pkg.simulate(c);
            pkg.dd_to_vector(&dd)?
        }
        Backend::Tn => full_state_tn(c)?,
        Backend::Zx => return Err(Failure::usage("the zx backend does not simulate; use dense, dd or tn")),
    })
}

fn run(cli: Cli, out: &mut String, err: &mut String) -> Result<u8, Failure> {
    match cli.command {
        Command::Simulate { backend, full, file } => {
            let c = load(&file)?;
            let state = state_vector(&c, backend)?;
            out.push_str(&amplitude_dump(state.amplitudes(), c.num_qubits(), full));
        }
        Command::Amplitude { backend, basis, file } => {
            let c = load(&file)?;
            let b: BasisState = basis.parse()?;
            b.check_width(c.num_qubits())?;
            let amp = match backend {
                Backend::Dense => dense::simulate::<f64>(&c)?.amplitude(&b),
                Backend::Dd => {
                    let mut pkg = DdPackage::new();
                    let dd = pkg.simulate(&c);
                    pkg.get_amplitude(&dd, &b)?
                }
                Backend::Tn => amplitude_tn(&c, &b)?,
                Backend::Zx => return Err(Failure::usage("the zx backend does not compute amplitudes")),
            };
            out.push_str(&amplitude_line(&b, amp));
            out.push('\n');
        }
        Command::Sample { shots, seed, backend, file } => {
            let c = load(&file)?;
            if backend != Backend::Dense {
                err.push_str(&format!(
                    "note: sampling uses the dense sampler on the state vector reconstructed from the {} backend\n",
                    BackendId::from(backend)
                ));
            }
            let state = state_vector(&c, backend)?;
            let shots = usize::try_from(shots).map_err(|_| Failure::usage("--shots is too large"))?;
            for (bits, count) in dense::sample(&state, shots, seed) {
                out.push_str(&format!("{bits} {count}\n"));
            }
        }
        Command::Verify { method, file1, file2 } => {
            if method == Backend::Tn {
                return Err(Failure::usage("verify supports --method dense, dd or zx"));
            }
            let (c1, c2) = (load(&file1)?, load(&file2)?);
            let verdict = check_equivalence::<f64>(&c1, &c2, method.into())?;
            out.push_str(&verdict.report());
            out.push('\n');
            return Ok(match verdict.status {
                Status::Equivalent => EXIT_OK,
                Status::NotEquivalent => EXIT_NOT_EQUIVALENT,
                Status::Inconclusive => EXIT_INCONCLUSIVE,
            });
        }
        Command::Stats { backend, file } => {
            let c = load(&file)?;
            let line = match backend {
                Backend::Dense => {
                    let state = dense::simulate::<f64>(&c)?;
                    format!("qubits={} amplitudes={} gates={}", c.num_qubits(), state.amplitudes().len(), c.len())
                }
                Backend::Dd => {
                    let mut pkg = DdPackage::new();
                    let dd = pkg.simulate(&c);
                    pkg.stats_line(&dd)
                }
                Backend::Tn => {
                    let net = circuit_to_network::<f64>(&c);
                    stats_line(&net, &greedy_plan(&net))?
                }
                Backend::Zx => reduce_circuit(&c).stats_line(),
            };
            out.push_str(&line);
            out.push('\n');
        }
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let (mut out, mut err) = (String::new(), String::new());
    let code = match run(cli, &mut out, &mut err) {
        Ok(code) => code,
        Err(f) => {
            err.push_str(&format!("error: {}\n", f.message));
            f.code
        }
    };
    let _ = std::io::stdout().write_all(out.as_bytes());
    let _ = std::io::stderr().write_all(err.as_bytes());
    ExitCode::from(code)
}
