//! Command-line front end for the `qwmc` simulators.
//!
//! Every command writes its data to `out` and diagnostics (notices, wall
//! time) to `err`, so the data lines are byte-identical across runs.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qwmc::circuit::{
    build_cnf_oracle, lower_ccnot, parse_circuit, serialize_circuit, BasisString, Circuit,
    CircuitError, Gate,
};
use qwmc::cnf::{export_weighted, parse_dimacs, CnfError, WeightedCnf};
use qwmc::counter::{count_weighted_with, CountOptions};
use qwmc::dd::{equiv_check, simulate_dd, DdError, DdKind, Verdict};
use qwmc::encode::{
    amplitude_wmc, amplitudes_wmc, encode_circuit_comp, encode_circuit_pauli, prob0_pauli,
    EncodeError,
};
use qwmc::numfmt::format_sig;
use qwmc::random::{clifford_t_circuit, full_gate_set_circuit, rng, toffoli_h_circuit};
use qwmc::statevector::{simulate_with, StateError};
use qwmc::Execution;
use thiserror::Error;

mod check;

/// Significant digits of every printed value.
pub const DIGITS: usize = 12;

/// Largest circuit for which a command enumerates all `2ⁿ` outcomes.
pub const MAX_ENUMERATED_QUBITS: usize = 16;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_CAPABILITY: i32 = 2;
pub const EXIT_EQUAL_UP_TO_FACTOR: i32 = 3;
pub const EXIT_NOT_EQUAL: i32 = 4;
pub const EXIT_CHECK_FAILED: i32 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Circuit { path: PathBuf, source: CircuitError },
    #[error("{}: {source}", path.display())]
    Cnf { path: PathBuf, source: CnfError },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Capability(String),
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Capability(_) => EXIT_CAPABILITY,
            _ => EXIT_PARSE,
        }
    }
}

impl From<EncodeError> for CliError {
    fn from(e: EncodeError) -> Self {
        match e {
            EncodeError::UnsupportedGate { .. } => CliError::Capability(e.to_string()),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<StateError> for CliError {
    fn from(e: StateError) -> Self {
        match e {
            StateError::QubitCount { .. } => CliError::Capability(e.to_string()),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<DdError> for CliError {
    fn from(e: DdError) -> Self {
        match e {
            DdError::QubitCount { .. } => CliError::Capability(e.to_string()),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<CircuitError> for CliError {
    fn from(e: CircuitError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qwmc",
    version,
    about = "Quantum circuit simulation by statevector, weighted model counting and decision diagrams"
)]
pub struct Cli {
    /// Run every data-parallel kernel on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Answer one query about the output state of a circuit.
    Sim(SimArgs),
    /// Write the weighted CNF encoding of a circuit.
    Encode(EncodeArgs),
    /// Run every applicable backend and compare their answers.
    Check { file: PathBuf },
    /// Build the quantum oracle circuit of a DIMACS formula.
    Oracle {
        dimacs: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weighted model count of a DIMACS formula.
    Count { cnf: PathBuf },
    /// Decide whether two circuits implement the same unitary.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = DdChoice::Qmdd)]
        kind: DdChoice,
    },
    /// Size of the decision diagram of a circuit's output state.
    Stats {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = DdChoice::Qmdd)]
        kind: DdChoice,
    },
    /// Print a seeded random circuit.
    Random(RandomArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Sv,
    Wmc,
    Pauli,
    Add,
    Qmdd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DdChoice {
    Add,
    Qmdd,
}

impl From<DdChoice> for DdKind {
    fn from(d: DdChoice) -> Self {
        match d {
            DdChoice::Add => DdKind::Add,
            DdChoice::Qmdd => DdKind::Qmdd,
        }
    }
}

#[derive(Debug, Args)]
pub struct SimArgs {
    pub file: PathBuf,
    #[arg(long, value_enum, default_value_t = Backend::Sv)]
    pub backend: Backend,
    #[command(flatten)]
    pub query: QueryArgs,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct QueryArgs {
    /// Amplitude of one basis string.
    #[arg(long, value_name = "BITS")]
    pub amplitude: Option<String>,
    /// Probability of one basis string.
    #[arg(long, value_name = "BITS")]
    pub prob: Option<String>,
    /// Probability of reading 0 on one qubit.
    #[arg(long, value_name = "QUBIT")]
    pub prob0: Option<usize>,
    /// Probability of every basis string.
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    Comp,
    Pauli,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub basis: Basis,
    /// A basis string for `comp`, a qubit index for `pauli`.
    #[arg(long)]
    pub measure: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    ToffoliH,
    CliffordT,
    Full,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long, value_enum, default_value_t = Family::ToffoliH)]
    pub family: Family,
    #[arg(long)]
    pub qubits: usize,
    #[arg(long)]
    pub gates: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cap on T gates for the Clifford+T family.
    #[arg(long)]
    pub max_t: Option<usize>,
}

/// Parse arguments, run the command and return the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match run(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli, out: &mut impl Write, err: &mut impl Write) -> Result<i32, CliError> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let start = Instant::now();
    let code = match &cli.command {
        Command::Sim(args) => sim(args, exec, out, err)?,
        Command::Encode(args) => encode(args, out, err)?,
        Command::Check { file } => check::run(&load_circuit(file)?, exec, out, err)?,
        Command::Oracle { dimacs, out: path } => {
            let circ = build_cnf_oracle(&load_cnf(dimacs)?)?;
            emit(&serialize_circuit(&circ), path.as_deref(), out)?;
            EXIT_OK
        }
        Command::Count { cnf } => {
            let f = load_cnf(cnf)?;
            let value = count_weighted_with(
                &f,
                &CountOptions {
                    exec,
                    ..Default::default()
                },
            );
            writeln!(out, "{}", fmt(value))?;
            EXIT_OK
        }
        Command::Equiv { a, b, kind } => equiv(a, b, (*kind).into(), out)?,
        Command::Stats { file, kind } => {
            let circ = load_circuit(file)?;
            let (m, e) = simulate_dd(&circ, (*kind).into())?;
            writeln!(
                out,
                "kind={} nodes={} terminals={}",
                m.kind(),
                m.node_count(e),
                m.terminal_count(e)
            )?;
            EXIT_OK
        }
        Command::Random(args) => {
            let circ = random_circuit(args)?;
            write!(out, "{}", serialize_circuit(&circ))?;
            EXIT_OK
        }
    };
    writeln!(
        err,
        "wall time: {:.3} ms",
        start.elapsed().as_secs_f64() * 1e3
    )?;
    Ok(code)
}

pub fn load_circuit(path: &Path) -> Result<Circuit, CliError> {
    parse_circuit(&read(path)?).map_err(|source| CliError::Circuit {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_cnf(path: &Path) -> Result<WeightedCnf, CliError> {
    parse_dimacs(&read(path)?).map_err(|source| CliError::Cnf {
        path: path.to_path_buf(),
        source,
    })
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(text: &str, path: Option<&Path>, out: &mut impl Write) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => Ok(write!(out, "{text}")?),
    }
}

/// A value with [`DIGITS`] significant digits; negative zero prints as `0`.
pub fn fmt(v: f64) -> String {
    format_sig(v + 0.0, DIGITS)
}

pub fn fmt_complex(z: Complex64) -> String {
    if z.im.abs() <= 1e-15 {
        return fmt(z.re);
    }
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{}i", fmt(z.re), fmt(z.im.abs()))
}

fn basis(bits: &str, n: usize) -> Result<BasisString, CliError> {
    let b: BasisString = bits.parse()?;
    b.check_len(n)?;
    Ok(b)
}

fn qubit(q: usize, n: usize) -> Result<usize, CliError> {
    if q >= n {
        return Err(CircuitError::QubitOutOfRange {
            qubit: q,
            n_qubits: n,
        }
        .into());
    }
    Ok(q)
}

fn enumerable(n: usize, what: &str) -> Result<(), CliError> {
    if n > MAX_ENUMERATED_QUBITS {
        return Err(CliError::Capability(format!(
            "{what} enumerates 2^{n} outcomes; the limit is {MAX_ENUMERATED_QUBITS} qubits"
        )));
    }
    Ok(())
}

/// The circuit as the Pauli backend needs it, CCNOTs lowered to Clifford+T.
pub fn pauli_ready(circ: &Circuit, err: &mut impl Write) -> Result<Circuit, CliError> {
    if circ.is_clifford_t() {
        return Ok(circ.clone());
    }
    let canonical = circ.canonicalize();
    let toffolis = canonical
        .gates()
        .iter()
        .filter(|g| matches!(g, Gate::Ccnot { .. }))
        .count();
    let lowered =
        lower_ccnot(&canonical).map_err(|e| CliError::Capability(format!("pauli backend: {e}")))?;
    if toffolis > 0 {
        writeln!(
            err,
            "note: lowered {toffolis} CCNOT gate(s) to Clifford+T for the pauli backend"
        )?;
    }
    Ok(lowered)
}

fn marginal0(probs: &[f64], q: usize, n: usize) -> f64 {
    probs
        .iter()
        .enumerate()
        .filter(|(i, _)| (i >> (n - 1 - q)) & 1 == 0)
        .map(|(_, p)| p)
        .sum()
}

fn sim(
    args: &SimArgs,
    exec: Execution,
    out: &mut impl Write,
    err: &mut impl Write,
) -> Result<i32, CliError> {
    let circ = load_circuit(&args.file)?;
    let n = circ.n_qubits();
    let q = &args.query;
    if q.all {
        enumerable(n, "--all")?;
    }
    let lines: Vec<String> = match args.backend {
        Backend::Sv => {
            let s = simulate_with(&circ, exec)?;
            if let Some(bits) = &q.amplitude {
                vec![fmt_complex(s.amplitude(&basis(bits, n)?)?)]
            } else if let Some(bits) = &q.prob {
                vec![fmt(s.prob(&basis(bits, n)?)?)]
            } else if let Some(k) = q.prob0 {
                vec![fmt(s.marginal_prob0(qubit(k, n)?)?)]
            } else {
                all_lines(&s.probabilities(), n)
            }
        }
        Backend::Wmc => {
            if let Some(bits) = &q.amplitude {
                vec![fmt(amplitude_wmc(&circ, &basis(bits, n)?)?)]
            } else if let Some(bits) = &q.prob {
                vec![fmt(amplitude_wmc(&circ, &basis(bits, n)?)?.powi(2))]
            } else {
                enumerable(n, "the wmc backend without a basis string")?;
                let probs: Vec<f64> = amplitudes_wmc(&circ, exec)?.iter().map(|a| a * a).collect();
                match q.prob0 {
                    Some(k) => vec![fmt(marginal0(&probs, qubit(k, n)?, n))],
                    None => all_lines(&probs, n),
                }
            }
        }
        Backend::Pauli => {
            let Some(k) = q.prob0 else {
                return Err(CliError::Capability(
                    "the pauli backend answers --prob0 queries only".into(),
                ));
            };
            let k = qubit(k, n)?;
            let lowered = pauli_ready(&circ, err)?;
            vec![fmt(prob0_pauli(&lowered, k)?)]
        }
        Backend::Add | Backend::Qmdd => {
            let kind = if args.backend == Backend::Add {
                DdKind::Add
            } else {
                DdKind::Qmdd
            };
            let (m, e) = simulate_dd(&circ, kind)?;
            if let Some(bits) = &q.amplitude {
                vec![fmt_complex(m.amplitude(e, &basis(bits, n)?)?)]
            } else if let Some(bits) = &q.prob {
                vec![fmt(m.measure_prob(e, &basis(bits, n)?)?)]
            } else {
                enumerable(n, "this query on a decision diagram")?;
                let probs = m.probabilities(e)?;
                match q.prob0 {
                    Some(k) => vec![fmt(marginal0(&probs, qubit(k, n)?, n))],
                    None => all_lines(&probs, n),
                }
            }
        }
    };
    for line in lines {
        writeln!(out, "{line}")?;
    }
    Ok(EXIT_OK)
}

fn all_lines(probs: &[f64], n: usize) -> Vec<String> {
    probs
        .iter()
        .enumerate()
        .map(|(i, p)| format!("{} {}", BasisString::from_index(i, n), fmt(*p)))
        .collect()
}

fn encode(args: &EncodeArgs, out: &mut impl Write, err: &mut impl Write) -> Result<i32, CliError> {
    let circ = load_circuit(&args.file)?;
    let n = circ.n_qubits();
    let formula = match args.basis {
        Basis::Comp => {
            let enc = encode_circuit_comp(&circ)?;
            match &args.measure {
                Some(bits) => enc.with_output(&basis(bits, n)?)?,
                None => enc.formula().clone(),
            }
        }
        Basis::Pauli => {
            let enc = encode_circuit_pauli(&pauli_ready(&circ, err)?)?;
            match &args.measure {
                Some(text) => {
                    let k: usize = text.parse().map_err(|_| {
                        CliError::Input(format!(
                            "--measure for the pauli basis takes a qubit index, got `{text}`"
                        ))
                    })?;
                    let units = enc.measure_units(qubit(k, n)?)?;
                    enc.formula().with_units(units).map_err(EncodeError::from)?
                }
                None => enc.formula(),
            }
        }
    };
    writeln!(
        err,
        "encoded {} variables, {} clauses",
        formula.num_vars(),
        formula.num_clauses()
    )?;
    emit(&export_weighted(&formula), args.out.as_deref(), out)?;
    Ok(EXIT_OK)
}

fn equiv(a: &Path, b: &Path, kind: DdKind, out: &mut impl Write) -> Result<i32, CliError> {
    let (ca, cb) = (load_circuit(a)?, load_circuit(b)?);
    let code = match equiv_check(&ca, &cb, kind)? {
        Verdict::Equal => {
            writeln!(out, "equal")?;
            EXIT_OK
        }
        Verdict::EqualUpToGlobalFactor(f) => {
            writeln!(out, "equal up to global factor {}", fmt_complex(f))?;
            EXIT_EQUAL_UP_TO_FACTOR
        }
        Verdict::NotEqual => {
            writeln!(out, "not equal")?;
            EXIT_NOT_EQUAL
        }
    };
    Ok(code)
}

pub fn random_circuit(args: &RandomArgs) -> Result<Circuit, CliError> {
    if args.qubits == 0 {
        return Err(CircuitError::NoQubits.into());
    }
    let mut r = rng(args.seed);
    Ok(match args.family {
        Family::ToffoliH => toffoli_h_circuit(&mut r, args.qubits, args.gates),
        Family::CliffordT => clifford_t_circuit(
            &mut r,
            args.qubits,
            args.gates,
            args.max_t.unwrap_or(args.gates),
        ),
        Family::Full => full_gate_set_circuit(&mut r, args.qubits, args.gates),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt(-1.0 / 24.0), "-0.0416666666667");
        assert_eq!(fmt(0.5 + 2f64.sqrt() / 4.0), "0.853553390593");
        assert_eq!(fmt(-0.0), "0");
        assert_eq!(fmt(1.0), "1");
    }

    #[test]
    fn complex_values() {
        assert_eq!(fmt_complex(Complex64::new(0.5, 0.0)), "0.5");
        assert_eq!(fmt_complex(Complex64::new(0.5, -0.25)), "0.5-0.25i");
        assert_eq!(fmt_complex(Complex64::new(0.0, 1.0)), "0+1i");
    }

    #[test]
    fn error_exit_codes() {
        assert_eq!(
            CliError::Capability("x".into()).exit_code(),
            EXIT_CAPABILITY
        );
        assert_eq!(CliError::Input("x".into()).exit_code(), EXIT_PARSE);
        let unsupported = EncodeError::UnsupportedGate {
            index: 0,
            gate: "t 0".into(),
            basis: "computational-basis",
        };
        assert_eq!(CliError::from(unsupported).exit_code(), EXIT_CAPABILITY);
    }

    #[test]
    fn random_needs_a_qubit() {
        let args = RandomArgs {
            family: Family::Full,
            qubits: 0,
            gates: 3,
            seed: 0,
            max_t: None,
        };
        assert!(random_circuit(&args).is_err());
    }
}
