//! Circuit intermediate representation shared by every backend.
//!
//! A [`Circuit`] is an ordered list of [`Gate`]s over `n` qubits, applied
//! left to right to `|0…0⟩`. Qubit 0 is the top wire and the most significant
//! bit of basis indices everywhere in this crate.

mod lower;
mod oracle;
mod text;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use lower::lower_ccnot;
pub use oracle::build_cnf_oracle;
pub use text::{parse_circuit, serialize_circuit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("a circuit needs at least one qubit")]
    NoQubits,
    #[error("qubit {qubit} out of range for a {n_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("qubit {qubit} appears more than once in one gate")]
    DuplicateQubit { qubit: usize },
    #[error("multi-controlled X needs at least one control")]
    NoControls,
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: unknown gate `{name}`")]
    UnknownGate {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("line {line}: {inner}")]
    AtLine {
        line: usize,
        inner: Box<CircuitError>,
    },
    #[error("{0}")]
    Unsupported(String),
    #[error("invalid basis string `{0}`: expected only 0 and 1")]
    BadBasisString(String),
    #[error("basis string has {got} bits, circuit has {expected} qubits")]
    BasisLength { expected: usize, got: usize },
    #[error("oracle: {0}")]
    Oracle(String),
}

pub type Result<T, E = CircuitError> = std::result::Result<T, E>;

/// A control wire together with the value it must carry for the gate to fire.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Control {
    pub qubit: usize,
    /// `true` fires on `|1⟩`, `false` fires on `|0⟩` (a negated control).
    pub positive: bool,
}

impl Control {
    pub fn pos(qubit: usize) -> Self {
        Control {
            qubit,
            positive: true,
        }
    }

    pub fn neg(qubit: usize) -> Self {
        Control {
            qubit,
            positive: false,
        }
    }

    /// Whether basis value `bit` on this wire satisfies the control.
    #[inline]
    pub fn fires_on(self, bit: bool) -> bool {
        bit == self.positive
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    X,
    H,
    S,
    T,
    Cnot,
    Ccnot,
    Mcx,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::T => "t",
            GateKind::Cnot => "cx",
            GateKind::Ccnot => "ccx",
            GateKind::Mcx => "mcx",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    X(usize),
    H(usize),
    S(usize),
    T(usize),
    Cnot {
        control: Control,
        target: usize,
    },
    Ccnot {
        controls: [Control; 2],
        target: usize,
    },
    Mcx {
        controls: Vec<Control>,
        target: usize,
    },
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot {
            control: Control::pos(control),
            target,
        }
    }

    pub fn ccnot(c1: usize, c2: usize, target: usize) -> Self {
        Gate::Ccnot {
            controls: [Control::pos(c1), Control::pos(c2)],
            target,
        }
    }

    pub fn mcx(controls: Vec<Control>, target: usize) -> Self {
        Gate::Mcx { controls, target }
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::X(_) => GateKind::X,
            Gate::H(_) => GateKind::H,
            Gate::S(_) => GateKind::S,
            Gate::T(_) => GateKind::T,
            Gate::Cnot { .. } => GateKind::Cnot,
            Gate::Ccnot { .. } => GateKind::Ccnot,
            Gate::Mcx { .. } => GateKind::Mcx,
        }
    }

    pub fn target(&self) -> usize {
        match self {
            Gate::X(q) | Gate::H(q) | Gate::S(q) | Gate::T(q) => *q,
            Gate::Cnot { target, .. } | Gate::Ccnot { target, .. } | Gate::Mcx { target, .. } => {
                *target
            }
        }
    }

    pub fn controls(&self) -> &[Control] {
        match self {
            Gate::X(_) | Gate::H(_) | Gate::S(_) | Gate::T(_) => &[],
            Gate::Cnot { control, .. } => std::slice::from_ref(control),
            Gate::Ccnot { controls, .. } => controls,
            Gate::Mcx { controls, .. } => controls,
        }
    }

    /// Controls first, target last.
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls()
            .iter()
            .map(|c| c.qubit)
            .chain(std::iter::once(self.target()))
    }

    pub fn has_negated_control(&self) -> bool {
        self.controls().iter().any(|c| !c.positive)
    }

    /// True for the X-family gates (X, CNOT, CCNOT, MCX), which permute basis states.
    pub fn is_classical(&self) -> bool {
        !matches!(self, Gate::H(_) | Gate::S(_) | Gate::T(_))
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        if let Gate::Mcx { controls, .. } = self {
            if controls.is_empty() {
                return Err(CircuitError::NoControls);
            }
        }
        let mut seen = Vec::with_capacity(4);
        for q in self.qubits() {
            if q >= n_qubits {
                return Err(CircuitError::QubitOutOfRange { qubit: q, n_qubits });
            }
            if seen.contains(&q) {
                return Err(CircuitError::DuplicateQubit { qubit: q });
            }
            seen.push(q);
        }
        Ok(())
    }

    /// Gates whose product (applied in order) is the inverse of `self`.
    ///
    /// Only S and T are not self-inverse; they are undone by three S gates
    /// and seven T gates respectively.
    pub fn inverse(&self) -> Vec<Gate> {
        match self {
            Gate::S(q) => vec![Gate::S(*q); 3],
            Gate::T(q) => vec![Gate::T(*q); 7],
            g => vec![g.clone()],
        }
    }

    /// Rewrite CNOT/CCNOT as an MCX with the same controls.
    pub fn to_mcx(&self) -> Gate {
        match self {
            Gate::Cnot { .. } | Gate::Ccnot { .. } | Gate::Mcx { .. } => Gate::Mcx {
                controls: self.controls().to_vec(),
                target: self.target(),
            },
            g => g.clone(),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // A CNOT/CCNOT with a negated control has no `cx`/`ccx` spelling.
        let kind = match self.kind() {
            GateKind::Cnot | GateKind::Ccnot if self.has_negated_control() => GateKind::Mcx,
            k => k,
        };
        f.write_str(kind.name())?;
        for c in self.controls() {
            if c.positive {
                write!(f, " {}", c.qubit)?;
            } else {
                write!(f, " !{}", c.qubit)?;
            }
        }
        write!(f, " {}", self.target())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    /// The empty (identity) circuit on `n_qubits` wires.
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(CircuitError::NoQubits);
        }
        Ok(Circuit {
            n_qubits,
            gates: Vec::new(),
        })
    }

    pub fn with_gates(n_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self> {
        let mut c = Circuit::new(n_qubits)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Reverse gate order and invert every gate.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().flat_map(Gate::inverse).collect(),
        }
    }

    /// Only gates with real matrices: X, H, CNOT, CCNOT, MCX.
    pub fn is_toffoli_h(&self) -> bool {
        self.gates
            .iter()
            .all(|g| !matches!(g, Gate::S(_) | Gate::T(_)))
    }

    /// Only X, H, S, T and positively controlled CNOT.
    pub fn is_clifford_t(&self) -> bool {
        self.gates.iter().all(|g| match g {
            Gate::Cnot { control, .. } => control.positive,
            Gate::Ccnot { .. } | Gate::Mcx { .. } => false,
            _ => true,
        })
    }

    /// Replace every negated control by an X on each side of the gate.
    pub fn expand_negated_controls(&self) -> Circuit {
        let mut gates = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let negated: Vec<usize> = g
                .controls()
                .iter()
                .filter(|c| !c.positive)
                .map(|c| c.qubit)
                .collect();
            if negated.is_empty() {
                gates.push(g.clone());
                continue;
            }
            gates.extend(negated.iter().map(|&q| Gate::X(q)));
            let controls = g.controls().iter().map(|c| Control::pos(c.qubit)).collect();
            gates.push(shrink_mcx(controls, g.target()));
            gates.extend(negated.iter().map(|&q| Gate::X(q)));
        }
        Circuit {
            n_qubits: self.n_qubits,
            gates,
        }
    }

    /// Expand negated controls and spell one- and two-control MCX gates as
    /// CNOT/CCNOT. Semantics are unchanged.
    pub fn canonicalize(&self) -> Circuit {
        let expanded = self.expand_negated_controls();
        Circuit {
            n_qubits: self.n_qubits,
            gates: expanded
                .gates
                .into_iter()
                .map(|g| match g {
                    Gate::Mcx { controls, target } => shrink_mcx(controls, target),
                    g => g,
                })
                .collect(),
        }
    }
}

fn shrink_mcx(controls: Vec<Control>, target: usize) -> Gate {
    match controls.as_slice() {
        [c] => Gate::Cnot {
            control: *c,
            target,
        },
        [a, b] => Gate::Ccnot {
            controls: [*a, *b],
            target,
        },
        _ => Gate::Mcx { controls, target },
    }
}

/// A computational-basis outcome. Bit 0 belongs to qubit 0, the most
/// significant position of the basis index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisString(Vec<bool>);

impl BasisString {
    pub fn new(bits: Vec<bool>) -> Self {
        BasisString(bits)
    }

    pub fn zeros(n: usize) -> Self {
        BasisString(vec![false; n])
    }

    pub fn from_index(index: usize, n: usize) -> Self {
        BasisString((0..n).map(|q| (index >> (n - 1 - q)) & 1 == 1).collect())
    }

    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check_len(&self, n_qubits: usize) -> Result<()> {
        if self.len() != n_qubits {
            return Err(CircuitError::BasisLength {
                expected: n_qubits,
                got: self.len(),
            });
        }
        Ok(())
    }
}

impl FromStr for BasisString {
    type Err = CircuitError;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(CircuitError::BadBasisString(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .and_then(|bits| {
                if bits.is_empty() {
                    Err(CircuitError::BadBasisString(s.to_string()))
                } else {
                    Ok(BasisString(bits))
                }
            })
    }
}

impl fmt::Display for BasisString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}
