//! Circuit-to-weighted-CNF encodings.
//!
//! * [`comp`]: computational basis, for Toffoli+H circuits. Satisfying
//!   assignments are the paths of the path-sum expansion and the weighted
//!   count with fixed outputs is an amplitude.
//! * [`pauli`]: Pauli basis, for Clifford+T circuits. Satisfying assignments
//!   are signed Pauli strings of the output density matrix, so all weights
//!   stay real even though the gates are complex.
//!
//! Both encoders allocate a fresh variable layer only for the wires a gate
//! changes; untouched wires keep the previous layer's variable.

pub mod comp;
pub mod pauli;

use thiserror::Error;

use crate::circuit::{CircuitError, Gate};
use crate::cnf::CnfError;

pub use comp::{amplitude_wmc, amplitudes_wmc, encode_circuit_comp, path_count, CompEncoding};
pub use pauli::{
    encode_circuit_pauli, encode_gate_pauli, encode_init_pauli, expectation_pauli_wmc,
    expectation_z_wmc, prob0_pauli, PauliEncoding, PauliTerm,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("gate {index} (`{gate}`) is not supported by the {basis} encoding")]
    UnsupportedGate {
        index: usize,
        gate: String,
        basis: &'static str,
    },
    #[error("qubit {qubit} out of range for a {n_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Cnf(#[from] CnfError),
}

fn unsupported(index: usize, gate: &Gate, basis: &'static str) -> EncodeError {
    EncodeError::UnsupportedGate {
        index,
        gate: gate.to_string(),
        basis,
    }
}
