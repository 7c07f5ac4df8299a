//! Classical simulation of small quantum circuits, three ways.
//!
//! * [`statevector`]: dense complex amplitudes, the reference every other
//!   backend is checked against.
//! * [`encode`] + [`counter`]: weighted model counting. Toffoli+H circuits are
//!   encoded in the computational basis (one satisfying assignment per path),
//!   Clifford+T circuits in the Pauli basis (real weights only).
//! * [`dd`]: algebraic decision diagrams (ADD) and QMDDs for states and gate
//!   matrices, plus equivalence checking.
//!
//! All backends share one circuit IR ([`circuit::Circuit`]) and one qubit
//! ordering: qubit 0 is the top wire and the most significant bit of a basis
//! index.
//!
//! Data-parallel loops (amplitude updates, counter branches, batch queries)
//! run on rayon when the `parallel` feature is on. [`Execution`] selects the
//! strategy per call; without the feature every strategy runs sequentially.

pub mod circuit;
pub mod cnf;
pub mod counter;
pub mod dd;
pub mod encode;
mod exec;
pub mod numfmt;
pub mod random;
pub mod statevector;

pub use circuit::{BasisString, Circuit, Control, Gate};
pub use cnf::{Lit, WeightedCnf};
pub use exec::Execution;
pub use statevector::StateVector;
