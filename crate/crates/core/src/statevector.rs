//! Dense statevector simulation, the reference backend.
//!
//! Amplitude `i` belongs to the basis string given by the big-endian `n`-bit
//! expansion of `i`, so qubit `q` lives at bit `n - 1 - q`. Gates update
//! amplitude pairs in place; no `2^n × 2^n` matrix is ever formed.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{BasisString, Circuit, Gate};
use crate::Execution;

/// Default upper bound on the qubit count of a dense state.
pub const DEFAULT_MAX_QUBITS: usize = 24;

/// States shorter than this are never split across threads.
const PAR_MIN_LEN: usize = 1 << 14;
/// Chunk length for reductions; fixes the summation order.
const REDUCE_CHUNK: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("{n} qubits outside the supported range 1..={cap}")]
    QubitCount { n: usize, cap: usize },
    #[error("qubit {qubit} out of range for a {n_qubits}-qubit state")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("expected {expected} symbols, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("amplitude vector length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("invalid Pauli string `{0}`")]
    BadPauli(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

/// A tensor product of single-qubit Paulis, qubit 0 first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString(pub Vec<Pauli>);

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString(vec![Pauli::I; n])
    }

    /// `Z` on qubit `q`, identity elsewhere.
    pub fn z_on(n: usize, q: usize) -> Self {
        let mut p = PauliString::identity(n);
        p.0[q] = Pauli::Z;
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for PauliString {
    type Err = StateError;

    fn from_str(s: &str) -> Result<Self, StateError> {
        s.chars()
            .map(|c| match c.to_ascii_uppercase() {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                _ => Err(StateError::BadPauli(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(PauliString)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{p:?}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `n` qubits, `1 ≤ n ≤ 24`.
    pub fn init_zero(n: usize) -> Result<Self, StateError> {
        Self::init_zero_capped(n, DEFAULT_MAX_QUBITS)
    }

    /// `|0…0⟩` with an explicit qubit cap.
    pub fn init_zero_capped(n: usize, cap: usize) -> Result<Self, StateError> {
        if n == 0 || n > cap || n >= usize::BITS as usize {
            return Err(StateError::QubitCount { n, cap });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_qubits: n, amps })
    }

    /// Wrap raw amplitudes; the length must be `2^n` with `n ≥ 1`. No
    /// normalization is applied.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, StateError> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(StateError::NotPowerOfTwo(len));
        }
        Ok(StateVector {
            n_qubits: len.trailing_zeros() as usize,
            amps,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    fn check_basis(&self, b: &BasisString) -> Result<(), StateError> {
        if b.len() != self.n_qubits {
            return Err(StateError::LengthMismatch {
                expected: self.n_qubits,
                got: b.len(),
            });
        }
        Ok(())
    }

    fn check_qubit(&self, q: usize) -> Result<(), StateError> {
        if q >= self.n_qubits {
            return Err(StateError::QubitOutOfRange {
                qubit: q,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    #[inline]
    fn bit(&self, q: usize) -> usize {
        1 << (self.n_qubits - 1 - q)
    }

    pub fn amplitude(&self, b: &BasisString) -> Result<Complex64, StateError> {
        self.check_basis(b)?;
        Ok(self.amps[b.index()])
    }

    pub fn apply_gate(&mut self, g: &Gate) -> Result<(), StateError> {
        self.apply_gate_with(g, Execution::default())
    }

    pub fn apply_gate_with(&mut self, g: &Gate, exec: Execution) -> Result<(), StateError> {
        for q in g.qubits() {
            self.check_qubit(q)?;
        }
        let tbit = self.bit(g.target());
        match g {
            Gate::H(_) => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for_each_pair(&mut self.amps, tbit, exec, |_, a, b| {
                    let (x, y) = (*a, *b);
                    *a = (x + y) * s;
                    *b = (x - y) * s;
                });
            }
            Gate::S(_) => phase_on_set_bit(&mut self.amps, tbit, Complex64::i(), exec),
            Gate::T(_) => {
                let w = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
                phase_on_set_bit(&mut self.amps, tbit, w, exec);
            }
            _ => {
                // X family: swap pairs whose control bits all match.
                let mut mask = 0;
                let mut want = 0;
                for c in g.controls() {
                    let b = self.bit(c.qubit);
                    mask |= b;
                    if c.positive {
                        want |= b;
                    }
                }
                for_each_pair(&mut self.amps, tbit, exec, |i, a, b| {
                    if i & mask == want {
                        std::mem::swap(a, b);
                    }
                });
            }
        }
        Ok(())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.reduce(Execution::Sequential, |i| self.amps[i].norm_sqr())
    }

    /// `|amp_b|²`.
    pub fn prob(&self, b: &BasisString) -> Result<f64, StateError> {
        Ok(self.amplitude(b)?.norm_sqr())
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Probability that measuring qubit `q` yields 0.
    pub fn marginal_prob0(&self, q: usize) -> Result<f64, StateError> {
        self.check_qubit(q)?;
        let bit = self.bit(q);
        Ok(self.reduce(Execution::default(), |i| {
            if i & bit == 0 {
                self.amps[i].norm_sqr()
            } else {
                0.0
            }
        }))
    }

    /// `⟨ψ|P|ψ⟩`, real for any Pauli string.
    pub fn expectation(&self, p: &PauliString) -> Result<f64, StateError> {
        if p.len() != self.n_qubits {
            return Err(StateError::LengthMismatch {
                expected: self.n_qubits,
                got: p.len(),
            });
        }
        let mut flip = 0usize;
        let mut zmask = 0usize;
        let mut y_count = 0u32;
        for (q, s) in p.0.iter().enumerate() {
            let b = self.bit(q);
            match s {
                Pauli::I => {}
                Pauli::X => flip |= b,
                Pauli::Z => zmask |= b,
                Pauli::Y => {
                    // Y|b⟩ = i·(-1)^b |1-b⟩
                    flip |= b;
                    zmask |= b;
                    y_count += 1;
                }
            }
        }
        let global = Complex64::i().powu(y_count);
        let raw = self.reduce_complex(Execution::default(), |i| {
            let sign = if (i & zmask).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            self.amps[i ^ flip].conj() * self.amps[i] * sign
        }) * global;
        debug_assert!(raw.im.abs() <= 1e-9, "Pauli expectation not real: {raw}");
        Ok(raw.re)
    }

    fn reduce(&self, exec: Execution, term: impl Fn(usize) -> f64 + Sync + Send) -> f64 {
        let len = self.amps.len();
        let exec = if len >= PAR_MIN_LEN {
            exec
        } else {
            Execution::Sequential
        };
        exec.map_indices(len.div_ceil(REDUCE_CHUNK), |c| {
            let end = ((c + 1) * REDUCE_CHUNK).min(len);
            (c * REDUCE_CHUNK..end).map(&term).sum::<f64>()
        })
        .into_iter()
        .sum()
    }

    fn reduce_complex(
        &self,
        exec: Execution,
        term: impl Fn(usize) -> Complex64 + Sync + Send,
    ) -> Complex64 {
        let len = self.amps.len();
        let exec = if len >= PAR_MIN_LEN {
            exec
        } else {
            Execution::Sequential
        };
        exec.map_indices(len.div_ceil(REDUCE_CHUNK), |c| {
            let end = ((c + 1) * REDUCE_CHUNK).min(len);
            (c * REDUCE_CHUNK..end).map(&term).sum::<Complex64>()
        })
        .into_iter()
        .sum()
    }
}

/// Call `f(i, amp[i], amp[i | stride])` for every index `i` with the stride
/// bit clear.
fn for_each_pair<F>(amps: &mut [Complex64], stride: usize, exec: Execution, f: F)
where
    F: Fn(usize, &mut Complex64, &mut Complex64) + Sync + Send,
{
    let block = 2 * stride;
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && amps.len() >= PAR_MIN_LEN {
        use rayon::prelude::*;
        if amps.len() / block >= 64 {
            amps.par_chunks_mut(block)
                .enumerate()
                .for_each(|(c, chunk)| {
                    let (lo, hi) = chunk.split_at_mut(stride);
                    let base = c * block;
                    for (j, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                        f(base + j, a, b);
                    }
                });
        } else {
            for (c, chunk) in amps.chunks_mut(block).enumerate() {
                let (lo, hi) = chunk.split_at_mut(stride);
                let base = c * block;
                lo.par_iter_mut()
                    .zip(hi.par_iter_mut())
                    .enumerate()
                    .for_each(|(j, (a, b))| f(base + j, a, b));
            }
        }
        return;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = exec;
    for (c, chunk) in amps.chunks_mut(block).enumerate() {
        let (lo, hi) = chunk.split_at_mut(stride);
        let base = c * block;
        for (j, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
            f(base + j, a, b);
        }
    }
}

fn phase_on_set_bit(amps: &mut [Complex64], bit: usize, phase: Complex64, exec: Execution) {
    for_each_pair(amps, bit, exec, |_, _, b| *b *= phase);
}

/// Run `c` on `|0…0⟩`.
pub fn simulate(c: &Circuit) -> Result<StateVector, StateError> {
    simulate_with(c, Execution::default())
}

pub fn simulate_with(c: &Circuit, exec: Execution) -> Result<StateVector, StateError> {
    let mut s = StateVector::init_zero(c.n_qubits())?;
    for g in c.gates() {
        s.apply_gate_with(g, exec)?;
    }
    Ok(s)
}
