//! Circuit equivalence through the matrix diagram of `U · V⁻¹`.

use std::collections::HashMap;

use num_complex::Complex64;

use super::{DdError, DdKind, Edge, Manager, NodeId};
use crate::circuit::Circuit;

/// Tolerance on the global factor.
pub const FACTOR_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Verdict {
    Equal,
    /// Equal up to a unit-modulus factor other than 1.
    EqualUpToGlobalFactor(Complex64),
    NotEqual,
}

impl Manager {
    /// `Some(f)` when `e` is `f · I` up to the factor tolerance.
    pub fn identity_factor(&self, e: Edge) -> Option<Complex64> {
        let mut memo = HashMap::new();
        self.identity_factor_rec(e, &mut memo)
    }

    fn identity_factor_rec(
        &self,
        e: Edge,
        memo: &mut HashMap<NodeId, Option<Complex64>>,
    ) -> Option<Complex64> {
        if e.is_zero() {
            return None;
        }
        if let super::Node::Terminal(v) = self.node(e.node) {
            return Some(e.weight * v);
        }
        if let Some(&f) = memo.get(&e.node) {
            return f.map(|f| f * e.weight);
        }
        let kids = self.kids(e.node);
        let unit = if !kids[1].is_zero() || !kids[2].is_zero() {
            None
        } else {
            match (
                self.identity_factor_rec(kids[0], memo),
                self.identity_factor_rec(kids[3], memo),
            ) {
                (Some(a), Some(b)) if (a - b).norm() <= FACTOR_TOLERANCE * a.norm().max(1.0) => {
                    Some(a)
                }
                _ => None,
            }
        };
        memo.insert(e.node, unit);
        unit.map(|f| f * e.weight)
    }
}

/// Compare the unitaries of `a` and `b` by building `U_a · U_b⁻¹` and
/// testing it against the identity.
pub fn equiv_check(a: &Circuit, b: &Circuit, kind: DdKind) -> Result<Verdict, DdError> {
    if a.n_qubits() != b.n_qubits() {
        return Err(DdError::QubitCountMismatch {
            a: a.n_qubits(),
            b: b.n_qubits(),
        });
    }
    let mut m = Manager::new(kind, a.n_qubits())?;
    let mut acc = m.identity();
    for g in b.inverse().gates().iter().chain(a.gates()) {
        let gm = m.from_gate(g)?;
        acc = m.multiply(gm, acc)?;
    }
    Ok(match m.identity_factor(acc) {
        Some(f) if (f - 1.0).norm() <= FACTOR_TOLERANCE => Verdict::Equal,
        Some(f) if (f.norm() - 1.0).abs() <= FACTOR_TOLERANCE => Verdict::EqualUpToGlobalFactor(f),
        _ => Verdict::NotEqual,
    })
}
