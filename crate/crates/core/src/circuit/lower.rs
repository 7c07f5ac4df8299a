use super::{Circuit, CircuitError, Gate, Result};

/// T† as gates from the vocabulary: S·S·S·T = S†·T = diag(1, e^{-iπ/4}).
fn t_dagger(q: usize, out: &mut Vec<Gate>) {
    out.extend([Gate::S(q), Gate::S(q), Gate::S(q), Gate::T(q)]);
}

/// The exact seven-T Toffoli decomposition, T† expanded via [`t_dagger`].
fn push_toffoli(a: usize, b: usize, c: usize, out: &mut Vec<Gate>) {
    out.push(Gate::H(c));
    out.push(Gate::cnot(b, c));
    t_dagger(c, out);
    out.push(Gate::cnot(a, c));
    out.push(Gate::T(c));
    out.push(Gate::cnot(b, c));
    t_dagger(c, out);
    out.push(Gate::cnot(a, c));
    out.push(Gate::T(b));
    out.push(Gate::T(c));
    out.push(Gate::H(c));
    out.push(Gate::cnot(a, b));
    out.push(Gate::T(a));
    t_dagger(b, out);
    out.push(Gate::cnot(a, b));
}

/// Replace every CCNOT by Clifford+T gates implementing the same unitary exactly.
///
/// Input must be negation-free (see [`Circuit::canonicalize`]). A one- or
/// two-control MCX is accepted and treated as CNOT/CCNOT; more controls are
/// rejected.
pub fn lower_ccnot(c: &Circuit) -> Result<Circuit> {
    let mut gates = Vec::with_capacity(c.len());
    for g in c.gates() {
        if g.has_negated_control() {
            return Err(CircuitError::Unsupported(format!(
                "`{g}` has a negated control; canonicalize the circuit before lowering"
            )));
        }
        match g.controls() {
            [] => gates.push(g.clone()),
            [ctl] => gates.push(Gate::cnot(ctl.qubit, g.target())),
            [a, b] => push_toffoli(a.qubit, b.qubit, g.target(), &mut gates),
            _ => {
                return Err(CircuitError::Unsupported(format!(
                    "`{g}` has more than two controls; only CCNOT can be lowered"
                )))
            }
        }
    }
    Circuit::with_gates(c.n_qubits(), gates)
}
