use std::collections::BTreeMap;

use super::{Circuit, CircuitError, Control, Gate, Result};
use crate::cnf::{Lit, WeightedCnf};

/// Build the "evaluate a CNF on every input at once" circuit.
///
/// Layout: qubits `0..v` hold the variables (variable `i` on qubit `i-1`),
/// then one ancilla per clause with two or more distinct literals, then the
/// output qubit. The circuit puts the inputs in uniform superposition,
/// computes each multi-literal clause's negation into its ancilla, flips the
/// output when every clause holds (single-literal clauses are read straight
/// off their variable wire) and uncomputes the ancillas. Measuring the output
/// as 1 therefore has probability `#models / 2^v`.
pub fn build_cnf_oracle(formula: &WeightedCnf) -> Result<Circuit> {
    let v = formula.num_vars() as usize;
    let mut clauses: Vec<Vec<Lit>> = Vec::with_capacity(formula.num_clauses());
    for (j, clause) in formula.clauses().iter().enumerate() {
        let mut lits: Vec<Lit> = Vec::with_capacity(clause.len());
        for &lit in clause {
            if lit.var() as usize > v {
                return Err(CircuitError::Oracle(format!(
                    "clause {} references variable {} but only {v} are declared",
                    j + 1,
                    lit.var()
                )));
            }
            if lits.contains(&!lit) {
                return Err(CircuitError::Oracle(format!(
                    "clause {} is tautological (contains {lit} and {})",
                    j + 1,
                    !lit
                )));
            }
            if !lits.contains(&lit) {
                lits.push(lit);
            }
        }
        if lits.is_empty() {
            return Err(CircuitError::Oracle(format!("clause {} is empty", j + 1)));
        }
        clauses.push(lits);
    }

    let ancillas = clauses.iter().filter(|c| c.len() >= 2).count();
    let output = v + ancillas;
    let mut circuit = Circuit::new(v + ancillas + 1)?;
    for q in 0..v {
        circuit.push(Gate::H(q))?;
    }

    // Ancilla j fires when every literal of its clause is false.
    let mut compute = Vec::with_capacity(ancillas);
    // qubit -> required polarity for the output gate; None marks a contradiction.
    let mut output_controls: BTreeMap<usize, Option<bool>> = BTreeMap::new();
    let mut require = |qubit: usize, positive: bool| {
        output_controls
            .entry(qubit)
            .and_modify(|p| {
                if *p != Some(positive) {
                    *p = None;
                }
            })
            .or_insert(Some(positive));
    };
    for clause in &clauses {
        if let [lit] = clause.as_slice() {
            require(lit.var() as usize - 1, !lit.is_negated());
            continue;
        }
        let ancilla = v + compute.len();
        let controls = clause
            .iter()
            .map(|l| Control {
                qubit: l.var() as usize - 1,
                positive: l.is_negated(),
            })
            .collect();
        compute.push(controlled_x(controls, ancilla));
        require(ancilla, false);
    }

    for g in &compute {
        circuit.push(g.clone())?;
    }
    if output_controls.values().all(Option::is_some) {
        let controls: Vec<Control> = output_controls
            .iter()
            .map(|(&qubit, p)| Control {
                qubit,
                positive: p.unwrap(),
            })
            .collect();
        if controls.is_empty() {
            circuit.push(Gate::X(output))?;
        } else {
            circuit.push(controlled_x(controls, output))?;
        }
    }
    // else: two unit clauses contradict, the formula has no model and the
    // output is never flipped.
    for g in compute.iter().rev() {
        circuit.push(g.clone())?;
    }
    Ok(circuit)
}

/// Positive one- and two-control gates get their CNOT/CCNOT spelling.
fn controlled_x(controls: Vec<Control>, target: usize) -> Gate {
    match controls.as_slice() {
        [c] if c.positive => Gate::cnot(c.qubit, target),
        [a, b] if a.positive && b.positive => Gate::ccnot(a.qubit, b.qubit, target),
        _ => Gate::mcx(controls, target),
    }
}
