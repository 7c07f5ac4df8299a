//! Computational-basis encoding of Toffoli+H circuits.
//!
//! Variable `x_{q,t}` is the value of wire `q` after `t` gates. The input
//! layer is fixed to `|0…0⟩` by negative units. Gate constraints:
//!
//! * X: `x' ⇔ ¬x`
//! * CNOT, CCNOT, MCX: `t' ⇔ t ⊕ (ℓ_1 ∧ … ∧ ℓ_k)`, each `ℓ_i` the control
//!   variable with the control's polarity; controls keep their variable
//! * H: fresh unconstrained `x'` and a weight variable `h ⇔ (x ∧ x')` with
//!   `W(h) = -1/√2`, `W(¬h) = 1/√2`, so each assignment carries the matrix
//!   entry `⟨x'|H|x⟩`
//!
//! Every satisfying assignment is one path through intermediate basis
//! states, weighted by the product of its transition amplitudes.

use std::f64::consts::FRAC_1_SQRT_2;

use super::{unsupported, EncodeError};
use crate::circuit::{BasisString, Circuit, Gate};
use crate::cnf::{Lit, WeightedCnf};
use crate::counter::{count_weighted_with, model_count, CountOptions};
use crate::Execution;

/// The encoded formula plus the registry that names its variables.
#[derive(Clone, Debug)]
pub struct CompEncoding {
    formula: WeightedCnf,
    /// `layers[t][q]`: variable of wire `q` after `t` gates.
    layers: Vec<Vec<u32>>,
    /// `(gate index, h variable)` for every Hadamard.
    h_vars: Vec<(usize, u32)>,
}

impl CompEncoding {
    pub fn formula(&self) -> &WeightedCnf {
        &self.formula
    }

    pub fn n_qubits(&self) -> usize {
        self.layers[0].len()
    }

    /// Number of gate steps encoded.
    pub fn steps(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn var_at(&self, qubit: usize, step: usize) -> u32 {
        self.layers[step][qubit]
    }

    pub fn final_vars(&self) -> &[u32] {
        self.layers.last().expect("input layer")
    }

    pub fn h_vars(&self) -> &[(usize, u32)] {
        &self.h_vars
    }

    /// Units pinning the output layer to `b`.
    pub fn output_units(&self, b: &BasisString) -> Result<Vec<Lit>, EncodeError> {
        b.check_len(self.n_qubits())?;
        Ok(self
            .final_vars()
            .iter()
            .zip(b.bits())
            .map(|(&v, &bit)| Lit::new(v, !bit))
            .collect())
    }

    /// The formula conjoined with the output units for `b`; its weighted
    /// count is the amplitude of `b`.
    pub fn with_output(&self, b: &BasisString) -> Result<WeightedCnf, EncodeError> {
        Ok(self.formula.with_units(self.output_units(b)?)?)
    }
}

fn layer_var(f: &mut WeightedCnf, layer: &mut [u32], q: usize) -> (u32, u32) {
    let old = layer[q];
    let new = f.new_var();
    layer[q] = new;
    (old, new)
}

/// `t' ⇔ t ⊕ (ℓ_1 ∧ … ∧ ℓ_k)` in `2k + 2` clauses.
fn controlled_flip(f: &mut WeightedCnf, guard: &[Lit], t: u32, t_new: u32) {
    for &l in guard {
        f.push_clause_unchecked(vec![l, Lit::neg(t), Lit::pos(t_new)]);
        f.push_clause_unchecked(vec![l, Lit::pos(t), Lit::neg(t_new)]);
    }
    let negated: Vec<Lit> = guard.iter().map(|&l| !l).collect();
    let mut a = negated.clone();
    a.extend([Lit::pos(t), Lit::pos(t_new)]);
    f.push_clause_unchecked(a);
    let mut b = negated;
    b.extend([Lit::neg(t), Lit::neg(t_new)]);
    f.push_clause_unchecked(b);
}

/// Encode `c`, which must use only X, H, CNOT, CCNOT and MCX.
pub fn encode_circuit_comp(c: &Circuit) -> Result<CompEncoding, EncodeError> {
    let n = c.n_qubits();
    let mut f = WeightedCnf::new(0);
    let mut layer: Vec<u32> = (0..n).map(|_| f.new_var()).collect();
    for &v in &layer {
        f.push_clause_unchecked(vec![Lit::neg(v)]);
    }
    let mut layers = vec![layer.clone()];
    let mut h_vars = Vec::new();

    for (i, g) in c.gates().iter().enumerate() {
        match g {
            Gate::S(_) | Gate::T(_) => return Err(unsupported(i, g, "computational-basis")),
            Gate::X(q) => {
                let (x, x_new) = layer_var(&mut f, &mut layer, *q);
                f.push_clause_unchecked(vec![Lit::pos(x), Lit::pos(x_new)]);
                f.push_clause_unchecked(vec![Lit::neg(x), Lit::neg(x_new)]);
            }
            Gate::H(q) => {
                let (x, x_new) = layer_var(&mut f, &mut layer, *q);
                let h = f.new_var();
                f.push_clause_unchecked(vec![Lit::neg(h), Lit::pos(x)]);
                f.push_clause_unchecked(vec![Lit::neg(h), Lit::pos(x_new)]);
                f.push_clause_unchecked(vec![Lit::pos(h), Lit::neg(x), Lit::neg(x_new)]);
                f.set_weight(h, -FRAC_1_SQRT_2, FRAC_1_SQRT_2);
                h_vars.push((i, h));
            }
            Gate::Cnot { .. } | Gate::Ccnot { .. } | Gate::Mcx { .. } => {
                let guard: Vec<Lit> = g
                    .controls()
                    .iter()
                    .map(|ctl| Lit::new(layer[ctl.qubit], !ctl.positive))
                    .collect();
                let (t, t_new) = layer_var(&mut f, &mut layer, g.target());
                controlled_flip(&mut f, &guard, t, t_new);
            }
        }
        layers.push(layer.clone());
    }
    Ok(CompEncoding {
        formula: f,
        layers,
        h_vars,
    })
}

/// Real amplitude `⟨b|C|0…0⟩` by weighted model counting.
pub fn amplitude_wmc(c: &Circuit, b: &BasisString) -> Result<f64, EncodeError> {
    amplitude_wmc_with(c, b, &CountOptions::default())
}

pub fn amplitude_wmc_with(
    c: &Circuit,
    b: &BasisString,
    opts: &CountOptions,
) -> Result<f64, EncodeError> {
    let enc = encode_circuit_comp(c)?;
    Ok(count_weighted_with(&enc.with_output(b)?, opts))
}

/// All `2^n` amplitudes, one count per basis string. With a parallel
/// strategy the counts run concurrently and each count is sequential.
pub fn amplitudes_wmc(c: &Circuit, exec: Execution) -> Result<Vec<f64>, EncodeError> {
    let enc = encode_circuit_comp(c)?;
    let n = c.n_qubits();
    let inner = CountOptions {
        exec: if exec.is_parallel() {
            Execution::Sequential
        } else {
            exec
        },
        ..CountOptions::default()
    };
    let formulas: Vec<WeightedCnf> = (0..1usize << n)
        .map(|i| enc.with_output(&BasisString::from_index(i, n)))
        .collect::<Result<_, _>>()?;
    Ok(exec.map_indices(formulas.len(), |i| {
        count_weighted_with(&formulas[i], &inner)
    }))
}

/// Number of satisfying assignments of the unmeasured circuit formula, which
/// is the number of paths in the path-sum expansion.
pub fn path_count(c: &Circuit) -> Result<u64, EncodeError> {
    let enc = encode_circuit_comp(c)?;
    Ok(model_count(&enc.formula).round() as u64)
}
