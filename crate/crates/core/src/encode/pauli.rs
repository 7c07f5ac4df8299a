//! Pauli-basis encoding of Clifford+T circuits.
//!
//! A signed Pauli string is stored as bit pairs `σ[x_q, z_q]` (`00` I,
//! `01` Z, `10` X, `11` Y) plus a sign bit `r`. The input layer leaves every
//! `z` free and fixes `x = 0`, `r = 0`, so its `2^n` models are exactly the
//! Pauli strings in the expansion of `|0…0⟩⟨0…0|` (the common `1/2^n`
//! factor is dropped). Each gate maps the layer through conjugation:
//!
//! | gate | update |
//! |------|--------|
//! | H    | `x' = z`, `z' = x`, `r' = r ⊕ xz` |
//! | S    | `z' = z ⊕ x`, `r' = r ⊕ xz` |
//! | X    | `r' = r ⊕ z` |
//! | CNOT | `x_t' = x_t ⊕ x_c`, `z_c' = z_c ⊕ z_t`, `r' = r ⊕ x_c z_t (x_t ⊕ ¬z_c)` |
//! | T    | `x ∨ (z' ⇔ z)`, `r' = r ⊕ x z ¬z'`, `u ⇔ x` with `W(u) = 1/√2` |
//!
//! T is the only branching gate: an X or Y component splits into X and Y
//! halves, each weighted `1/√2` through `u`. The final sign bit weighs
//! `W(r) = -1`, `W(¬r) = 1`. Pinning the output layer to a Pauli string `P`
//! leaves `Tr(P ρ)` as the weighted count.

use std::f64::consts::FRAC_1_SQRT_2;

use super::{unsupported, EncodeError};
use crate::circuit::{Circuit, Gate};
use crate::cnf::{brute_force_models, synth::clauses_for, Lit, WeightedCnf};
use crate::counter::count_weighted;
use crate::statevector::{Pauli, PauliString};

/// A signed Pauli string read off one layer of a model.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliTerm {
    pub paulis: PauliString,
    pub negative: bool,
    /// Product of the branch weights along the model, when known.
    pub coefficient: Option<f64>,
}

impl PauliTerm {
    pub fn from_bits(x: &[bool], z: &[bool], r: bool) -> Self {
        let paulis = x
            .iter()
            .zip(z)
            .map(|(&x, &z)| match (x, z) {
                (false, false) => Pauli::I,
                (false, true) => Pauli::Z,
                (true, false) => Pauli::X,
                (true, true) => Pauli::Y,
            })
            .collect();
        PauliTerm {
            paulis: PauliString(paulis),
            negative: r,
            coefficient: None,
        }
    }

    /// `(x, z)` bits per qubit.
    pub fn bits(p: Pauli) -> (bool, bool) {
        match p {
            Pauli::I => (false, false),
            Pauli::Z => (false, true),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
        }
    }

    /// `±coefficient`, taking a missing coefficient as 1.
    pub fn signed_coefficient(&self) -> f64 {
        let c = self.coefficient.unwrap_or(1.0);
        if self.negative {
            -c
        } else {
            c
        }
    }
}

/// The encoded layers and the formula linking them.
#[derive(Clone, Debug)]
pub struct PauliEncoding {
    /// All constraints and branch weights; the sign weight is added by
    /// [`PauliEncoding::formula`].
    base: WeightedCnf,
    xs: Vec<Vec<u32>>,
    zs: Vec<Vec<u32>>,
    rs: Vec<u32>,
    u_vars: Vec<(usize, u32)>,
}

impl PauliEncoding {
    /// Fresh layer-0 variables with no constraints.
    fn unconstrained(n: usize) -> Self {
        let mut f = WeightedCnf::new(0);
        let x: Vec<u32> = (0..n).map(|_| f.new_var()).collect();
        let z: Vec<u32> = (0..n).map(|_| f.new_var()).collect();
        let r = f.new_var();
        PauliEncoding {
            base: f,
            xs: vec![x],
            zs: vec![z],
            rs: vec![r],
            u_vars: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.xs[0].len()
    }

    /// Number of gate steps encoded.
    pub fn steps(&self) -> usize {
        self.rs.len() - 1
    }

    pub fn x_var(&self, qubit: usize, step: usize) -> u32 {
        self.xs[step][qubit]
    }

    pub fn z_var(&self, qubit: usize, step: usize) -> u32 {
        self.zs[step][qubit]
    }

    pub fn r_var(&self, step: usize) -> u32 {
        self.rs[step]
    }

    /// `(gate index, u variable)` for every T gate.
    pub fn u_vars(&self) -> &[(usize, u32)] {
        &self.u_vars
    }

    /// The complete weighted formula, final sign weight included.
    pub fn formula(&self) -> WeightedCnf {
        let mut f = self.base.clone();
        f.set_weight(*self.rs.last().expect("layer 0"), -1.0, 1.0);
        f
    }

    /// Units pinning the output layer to the unsigned Pauli string `p`.
    pub fn term_units(&self, p: &PauliString) -> Result<Vec<Lit>, EncodeError> {
        let n = self.n_qubits();
        if p.len() != n {
            return Err(EncodeError::QubitOutOfRange {
                qubit: p.len(),
                n_qubits: n,
            });
        }
        let m = self.steps();
        let mut units = Vec::with_capacity(2 * n);
        for (q, &s) in p.0.iter().enumerate() {
            let (x, z) = PauliTerm::bits(s);
            units.push(Lit::new(self.xs[m][q], !x));
            units.push(Lit::new(self.zs[m][q], !z));
        }
        Ok(units)
    }

    /// The formula with the output layer pinned to `p`; its weighted count
    /// is `Tr(P ρ)`.
    pub fn with_term(&self, p: &PauliString) -> Result<WeightedCnf, EncodeError> {
        Ok(self.formula().with_units(self.term_units(p)?)?)
    }

    /// Units for `Z` on `q` and identity elsewhere.
    pub fn measure_units(&self, q: usize) -> Result<Vec<Lit>, EncodeError> {
        let n = self.n_qubits();
        if q >= n {
            return Err(EncodeError::QubitOutOfRange {
                qubit: q,
                n_qubits: n,
            });
        }
        self.term_units(&PauliString::z_on(n, q))
    }

    /// Read layer `step` off a model indexed by variable id.
    pub fn decode(&self, step: usize, model: &[bool]) -> PauliTerm {
        let x: Vec<bool> = self.xs[step].iter().map(|&v| model[v as usize]).collect();
        let z: Vec<bool> = self.zs[step].iter().map(|&v| model[v as usize]).collect();
        PauliTerm::from_bits(&x, &z, model[self.rs[step] as usize])
    }

    /// Every model's output term with its branch weight, by enumeration.
    /// Only for formulas small enough to brute-force.
    pub fn output_terms(&self) -> Result<Vec<PauliTerm>, EncodeError> {
        let m = self.steps();
        let models = brute_force_models(&self.base)?;
        Ok(models
            .iter()
            .map(|model| {
                let mut t = self.decode(m, model);
                t.coefficient = Some(
                    self.u_vars
                        .iter()
                        .map(|&(_, u)| self.base.weight(Lit::new(u, !model[u as usize])))
                        .product(),
                );
                t
            })
            .collect())
    }

    fn add(&mut self, vars: &[u32], pred: impl Fn(&[bool]) -> bool) {
        debug_assert!({
            let mut v = vars.to_vec();
            v.sort_unstable();
            v.windows(2).all(|w| w[0] != w[1])
        });
        for clause in clauses_for(vars, pred) {
            self.base.push_clause_unchecked(clause);
        }
    }
}

/// `¬r⁰ ∧ ⋀_q ¬x_{q,0}` on `n` qubits.
pub fn encode_init_pauli(n: usize) -> Result<PauliEncoding, EncodeError> {
    if n == 0 {
        return Err(crate::circuit::CircuitError::NoQubits.into());
    }
    let mut enc = PauliEncoding::unconstrained(n);
    let r = enc.rs[0];
    enc.base.push_clause_unchecked(vec![Lit::neg(r)]);
    for q in 0..n {
        let x = enc.xs[0][q];
        enc.base.push_clause_unchecked(vec![Lit::neg(x)]);
    }
    Ok(enc)
}

/// Append one gate step. Only X, H, S, T and positively controlled CNOT are
/// accepted; lower Toffolis first.
pub fn encode_gate_pauli(enc: &mut PauliEncoding, g: &Gate) -> Result<(), EncodeError> {
    let index = enc.steps();
    let n = enc.n_qubits();
    for q in g.qubits() {
        if q >= n {
            return Err(EncodeError::QubitOutOfRange {
                qubit: q,
                n_qubits: n,
            });
        }
    }
    let mut x = enc.xs[index].clone();
    let mut z = enc.zs[index].clone();
    let r = enc.rs[index];
    let r1 = enc.base.new_var();

    match g {
        Gate::H(q) => {
            let q = *q;
            enc.add(&[r1, r, x[q], z[q]], |b| b[0] == (b[1] ^ (b[2] && b[3])));
            std::mem::swap(&mut x[q], &mut z[q]);
        }
        Gate::S(q) => {
            let q = *q;
            let z1 = enc.base.new_var();
            enc.add(&[z1, z[q], x[q]], |b| b[0] == (b[1] ^ b[2]));
            enc.add(&[r1, r, x[q], z[q]], |b| b[0] == (b[1] ^ (b[2] && b[3])));
            z[q] = z1;
        }
        Gate::X(q) => {
            enc.add(&[r1, r, z[*q]], |b| b[0] == (b[1] ^ b[2]));
        }
        Gate::T(q) => {
            let q = *q;
            let z1 = enc.base.new_var();
            let u = enc.base.new_var();
            enc.add(&[x[q], z1, z[q]], |b| b[0] || (b[1] == b[2]));
            enc.add(&[r1, r, x[q], z[q], z1], |b| {
                b[0] == (b[1] ^ (b[2] && b[3] && !b[4]))
            });
            enc.add(&[u, x[q]], |b| b[0] == b[1]);
            enc.base.set_weight(u, FRAC_1_SQRT_2, 1.0);
            enc.u_vars.push((index, u));
            z[q] = z1;
        }
        Gate::Cnot { control, target } if control.positive => {
            let (c, t) = (control.qubit, *target);
            let xt1 = enc.base.new_var();
            let zc1 = enc.base.new_var();
            enc.add(&[r1, r, x[c], z[t], x[t], z[c]], |b| {
                b[0] == (b[1] ^ (b[2] && b[3] && (b[4] ^ !b[5])))
            });
            enc.add(&[xt1, x[t], x[c]], |b| b[0] == (b[1] ^ b[2]));
            enc.add(&[zc1, z[c], z[t]], |b| b[0] == (b[1] ^ b[2]));
            x[t] = xt1;
            z[c] = zc1;
        }
        _ => return Err(unsupported(index, g, "Pauli-basis")),
    }
    enc.xs.push(x);
    enc.zs.push(z);
    enc.rs.push(r1);
    Ok(())
}

pub fn encode_circuit_pauli(c: &Circuit) -> Result<PauliEncoding, EncodeError> {
    let mut enc = encode_init_pauli(c.n_qubits())?;
    for (i, g) in c.gates().iter().enumerate() {
        encode_gate_pauli(&mut enc, g).map_err(|e| match e {
            EncodeError::UnsupportedGate { gate, basis, .. } => EncodeError::UnsupportedGate {
                index: i,
                gate,
                basis,
            },
            e => e,
        })?;
    }
    Ok(enc)
}

/// `Tr(P ρ)` for the output state `ρ` of `c` and an unsigned Pauli string `P`.
pub fn expectation_pauli_wmc(c: &Circuit, p: &PauliString) -> Result<f64, EncodeError> {
    let enc = encode_circuit_pauli(c)?;
    Ok(count_weighted(&enc.with_term(p)?))
}

/// `Tr(Z_q ρ)`.
pub fn expectation_z_wmc(c: &Circuit, q: usize) -> Result<f64, EncodeError> {
    let enc = encode_circuit_pauli(c)?;
    let f = enc.formula().with_units(enc.measure_units(q)?)?;
    Ok(count_weighted(&f))
}

/// Probability of reading 0 on qubit `q`, `½(1 + Tr(Z_q ρ))`, clamped to
/// `[0, 1]`.
pub fn prob0_pauli(c: &Circuit, q: usize) -> Result<f64, EncodeError> {
    Ok((0.5 * (1.0 + expectation_z_wmc(c, q)?)).clamp(0.0, 1.0))
}
