//! Seeded generators for random circuits and formulas.
//!
//! Used by the property suites, the benchmarks and the CLI `random` command.
//! A given seed always yields the same object.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Control, Gate};
use crate::cnf::{Lit, WeightedCnf};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn distinct_qubits(rng: &mut impl Rng, n: usize, k: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(k);
    all
}

fn random_controls(rng: &mut impl Rng, qubits: &[usize], allow_negated: bool) -> Vec<Control> {
    qubits
        .iter()
        .map(|&q| Control {
            qubit: q,
            positive: !allow_negated || rng.gen_bool(0.75),
        })
        .collect()
}

/// Gates from {X, H, CNOT, CCNOT, MCX}, negated controls included.
pub fn toffoli_h_circuit(rng: &mut impl Rng, n: usize, gates: usize) -> Circuit {
    let mut c = Circuit::new(n).expect("n >= 1");
    for _ in 0..gates {
        let choice = rng.gen_range(0..if n >= 2 { 5 } else { 2 });
        let g = match choice {
            0 => Gate::X(rng.gen_range(0..n)),
            1 => Gate::H(rng.gen_range(0..n)),
            2 => {
                let q = distinct_qubits(rng, n, 2);
                Gate::cnot(q[0], q[1])
            }
            3 if n >= 3 => {
                let q = distinct_qubits(rng, n, 3);
                Gate::ccnot(q[0], q[1], q[2])
            }
            _ => {
                let k = rng.gen_range(1..n.min(4));
                let q = distinct_qubits(rng, n, k + 1);
                Gate::mcx(random_controls(rng, &q[..k], true), q[k])
            }
        };
        c.push(g).expect("generated gate is valid");
    }
    c
}

/// Gates from {X, H, S, T, CNOT} with at most `max_t` T gates.
pub fn clifford_t_circuit(rng: &mut impl Rng, n: usize, gates: usize, max_t: usize) -> Circuit {
    let mut c = Circuit::new(n).expect("n >= 1");
    let mut t_left = max_t;
    for _ in 0..gates {
        let mut choice = rng.gen_range(0..if n >= 2 { 5 } else { 4 });
        if choice == 3 && t_left == 0 {
            choice = 1;
        }
        let g = match choice {
            0 => Gate::X(rng.gen_range(0..n)),
            1 => Gate::H(rng.gen_range(0..n)),
            2 => Gate::S(rng.gen_range(0..n)),
            3 => {
                t_left -= 1;
                Gate::T(rng.gen_range(0..n))
            }
            _ => {
                let q = distinct_qubits(rng, n, 2);
                Gate::cnot(q[0], q[1])
            }
        };
        c.push(g).expect("generated gate is valid");
    }
    c
}

/// Any gate of the IR, negated controls included.
pub fn full_gate_set_circuit(rng: &mut impl Rng, n: usize, gates: usize) -> Circuit {
    let mut c = Circuit::new(n).expect("n >= 1");
    for _ in 0..gates {
        let max = if n >= 3 {
            7
        } else if n == 2 {
            5
        } else {
            4
        };
        let g = match rng.gen_range(0..max) {
            0 => Gate::X(rng.gen_range(0..n)),
            1 => Gate::H(rng.gen_range(0..n)),
            2 => Gate::S(rng.gen_range(0..n)),
            3 => Gate::T(rng.gen_range(0..n)),
            4 => {
                let q = distinct_qubits(rng, n, 2);
                Gate::cnot(q[0], q[1])
            }
            5 => {
                let q = distinct_qubits(rng, n, 3);
                Gate::ccnot(q[0], q[1], q[2])
            }
            _ => {
                let k = rng.gen_range(1..n.min(4));
                let q = distinct_qubits(rng, n, k + 1);
                Gate::mcx(random_controls(rng, &q[..k], true), q[k])
            }
        };
        c.push(g).expect("generated gate is valid");
    }
    c
}

/// Weights drawn from {±1, ±½, ±1/√2, ¾, ¼}.
pub const WEIGHT_POOL: [f64; 8] = [
    1.0,
    -1.0,
    0.5,
    -0.5,
    std::f64::consts::FRAC_1_SQRT_2,
    -std::f64::consts::FRAC_1_SQRT_2,
    0.75,
    0.25,
];

/// A CNF with `num_vars` variables and `num_clauses` clauses of 1 to
/// `max_len` distinct-variable literals; each variable is biased with
/// probability one half.
pub fn weighted_cnf(
    rng: &mut impl Rng,
    num_vars: u32,
    num_clauses: usize,
    max_len: usize,
) -> WeightedCnf {
    let mut f = WeightedCnf::new(num_vars);
    for _ in 0..num_clauses {
        let len = rng.gen_range(1..=max_len.min(num_vars as usize));
        let mut vars: Vec<u32> = (1..=num_vars).collect();
        vars.shuffle(rng);
        let clause: Vec<Lit> = vars[..len]
            .iter()
            .map(|&v| Lit::new(v, rng.gen_bool(0.5)))
            .collect();
        f.add_clause(clause).expect("variables in range");
    }
    for v in 1..=num_vars {
        if rng.gen_bool(0.5) {
            let p = *WEIGHT_POOL.choose(rng).expect("pool");
            let q = *WEIGHT_POOL.choose(rng).expect("pool");
            f.set_weight(v, p, q);
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let a = full_gate_set_circuit(&mut rng(3), 5, 30);
        let b = full_gate_set_circuit(&mut rng(3), 5, 30);
        assert_eq!(a, b);
        assert_eq!(a.len(), 30);
    }

    #[test]
    fn gate_sets_are_respected() {
        for seed in 0..20 {
            assert!(toffoli_h_circuit(&mut rng(seed), 4, 12).is_toffoli_h());
            let c = clifford_t_circuit(&mut rng(seed), 4, 20, 6);
            assert!(c.is_clifford_t());
            assert!(c.gates().iter().filter(|g| matches!(g, Gate::T(_))).count() <= 6);
        }
        assert!(toffoli_h_circuit(&mut rng(1), 1, 10).is_toffoli_h());
        assert_eq!(full_gate_set_circuit(&mut rng(1), 1, 10).len(), 10);
    }

    #[test]
    fn cnf_shape() {
        let f = weighted_cnf(&mut rng(5), 10, 30, 3);
        assert_eq!(f.num_vars(), 10);
        assert_eq!(f.num_clauses(), 30);
        assert!(f.clauses().iter().all(|c| !c.is_empty() && c.len() <= 3));
    }
}
