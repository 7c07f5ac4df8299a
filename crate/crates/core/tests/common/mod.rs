//! Reference implementations shared by the integration tests. Everything
//! here is written independently of the library's simulators: dense
//! matrices come from Kronecker products, path counts from dynamic
//! programming over basis states.

#![allow(dead_code)]

use std::path::PathBuf;

use num_complex::Complex64;
use proptest::test_runner::{Config, RngSeed};
use qwmc::circuit::{Circuit, Gate};

pub type Matrix = Vec<Vec<Complex64>>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).expect("fixture exists")
}

/// Deterministic proptest configuration.
pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn identity(dim: usize) -> Matrix {
    (0..dim)
        .map(|i| (0..dim).map(|j| c((i == j) as u8 as f64, 0.0)).collect())
        .collect()
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![c(0., 0.); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![c(0., 0.); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == c(0., 0.) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect())
        .collect()
}

pub fn max_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).norm()))
        .fold(0.0, f64::max)
}

fn single(g: &Gate) -> Matrix {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    match g {
        Gate::H(_) => vec![vec![c(r, 0.), c(r, 0.)], vec![c(r, 0.), c(-r, 0.)]],
        Gate::S(_) => vec![vec![c(1., 0.), c(0., 0.)], vec![c(0., 0.), c(0., 1.)]],
        Gate::T(_) => vec![
            vec![c(1., 0.), c(0., 0.)],
            vec![
                c(0., 0.),
                Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
            ],
        ],
        _ => vec![vec![c(0., 0.), c(1., 0.)], vec![c(1., 0.), c(0., 0.)]],
    }
}

/// Padded `2^n × 2^n` matrix of one gate as `I + P ⊗ (G - I)`, where `P`
/// projects the controls onto their firing values.
pub fn gate_matrix(g: &Gate, n: usize) -> Matrix {
    let g2 = single(g);
    let g_minus_i = add(
        &g2,
        &vec![vec![c(-1., 0.), c(0., 0.)], vec![c(0., 0.), c(-1., 0.)]],
    );
    let mut factors: Vec<Matrix> = vec![identity(2); n];
    factors[g.target()] = g_minus_i;
    for ctl in g.controls() {
        let v = if ctl.positive { 1 } else { 0 };
        let mut p = vec![vec![c(0., 0.); 2]; 2];
        p[v][v] = c(1., 0.);
        factors[ctl.qubit] = p;
    }
    let mut m = vec![vec![c(1., 0.)]];
    for f in &factors {
        m = kron(&m, f);
    }
    add(&identity(1 << n), &m)
}

pub fn circuit_matrix(circ: &Circuit) -> Matrix {
    let n = circ.n_qubits();
    let mut m = identity(1 << n);
    for g in circ.gates() {
        m = matmul(&gate_matrix(g, n), &m);
    }
    m
}

/// First column of the circuit unitary: the output state on `|0…0⟩`.
pub fn reference_state(circ: &Circuit) -> Vec<Complex64> {
    circuit_matrix(circ).iter().map(|row| row[0]).collect()
}

/// Number of basis-state sequences `0 → b_1 → … → b_m` whose every
/// transition amplitude is nonzero.
pub fn reference_path_count(circ: &Circuit) -> u64 {
    let n = circ.n_qubits();
    let dim = 1usize << n;
    let mut counts = vec![0u64; dim];
    counts[0] = 1;
    for g in circ.gates() {
        let m = gate_matrix(g, n);
        let mut next = vec![0u64; dim];
        for (b, &k) in counts.iter().enumerate() {
            if k == 0 {
                continue;
            }
            for (b2, slot) in next.iter_mut().enumerate() {
                if m[b2][b].norm() > 1e-12 {
                    *slot += k;
                }
            }
        }
        counts = next;
    }
    counts.iter().sum()
}

/// `⟨ψ|Z_q|ψ⟩` summed straight from amplitudes.
pub fn reference_prob0(state: &[Complex64], q: usize, n: usize) -> f64 {
    state
        .iter()
        .enumerate()
        .filter(|(i, _)| (i >> (n - 1 - q)) & 1 == 0)
        .map(|(_, a)| a.norm_sqr())
        .sum()
}
