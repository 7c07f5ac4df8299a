//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p qwmc --test acceptance`.

mod common;

use std::f64::consts::SQRT_2;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{c, circuit_matrix, max_diff, read_fixture, reference_prob0, reference_state};
use num_complex::Complex64;
use qwmc::circuit::{
    build_cnf_oracle, lower_ccnot, parse_circuit, serialize_circuit, BasisString, Circuit,
};
use qwmc::cnf::{brute_force_wmc, export_weighted, parse_dimacs, WeightedCnf};
use qwmc::counter::count_weighted;
use qwmc::dd::{dd_from_vector, equiv_check, simulate_dd, DdKind, Edge, Manager, Verdict};
use qwmc::encode::{
    amplitude_wmc, amplitudes_wmc, encode_circuit_comp, encode_circuit_pauli, path_count,
    prob0_pauli,
};
use qwmc::random::{
    clifford_t_circuit, full_gate_set_circuit, rng, toffoli_h_circuit, weighted_cnf,
};
use qwmc::statevector::{simulate, StateVector};
use qwmc::Execution;
use rand::seq::SliceRandom;
use rand::Rng;

const EXAMPLE_TOL: f64 = 1e-9;
const EXAMPLE_BUDGET: Duration = Duration::from_secs(1);
const SUITE_TOL: f64 = 1e-9;
const SUITE_BUDGET: Duration = Duration::from_secs(300);
const LOWERING_TOL: f64 = 1e-10;
const NORM_DRIFT_TOL: f64 = 1e-10;
const ROUND_TRIP_TOL: f64 = 1e-12;
const CASES: u64 = 200;
const CANONICITY_CASES: u64 = 100;

const KINDS: [DdKind; 2] = [DdKind::Add, DdKind::Qmdd];

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(got: f64, want: f64, tol: f64, what: &str) -> Result<(), String> {
    ensure((got - want).abs() <= tol, || {
        format!("{what}: got {got}, want {want}")
    })
}

fn circuit(name: &str) -> Circuit {
    parse_circuit(&read_fixture(name)).expect("fixture parses")
}

fn easy_circuit() -> Outcome {
    let circ = circuit("ghz_ccx.qc");
    let want: Vec<f64> = (0..8)
        .map(|i| {
            if [0b000, 0b010, 0b100, 0b111].contains(&i) {
                0.25
            } else {
                0.0
            }
        })
        .collect();
    let sv = simulate(&circ).map_err(|e| e.to_string())?.probabilities();
    let wmc: Vec<f64> = amplitudes_wmc(&circ, Execution::default())
        .map_err(|e| e.to_string())?
        .iter()
        .map(|a| a * a)
        .collect();
    let mut sources = vec![("sv", sv), ("wmc", wmc)];
    for kind in KINDS {
        let (m, e) = simulate_dd(&circ, kind).map_err(|e| e.to_string())?;
        sources.push((kind.name(), m.probabilities(e).map_err(|e| e.to_string())?));
    }
    for (name, probs) in &sources {
        for (i, (g, w)) in probs.iter().zip(&want).enumerate() {
            close(*g, *w, EXAMPLE_TOL, &format!("{name} P({i:03b})"))?;
        }
    }
    Ok("sv, wmc, ADD and QMDD give 1/4 on 000, 010, 100, 111".into())
}

fn satencoding() -> Outcome {
    let circ = circuit("bell_uncompute.qc");
    let b = |s: &str| s.parse::<BasisString>().unwrap();
    close(
        amplitude_wmc(&circ, &b("00")).map_err(|e| e.to_string())?,
        1.0,
        EXAMPLE_TOL,
        "amplitude 00",
    )?;
    close(
        amplitude_wmc(&circ, &b("10")).map_err(|e| e.to_string())?,
        0.0,
        EXAMPLE_TOL,
        "amplitude 10",
    )?;
    let paths = path_count(&circ).map_err(|e| e.to_string())?;
    ensure(paths == 4, || format!("path count {paths}, want 4"))?;
    Ok("amplitude(00)=1, amplitude(10)=0, 4 paths".into())
}

fn measurement_example() -> Outcome {
    let circ = circuit("htsandwich.qc");
    let want = 0.5 + SQRT_2 / 4.0;
    close(
        prob0_pauli(&circ, 0).map_err(|e| e.to_string())?,
        want,
        EXAMPLE_TOL,
        "pauli",
    )?;
    let psi = reference_state(&circ);
    close(
        reference_prob0(&psi, 0, 2),
        want,
        EXAMPLE_TOL,
        "statevector",
    )?;
    Ok(format!("prob0(q0) = {want:.12} by pauli and statevector"))
}

fn quantum_sat() -> Outcome {
    let f = parse_dimacs(&read_fixture("eq3.dimacs")).map_err(|e| e.to_string())?;
    let circ = build_cnf_oracle(&f).map_err(|e| e.to_string())?;
    let s = simulate(&circ).map_err(|e| e.to_string())?;
    let p = s
        .prob(&"111001".parse().unwrap())
        .map_err(|e| e.to_string())?;
    close(p, 0.125, EXAMPLE_TOL, "P(x=y=z=f=1)")?;
    Ok("P(x=y=z=f=1, ancillas 0) = 1/8".into())
}

fn counting_example() -> Outcome {
    let f = parse_dimacs(&read_fixture("example31.cnf")).map_err(|e| e.to_string())?;
    close(count_weighted(&f), -1.0 / 24.0, EXAMPLE_TOL, "count")?;
    Ok("count = -1/24".into())
}

fn node_counts() -> Outcome {
    let real = |v: &[f64]| v.iter().map(|&x| c(x, 0.)).collect::<Vec<_>>();
    let (m, e) = dd_from_vector(&real(&[0.5, 0.5, 0.5, 0.5, 0., 0., 0., 0.]), DdKind::Add)
        .map_err(|e| e.to_string())?;
    let a = m.node_count(e);
    let powers = real(&[1., 2., 2., 4., 4., 8., 8., 16.]);
    let (m, e) = dd_from_vector(&powers, DdKind::Add).map_err(|e| e.to_string())?;
    let b = m.node_count(e);
    let (m, e) = dd_from_vector(&powers, DdKind::Qmdd).map_err(|e| e.to_string())?;
    let (q, qt) = (m.node_count(e), m.terminal_count(e));
    ensure(a == 3 && b == 7 && q + qt == 4, || {
        format!("ADD {a} and {b} interior, QMDD {q} interior + {qt} terminal")
    })?;
    Ok("ADD 3 and 7 interior nodes, QMDD 3 interior + 1 terminal = 4".into())
}

fn timed(f: fn() -> Outcome, budget: Duration) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let took = start.elapsed();
    ensure(took <= budget, || {
        format!("took {took:?}, budget {budget:?}")
    })?;
    Ok(format!("{detail} ({:.1} ms)", took.as_secs_f64() * 1e3))
}

fn toffoli_h_suite() -> Outcome {
    let mut worst: f64 = 0.0;
    for seed in 0..CASES {
        let mut r = rng(seed);
        let (n, gates) = (r.gen_range(1..=5), r.gen_range(0..=12));
        let circ = toffoli_h_circuit(&mut r, n, gates);
        let want = reference_state(&circ);
        let got = amplitudes_wmc(&circ, Execution::default()).map_err(|e| e.to_string())?;
        for (g, w) in got.iter().zip(&want) {
            worst = worst.max((c(*g, 0.) - w).norm());
        }
    }
    ensure(worst <= SUITE_TOL, || format!("max deviation {worst:e}"))?;
    Ok(format!("{CASES} circuits, max deviation {worst:.1e}"))
}

fn clifford_t_suite() -> Outcome {
    let mut worst: f64 = 0.0;
    for seed in 0..CASES {
        let mut r = rng(seed);
        let (n, gates) = (r.gen_range(1..=5), r.gen_range(0..=20));
        let circ = clifford_t_circuit(&mut r, n, gates, 6);
        let psi = reference_state(&circ);
        for q in 0..n {
            let got = prob0_pauli(&circ, q).map_err(|e| e.to_string())?;
            worst = worst.max((got - reference_prob0(&psi, q, n)).abs());
        }
    }
    ensure(worst <= SUITE_TOL, || format!("max deviation {worst:e}"))?;
    Ok(format!(
        "{CASES} circuits, every qubit, max deviation {worst:.1e}"
    ))
}

/// Full-gate-set suite; also tracks the QMDD normalization invariant.
fn dd_suite() -> Result<(f64, bool), String> {
    let mut worst: f64 = 0.0;
    let mut normalized = true;
    for seed in 0..CASES {
        let mut r = rng(seed);
        let (n, gates) = (r.gen_range(1..=6), r.gen_range(0..=25));
        let circ = full_gate_set_circuit(&mut r, n, gates);
        let want: Vec<f64> = reference_state(&circ)
            .iter()
            .map(|a| a.norm_sqr())
            .collect();
        for kind in KINDS {
            let mut m = Manager::new(kind, n).map_err(|e| e.to_string())?;
            let mut state = m.zero_state();
            for g in circ.gates() {
                let gd = m.from_gate(g).map_err(|e| e.to_string())?;
                state = m.apply(gd, state).map_err(|e| e.to_string())?;
                normalized &= m.all_normalized();
            }
            let got = m.probabilities(state).map_err(|e| e.to_string())?;
            for (g, w) in got.iter().zip(&want) {
                worst = worst.max((g - w).abs());
            }
        }
    }
    Ok((worst, normalized))
}

fn counter_suite() -> Outcome {
    let mut worst: f64 = 0.0;
    for seed in 0..CASES {
        let mut r = rng(seed);
        let (vars, clauses) = (r.gen_range(1..=14), r.gen_range(0..=40));
        let f = weighted_cnf(&mut r, vars, clauses, 3);
        let want = brute_force_wmc(&f).map_err(|e| e.to_string())?;
        worst = worst.max((count_weighted(&f) - want).abs());
    }
    ensure(worst <= SUITE_TOL, || format!("max deviation {worst:e}"))?;
    Ok(format!("{CASES} formulas, max deviation {worst:.1e}"))
}

fn lowering() -> Outcome {
    let ccx = parse_circuit("qubits 3\nccx 0 1 2").unwrap();
    let lowered = lower_ccnot(&ccx).map_err(|e| e.to_string())?;
    let d = max_diff(&circuit_matrix(&ccx), &circuit_matrix(&lowered));
    ensure(d <= LOWERING_TOL, || format!("matrix deviation {d:e}"))?;
    for kind in KINDS {
        let v = equiv_check(&ccx, &lowered, kind).map_err(|e| e.to_string())?;
        ensure(v == Verdict::Equal, || format!("{kind} verdict {v:?}"))?;
    }
    Ok(format!(
        "{} gates, matrix deviation {d:.1e}, verdict Equal",
        lowered.len()
    ))
}

fn gaussian_vector(seed: u64, n: usize) -> Vec<Complex64> {
    let mut r = rng(seed);
    (0..1usize << n)
        .map(|_| {
            c(
                r.gen_range(-3..=3) as f64 / 4.0,
                r.gen_range(-3..=3) as f64 / 4.0,
            )
        })
        .collect()
}

fn canonicity() -> Outcome {
    for seed in 0..CANONICITY_CASES {
        let n = 1 + (seed % 6) as usize;
        let v = gaussian_vector(seed, n);
        for kind in KINDS {
            let mut m = Manager::new(kind, n).map_err(|e| e.to_string())?;
            let direct = m.from_vector(&v).map_err(|e| e.to_string())?;
            let mut order: Vec<usize> = (0..v.len()).collect();
            order.shuffle(&mut rng(!seed));
            let mut sum = Edge::ZERO;
            for i in order {
                let b = m
                    .basis_state(&BasisString::from_index(i, n))
                    .map_err(|e| e.to_string())?;
                let term = m.scale(b, v[i]);
                sum = m.add(sum, term).map_err(|e| e.to_string())?;
            }
            ensure(sum.node == direct.node, || {
                format!("seed {seed} {kind}: roots differ")
            })?;
        }
    }
    Ok(format!(
        "{CANONICITY_CASES} vectors, identical roots for both kinds"
    ))
}

fn norm_drift() -> Outcome {
    let mut worst: f64 = 0.0;
    for seed in 0..CASES {
        let n = 1 + (seed % 8) as usize;
        let circ = full_gate_set_circuit(&mut rng(seed), n, 50);
        let mut s = StateVector::init_zero(n).map_err(|e| e.to_string())?;
        for g in circ.gates() {
            s.apply_gate(g).map_err(|e| e.to_string())?;
            worst = worst.max((s.norm_sqr() - 1.0).abs());
        }
    }
    ensure(worst <= NORM_DRIFT_TOL, || format!("drift {worst:e}"))?;
    Ok(format!("{CASES} circuits of 50 gates, drift {worst:.1e}"))
}

const FIXTURES: [&str; 5] = [
    "ghz_ccx.qc",
    "htsandwich.qc",
    "bell_uncompute.qc",
    "empty2.qc",
    "random_th_seed0.qc",
];

fn qc_round_trip() -> Outcome {
    for name in FIXTURES {
        let circ = circuit(name);
        let text = serialize_circuit(&circ);
        let back = parse_circuit(&text).map_err(|e| e.to_string())?;
        ensure(back == circ && serialize_circuit(&back) == text, || {
            format!("{name} changed")
        })?;
    }
    Ok(format!("{} fixtures", FIXTURES.len()))
}

fn exported_count(f: &WeightedCnf) -> Result<f64, String> {
    let back = parse_dimacs(&export_weighted(f)).map_err(|e| e.to_string())?;
    let (a, b) = (count_weighted(f), count_weighted(&back));
    ensure((a - b).abs() <= ROUND_TRIP_TOL, || format!("{a} vs {b}"))?;
    Ok((a - b).abs())
}

fn encode_round_trip() -> Outcome {
    let mut formulas = 0;
    let mut worst: f64 = 0.0;
    for name in FIXTURES {
        let circ = circuit(name);
        let n = circ.n_qubits();
        if circ.is_toffoli_h() {
            let enc = encode_circuit_comp(&circ).map_err(|e| e.to_string())?;
            for i in 0..1usize << n {
                let f = enc
                    .with_output(&BasisString::from_index(i, n))
                    .map_err(|e| e.to_string())?;
                worst = worst.max(exported_count(&f).map_err(|e| format!("{name}: {e}"))?);
                formulas += 1;
            }
        }
        if let Ok(lowered) = lower_ccnot(&circ.canonicalize()) {
            let enc = encode_circuit_pauli(&lowered).map_err(|e| e.to_string())?;
            for q in 0..n {
                let units = enc.measure_units(q).map_err(|e| e.to_string())?;
                let f = enc.formula().with_units(units).map_err(|e| e.to_string())?;
                worst = worst.max(exported_count(&f).map_err(|e| format!("{name}: {e}"))?);
                formulas += 1;
            }
        }
    }
    Ok(format!("{formulas} formulas, max deviation {worst:.1e}"))
}

fn main() -> ExitCode {
    let mut failures = 0;
    let mut report = |id: &str, name: &str, outcome: Outcome| match outcome {
        Ok(detail) => println!("PASS {id} {name}: {detail}"),
        Err(detail) => {
            failures += 1;
            println!("FAIL {id} {name}: {detail}");
        }
    };

    report("1a", "easy circuit", timed(easy_circuit, EXAMPLE_BUDGET));
    report(
        "1b",
        "satisfiability encoding",
        timed(satencoding, EXAMPLE_BUDGET),
    );
    report(
        "1c",
        "measurement example",
        timed(measurement_example, EXAMPLE_BUDGET),
    );
    report(
        "1d",
        "quantum-sat oracle",
        timed(quantum_sat, EXAMPLE_BUDGET),
    );
    report(
        "1e",
        "weighted counting example",
        timed(counting_example, EXAMPLE_BUDGET),
    );
    report(
        "1f",
        "decision diagram node counts",
        timed(node_counts, EXAMPLE_BUDGET),
    );

    report(
        "2a",
        "Toffoli+H wmc = statevector",
        timed(toffoli_h_suite, SUITE_BUDGET),
    );
    report(
        "2b",
        "Clifford+T pauli = statevector",
        timed(clifford_t_suite, SUITE_BUDGET),
    );
    let start = Instant::now();
    let dd = dd_suite();
    let took = start.elapsed();
    report(
        "2c",
        "ADD and QMDD = statevector",
        dd.clone().and_then(|(worst, _)| {
            ensure(worst <= SUITE_TOL && took <= SUITE_BUDGET, || {
                format!("max deviation {worst:e} in {took:?}")
            })?;
            Ok(format!("{CASES} circuits, max deviation {worst:.1e}"))
        }),
    );
    report(
        "2d",
        "counter = brute force",
        timed(counter_suite, SUITE_BUDGET),
    );
    report("2e", "CCNOT lowering", lowering());

    report(
        "3a",
        "QMDD normalization after every operation",
        dd.and_then(|(_, ok)| {
            ensure(ok, || "a live node violates normalization".into())?;
            Ok("leftmost nonzero weight is 1 on every node".into())
        }),
    );
    report("3b", "unique-table canonicity", canonicity());
    report("3c", "statevector norm drift", norm_drift());

    report("4a", ".qc round trip", qc_round_trip());
    report("4b", "encode, export, parse, count", encode_round_trip());

    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
