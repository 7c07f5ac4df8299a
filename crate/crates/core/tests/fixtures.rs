mod common;

use common::read_fixture;
use qwmc::circuit::{lower_ccnot, parse_circuit, serialize_circuit, BasisString, Circuit};
use qwmc::cnf::{export_weighted, parse_dimacs, WeightedCnf};
use qwmc::counter::count_weighted;
use qwmc::encode::{encode_circuit_comp, encode_circuit_pauli};
use qwmc::random::{rng, toffoli_h_circuit};

const CIRCUITS: [&str; 5] = [
    "ghz_ccx.qc",
    "htsandwich.qc",
    "bell_uncompute.qc",
    "empty2.qc",
    "random_th_seed0.qc",
];

fn load(name: &str) -> Circuit {
    parse_circuit(&read_fixture(name)).unwrap()
}

fn round_trip_count(f: &WeightedCnf) -> (f64, f64) {
    let back = parse_dimacs(&export_weighted(f)).unwrap();
    (count_weighted(f), count_weighted(&back))
}

#[test]
fn circuit_fixtures_round_trip() {
    for name in CIRCUITS {
        let circ = load(name);
        let text = serialize_circuit(&circ);
        let again = parse_circuit(&text).unwrap();
        assert_eq!(again, circ, "{name}");
        assert_eq!(serialize_circuit(&again), text, "{name}");
    }
}

#[test]
fn cnf_fixtures_round_trip() {
    for name in ["eq3.dimacs", "example31.cnf"] {
        let f = parse_dimacs(&read_fixture(name)).unwrap();
        let text = export_weighted(&f);
        let back = parse_dimacs(&text).unwrap();
        assert_eq!(back.clauses(), f.clauses(), "{name}");
        assert_eq!(export_weighted(&back), text, "{name}");
        let (a, b) = round_trip_count(&f);
        assert!((a - b).abs() <= 1e-12, "{name}");
    }
}

#[test]
fn exported_encodings_count_the_same() {
    for name in CIRCUITS {
        let circ = load(name);
        let n = circ.n_qubits();
        if circ.is_toffoli_h() {
            let enc = encode_circuit_comp(&circ).unwrap();
            for i in 0..1usize << n {
                let f = enc.with_output(&BasisString::from_index(i, n)).unwrap();
                let (a, b) = round_trip_count(&f);
                assert!((a - b).abs() <= 1e-12, "{name} comp {i}");
            }
        }
        if let Ok(lowered) = lower_ccnot(&circ.canonicalize()) {
            let enc = encode_circuit_pauli(&lowered).unwrap();
            for q in 0..n {
                let f = enc
                    .formula()
                    .with_units(enc.measure_units(q).unwrap())
                    .unwrap();
                let (a, b) = round_trip_count(&f);
                assert!((a - b).abs() <= 1e-12, "{name} pauli q{q}");
            }
        }
    }
}

#[test]
fn random_fixture_matches_its_generator() {
    assert_eq!(
        load("random_th_seed0.qc"),
        toffoli_h_circuit(&mut rng(0), 4, 10)
    );
}
