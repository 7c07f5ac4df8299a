//! Cross-backend agreement check.

use std::io::Write;

use num_complex::Complex64;
use qwmc::circuit::Circuit;
use qwmc::dd::{simulate_dd, DdKind};
use qwmc::encode::{amplitudes_wmc, prob0_pauli};
use qwmc::numfmt::format_sig;
use qwmc::statevector::simulate_with;
use qwmc::Execution;

use crate::{enumerable, pauli_ready, CliError, EXIT_CHECK_FAILED, EXIT_OK};

/// Largest deviation from the statevector for which the check passes.
pub const TOLERANCE: f64 = 1e-9;

fn deviation(a: impl IntoIterator<Item = Complex64>, b: &[Complex64]) -> f64 {
    a.into_iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub(crate) fn run(
    circ: &Circuit,
    exec: Execution,
    out: &mut impl Write,
    err: &mut impl Write,
) -> Result<i32, CliError> {
    let n = circ.n_qubits();
    enumerable(n, "check")?;
    let reference = simulate_with(circ, exec)?;
    let amps = reference.amplitudes();

    let mut rows: Vec<(&str, &str, f64)> = Vec::new();
    let mut skipped: Vec<(&str, String)> = Vec::new();
    for kind in [DdKind::Add, DdKind::Qmdd] {
        let (m, e) = simulate_dd(circ, kind)?;
        let name = if kind == DdKind::Add { "add" } else { "qmdd" };
        rows.push((name, "amplitudes", deviation(m.to_vector(e)?, amps)));
    }
    if circ.is_toffoli_h() {
        let wmc = amplitudes_wmc(circ, exec)?;
        rows.push((
            "wmc",
            "amplitudes",
            deviation(wmc.iter().map(|&a| Complex64::new(a, 0.0)), amps),
        ));
    } else {
        skipped.push(("wmc", "circuit has S or T gates".into()));
    }
    match pauli_ready(circ, err) {
        Ok(lowered) => {
            let mut worst: f64 = 0.0;
            for q in 0..n {
                let got = prob0_pauli(&lowered, q)?;
                worst = worst.max((got - reference.marginal_prob0(q)?).abs());
            }
            rows.push(("pauli", "prob0", worst));
        }
        Err(CliError::Capability(reason)) => skipped.push(("pauli", reason)),
        Err(e) => return Err(e),
    }

    let worst = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    for (backend, quantity, d) in &rows {
        writeln!(
            out,
            "{backend} vs sv {quantity}: max deviation {}",
            format_sig(*d, 3)
        )?;
    }
    for (backend, reason) in &skipped {
        writeln!(out, "{backend} skipped: {reason}")?;
    }
    let pass = worst <= TOLERANCE;
    writeln!(
        out,
        "{} max deviation {}",
        if pass { "PASS" } else { "FAIL" },
        format_sig(worst, 3)
    )?;
    Ok(if pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}
