//! Small-predicate clausification.
//!
//! Gate constraints touch at most a handful of variables, so their CNF is
//! derived straight from the truth table: the falsifying assignments are
//! merged into prime cubes (Quine–McCluskey), a cover is picked, and each
//! cube becomes one blocking clause. No auxiliary variables are introduced.

use std::collections::BTreeSet;

use super::Lit;

/// A cube over `k` inputs: bit `i` of `care` set means input `i` is fixed to
/// bit `i` of `value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Cube {
    care: u32,
    value: u32,
}

impl Cube {
    fn covers(self, minterm: u32) -> bool {
        minterm & self.care == self.value
    }
}

fn prime_cubes(k: usize, minterms: &[u32]) -> Vec<Cube> {
    let full = (1u32 << k) - 1;
    let mut layer: BTreeSet<Cube> = minterms
        .iter()
        .map(|&m| Cube {
            care: full,
            value: m,
        })
        .collect();
    let mut primes = BTreeSet::new();
    while !layer.is_empty() {
        let cubes: Vec<Cube> = layer.iter().copied().collect();
        let mut merged = vec![false; cubes.len()];
        let mut next = BTreeSet::new();
        for i in 0..cubes.len() {
            for j in i + 1..cubes.len() {
                let (a, b) = (cubes[i], cubes[j]);
                if a.care != b.care {
                    continue;
                }
                let diff = a.value ^ b.value;
                if diff.count_ones() == 1 {
                    next.insert(Cube {
                        care: a.care & !diff,
                        value: a.value & !diff,
                    });
                    merged[i] = true;
                    merged[j] = true;
                }
            }
        }
        primes.extend(
            cubes
                .iter()
                .zip(&merged)
                .filter(|(_, &m)| !m)
                .map(|(c, _)| *c),
        );
        layer = next;
    }
    primes.into_iter().collect()
}

/// Essential primes first, then greedy by number of newly covered minterms.
fn choose_cover(primes: &[Cube], minterms: &[u32]) -> Vec<Cube> {
    let mut uncovered: BTreeSet<u32> = minterms.iter().copied().collect();
    let mut chosen: Vec<Cube> = Vec::new();
    for &m in minterms {
        let covering: Vec<&Cube> = primes.iter().filter(|p| p.covers(m)).collect();
        if let [only] = covering.as_slice() {
            if !chosen.contains(only) {
                chosen.push(**only);
            }
        }
    }
    for c in &chosen {
        uncovered.retain(|&m| !c.covers(m));
    }
    while !uncovered.is_empty() {
        let best = primes
            .iter()
            .max_by_key(|p| {
                let gain = uncovered.iter().filter(|&&m| p.covers(m)).count();
                // fewer literals wins ties; then the smaller cube for determinism
                (gain, u32::MAX - p.care.count_ones(), std::cmp::Reverse(**p))
            })
            .copied()
            .expect("primes cover every minterm");
        uncovered.retain(|&m| !best.covers(m));
        chosen.push(best);
    }
    chosen.sort();
    chosen
}

/// CNF over `vars` (input `i` is variable `vars[i]`) whose models are exactly
/// the assignments accepted by `pred`.
pub(crate) fn clauses_for(vars: &[u32], pred: impl Fn(&[bool]) -> bool) -> Vec<Vec<Lit>> {
    let k = vars.len();
    assert!(
        k <= 10,
        "truth-table clausification is for small predicates"
    );
    let mut off = Vec::new();
    let mut bits = vec![false; k];
    for m in 0u32..(1 << k) {
        for (i, b) in bits.iter_mut().enumerate() {
            *b = (m >> i) & 1 == 1;
        }
        if !pred(&bits) {
            off.push(m);
        }
    }
    if off.is_empty() {
        return Vec::new();
    }
    let primes = prime_cubes(k, &off);
    choose_cover(&primes, &off)
        .into_iter()
        .map(|cube| {
            (0..k)
                .filter(|i| (cube.care >> i) & 1 == 1)
                // the clause must be false exactly on the cube
                .map(|i| Lit::new(vars[i], (cube.value >> i) & 1 == 1))
                .collect()
        })
        .collect()
}
