//! DIMACS CNF reading and weighted-CNF writing.
//!
//! The writer emits the model-counting competition layout:
//!
//! ```text
//! p cnf <V> <C>
//! c t wmc
//! c p weight <lit> <w> 0      one line per literal of every biased variable
//! <clause> 0                  one clause per line
//! ```
//!
//! Weights are printed with 17 significant digits so they parse back to the
//! same bits. The reader accepts plain DIMACS as well as this layout.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{CnfError, Lit, WeightedCnf};
use crate::numfmt::format_sig;

fn syntax(line: usize, message: impl Into<String>) -> CnfError {
    CnfError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_weight_line(
    rest: &str,
    line: usize,
    num_vars: u32,
    weights: &mut BTreeMap<u32, (Option<f64>, Option<f64>)>,
) -> Result<(), CnfError> {
    let toks: Vec<&str> = rest.split_whitespace().collect();
    if toks.len() < 2 || toks.len() > 3 || toks.get(2).is_some_and(|t| *t != "0") {
        return Err(syntax(line, "expected `c p weight <lit> <weight> 0`"));
    }
    let lit: i32 = toks[0]
        .parse()
        .map_err(|_| syntax(line, format!("bad literal `{}`", toks[0])))?;
    let lit = Lit::from_dimacs(lit).ok_or_else(|| syntax(line, "weight on literal 0"))?;
    if lit.var() > num_vars {
        return Err(CnfError::UndeclaredVariable {
            lit: lit.to_dimacs() as i64,
            num_vars,
        });
    }
    let w: f64 = toks[1]
        .parse()
        .map_err(|_| syntax(line, format!("bad weight `{}`", toks[1])))?;
    let entry = weights.entry(lit.var()).or_default();
    if lit.is_negated() {
        entry.1 = Some(w);
    } else {
        entry.0 = Some(w);
    }
    Ok(())
}

/// Parse DIMACS CNF text. `c p weight` lines, when present, set literal
/// weights (a polarity without a line weighs 1); otherwise every variable is
/// unbiased.
pub fn parse_dimacs(text: &str) -> Result<WeightedCnf, CnfError> {
    let mut formula: Option<WeightedCnf> = None;
    let mut weights: BTreeMap<u32, (Option<f64>, Option<f64>)> = BTreeMap::new();
    let mut pending: Vec<Lit> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if let Some(comment) = trimmed.strip_prefix('c') {
            if !(comment.is_empty() || comment.starts_with(char::is_whitespace)) {
                return Err(syntax(line, format!("unexpected token `{trimmed}`")));
            }
            let body = comment.trim_start();
            if let Some(rest) = body.strip_prefix("p weight") {
                let f = formula
                    .as_ref()
                    .ok_or_else(|| syntax(line, "weight line before `p cnf` header"))?;
                parse_weight_line(rest, line, f.num_vars, &mut weights)?;
            }
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('p') {
            if formula.is_some() {
                return Err(syntax(line, "duplicate `p` header"));
            }
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 3 || toks[0] != "cnf" {
                return Err(syntax(line, "expected `p cnf <vars> <clauses>`"));
            }
            let num_vars: u32 = toks[1]
                .parse()
                .map_err(|_| syntax(line, format!("bad variable count `{}`", toks[1])))?;
            let num_clauses: usize = toks[2]
                .parse()
                .map_err(|_| syntax(line, format!("bad clause count `{}`", toks[2])))?;
            if num_vars > i32::MAX as u32 {
                return Err(syntax(line, "variable count too large"));
            }
            let mut f = WeightedCnf::new(num_vars);
            f.clauses.reserve(num_clauses.min(1 << 20));
            formula = Some(f);
            continue;
        }
        let f = formula
            .as_mut()
            .ok_or_else(|| syntax(line, "clause before `p cnf` header"))?;
        for tok in trimmed.split_whitespace() {
            let x: i64 = tok
                .parse()
                .map_err(|_| syntax(line, format!("bad literal `{tok}`")))?;
            if x == 0 {
                f.clauses.push(std::mem::take(&mut pending));
                continue;
            }
            if x.unsigned_abs() > f.num_vars as u64 {
                return Err(CnfError::UndeclaredVariable {
                    lit: x,
                    num_vars: f.num_vars,
                });
            }
            pending.push(Lit::from_dimacs(x as i32).expect("nonzero literal"));
        }
    }

    let mut f =
        formula.ok_or_else(|| syntax(text.lines().count().max(1), "missing `p cnf` header"))?;
    if !pending.is_empty() {
        return Err(CnfError::MissingTerminator);
    }
    for (var, (p, n)) in weights {
        f.set_weight(var, p.unwrap_or(1.0), n.unwrap_or(1.0));
    }
    Ok(f)
}

/// Serialize in the weighted model-counting layout described in the module
/// docs. Identical input gives identical bytes.
pub fn export_weighted(f: &WeightedCnf) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p cnf {} {}", f.num_vars(), f.num_clauses());
    let _ = writeln!(out, "c t wmc");
    for (var, pos, neg) in f.biased_vars() {
        let _ = writeln!(out, "c p weight {} {} 0", var, format_sig(pos, 17));
        let _ = writeln!(out, "c p weight -{} {} 0", var, format_sig(neg, 17));
    }
    for clause in f.clauses() {
        for lit in clause {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_dimacs() {
        let f = parse_dimacs("c hello\np cnf 2 1\n1 -2 0\n").unwrap();
        assert_eq!(f.num_vars(), 2);
        assert_eq!(f.clauses(), &[vec![Lit::pos(1), Lit::neg(2)]]);
        assert!(!f.is_biased(1) && !f.is_biased(2));

        let f = parse_dimacs("p cnf 1 2\n1 0\n-1 0").unwrap();
        assert_eq!(f.clauses(), &[vec![Lit::pos(1)], vec![Lit::neg(1)]]);

        let f = parse_dimacs("p cnf 3 3\n1 0\n-1 2 0\n-1 -2 3 0\n").unwrap();
        assert_eq!(f.num_clauses(), 3);
        assert_eq!(f.clauses()[2], vec![Lit::neg(1), Lit::neg(2), Lit::pos(3)]);
    }

    #[test]
    fn clauses_may_span_lines() {
        let f = parse_dimacs("p cnf 3 2\n1 2\n3 0 -1\n0\n").unwrap();
        assert_eq!(
            f.clauses(),
            &[
                vec![Lit::pos(1), Lit::pos(2), Lit::pos(3)],
                vec![Lit::neg(1)]
            ]
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_dimacs("p cnf x 1\n"),
            Err(CnfError::Syntax { .. })
        ));
        assert!(matches!(
            parse_dimacs("p dnf 1 1\n"),
            Err(CnfError::Syntax { .. })
        ));
        assert!(matches!(
            parse_dimacs("1 0\n"),
            Err(CnfError::Syntax { .. })
        ));
        assert!(matches!(parse_dimacs(""), Err(CnfError::Syntax { .. })));
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 3 0\n"),
            Err(CnfError::UndeclaredVariable {
                lit: 3,
                num_vars: 2
            })
        ));
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 2\n"),
            Err(CnfError::MissingTerminator)
        ));
    }

    #[test]
    fn smallest_biased_export() {
        let mut f = WeightedCnf::new(1);
        f.add_clause([Lit::pos(1)]).unwrap();
        f.set_weight(1, 0.5, 0.5);
        assert_eq!(
            export_weighted(&f),
            "p cnf 1 1\nc t wmc\nc p weight 1 0.5 0\nc p weight -1 0.5 0\n1 0\n"
        );
    }

    #[test]
    fn unbiased_export_has_no_weight_lines() {
        let f = parse_dimacs("p cnf 2 1\n1 -2 0\n").unwrap();
        assert_eq!(export_weighted(&f), "p cnf 2 1\nc t wmc\n1 -2 0\n");
    }

    #[test]
    fn weights_round_trip_bitwise() {
        let mut f = WeightedCnf::new(3);
        f.add_clause([Lit::pos(1), Lit::neg(3)]).unwrap();
        f.set_weight(
            1,
            -std::f64::consts::FRAC_1_SQRT_2,
            std::f64::consts::FRAC_1_SQRT_2,
        );
        f.set_weight(3, -1.0, 1.0);
        let back = parse_dimacs(&export_weighted(&f)).unwrap();
        assert_eq!(back, f);
        for v in 1..=3 {
            let (a, b) = f.var_weights(v);
            let (c, d) = back.var_weights(v);
            assert_eq!((a.to_bits(), b.to_bits()), (c.to_bits(), d.to_bits()));
        }
    }

    #[test]
    fn one_sided_weight_line_defaults_other_polarity() {
        let f = parse_dimacs("p cnf 1 0\nc p weight -1 0.25 0\n").unwrap();
        assert_eq!(f.var_weights(1), (1.0, 0.25));
    }
}
