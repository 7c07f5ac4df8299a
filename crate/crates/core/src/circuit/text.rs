//! The line-oriented `.qc` circuit format.
//!
//! ```text
//! # comment
//! qubits 3
//! h 0
//! ccx 0 1 2
//! mcx !0 1 2     # fires when qubit 0 is |0⟩ and qubit 1 is |1⟩
//! ```

use std::fmt::Write as _;

use super::{Circuit, CircuitError, Control, Gate, Result};

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let code = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in code.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &code[s..i],
                    column: s + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &code[s..],
            column: s + 1,
        });
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> CircuitError {
    CircuitError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn parse_index(tok: &Token<'_>, line: usize) -> Result<usize> {
    if !tok.text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(
            line,
            tok.column,
            format!("expected a qubit index, found `{}`", tok.text),
        ));
    }
    tok.text
        .parse()
        .map_err(|_| syntax(line, tok.column, "qubit index too large"))
}

fn parse_control(tok: &Token<'_>, line: usize, allow_negation: bool) -> Result<Control> {
    match tok.text.strip_prefix('!') {
        Some(rest) if allow_negation => {
            let inner = Token {
                text: rest,
                column: tok.column + 1,
            };
            Ok(Control::neg(parse_index(&inner, line)?))
        }
        Some(_) => Err(syntax(
            line,
            tok.column,
            "negated controls are only allowed on `mcx`",
        )),
        None => Ok(Control::pos(parse_index(tok, line)?)),
    }
}

fn expect_arity(name: &Token<'_>, args: &[Token<'_>], arity: usize, line: usize) -> Result<()> {
    if args.len() != arity {
        let column = args.get(arity).map_or(name.column, |t| t.column);
        return Err(syntax(
            line,
            column,
            format!(
                "`{}` takes {arity} qubit argument(s), found {}",
                name.text,
                args.len()
            ),
        ));
    }
    Ok(())
}

fn parse_gate(tokens: &[Token<'_>], line: usize) -> Result<Gate> {
    let (name, args) = tokens.split_first().expect("non-empty token list");
    let single = |ctor: fn(usize) -> Gate| -> Result<Gate> {
        expect_arity(name, args, 1, line)?;
        Ok(ctor(parse_index(&args[0], line)?))
    };
    match name.text {
        "x" => single(Gate::X),
        "h" => single(Gate::H),
        "s" => single(Gate::S),
        "t" => single(Gate::T),
        "cx" => {
            expect_arity(name, args, 2, line)?;
            Ok(Gate::Cnot {
                control: parse_control(&args[0], line, false)?,
                target: parse_index(&args[1], line)?,
            })
        }
        "ccx" => {
            expect_arity(name, args, 3, line)?;
            Ok(Gate::Ccnot {
                controls: [
                    parse_control(&args[0], line, false)?,
                    parse_control(&args[1], line, false)?,
                ],
                target: parse_index(&args[2], line)?,
            })
        }
        "mcx" => {
            if args.len() < 2 {
                return Err(syntax(
                    line,
                    name.column,
                    "`mcx` needs at least one control and a target",
                ));
            }
            let (target, controls) = args.split_last().unwrap();
            let controls = controls
                .iter()
                .map(|t| parse_control(t, line, true))
                .collect::<Result<Vec<_>>>()?;
            if target.text.starts_with('!') {
                return Err(syntax(line, target.column, "the target cannot be negated"));
            }
            Ok(Gate::Mcx {
                controls,
                target: parse_index(target, line)?,
            })
        }
        other => Err(CircuitError::UnknownGate {
            line,
            column: name.column,
            name: other.to_string(),
        }),
    }
}

/// Parse `.qc` source text. Gates keep file order; `!q` controls are kept as
/// negated polarity, not rewritten.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let tokens = tokenize(raw);
        if tokens.is_empty() {
            continue;
        }
        match circuit.as_mut() {
            None => {
                if tokens[0].text != "qubits" {
                    return Err(syntax(
                        line,
                        tokens[0].column,
                        "expected `qubits <n>` header",
                    ));
                }
                if tokens.len() != 2 {
                    let column = tokens.get(2).map_or(tokens[0].column, |t| t.column);
                    return Err(syntax(line, column, "expected `qubits <n>` header"));
                }
                let n = parse_index(&tokens[1], line)?;
                if n == 0 {
                    return Err(syntax(
                        line,
                        tokens[1].column,
                        "qubit count must be positive",
                    ));
                }
                circuit = Some(Circuit::new(n)?);
            }
            Some(c) => {
                let gate = parse_gate(&tokens, line)?;
                c.push(gate).map_err(|e| CircuitError::AtLine {
                    line,
                    inner: Box::new(e),
                })?;
            }
        }
    }
    circuit.ok_or_else(|| {
        syntax(
            text.lines().count().max(1),
            1,
            "missing `qubits <n>` header",
        )
    })
}

/// Render a circuit in `.qc` form; [`parse_circuit`] inverts it exactly.
pub fn serialize_circuit(c: &Circuit) -> String {
    let mut out = format!("qubits {}\n", c.n_qubits());
    for g in c.gates() {
        let _ = writeln!(out, "{g}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_bell_prefix() {
        let c = parse_circuit("qubits 2\nh 0\ncx 0 1").unwrap();
        assert_eq!(c.n_qubits(), 2);
        assert_eq!(c.gates(), &[Gate::H(0), Gate::cnot(0, 1)]);
    }

    #[test]
    fn parses_easy_circuit() {
        let c = parse_circuit("qubits 3\nh 0\nh 1\nccx 0 1 2").unwrap();
        assert_eq!(c.gates(), &[Gate::H(0), Gate::H(1), Gate::ccnot(0, 1, 2)]);
    }

    #[test]
    fn negated_control_is_kept() {
        let c = parse_circuit("qubits 2\nmcx !0 1").unwrap();
        assert_eq!(c.gates(), &[Gate::mcx(vec![Control::neg(0)], 1)]);
    }

    #[test]
    fn comments_and_blank_lines() {
        let src = "# header comment\n\n  qubits 1   # one wire\n\n# gate\nh 0 # hadamard\n";
        let c = parse_circuit(src).unwrap();
        assert_eq!(c.gates(), &[Gate::H(0)]);
    }

    #[test]
    fn serialize_forms() {
        let c = Circuit::with_gates(1, [Gate::H(0)]).unwrap();
        assert_eq!(serialize_circuit(&c), "qubits 1\nh 0\n");
        let empty = Circuit::new(3).unwrap();
        assert_eq!(serialize_circuit(&empty), "qubits 3\n");
        assert_eq!(parse_circuit("qubits 3\n").unwrap(), empty);
        let neg = Circuit::with_gates(
            3,
            [Gate::Ccnot {
                controls: [Control::neg(0), Control::pos(1)],
                target: 2,
            }],
        )
        .unwrap();
        assert_eq!(serialize_circuit(&neg), "qubits 3\nmcx !0 1 2\n");
    }

    #[test]
    fn error_positions() {
        match parse_circuit("qubits 2\nh 0\ncx 0 x") {
            Err(CircuitError::Syntax { line, column, .. }) => assert_eq!((line, column), (3, 6)),
            other => panic!("{other:?}"),
        }
        match parse_circuit("qubits 2\n  foo 1") {
            Err(CircuitError::UnknownGate { line, column, name }) => {
                assert_eq!((line, column, name.as_str()), (2, 3, "foo"))
            }
            other => panic!("{other:?}"),
        }
        match parse_circuit("h 0") {
            Err(CircuitError::Syntax { line: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_circuit("qubits 2\ncx !0 1") {
            Err(CircuitError::Syntax {
                line: 2, column: 4, ..
            }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_circuit("").is_err());
        assert!(parse_circuit("qubits 0").is_err());
        assert!(parse_circuit("qubits 2\nmcx 1").is_err());
        assert!(parse_circuit("qubits 2\nh 0 1").is_err());
    }

    #[test]
    fn range_and_duplicate_errors_carry_line() {
        match parse_circuit("qubits 2\nh 2") {
            Err(CircuitError::AtLine { line: 2, inner }) => assert_eq!(
                *inner,
                CircuitError::QubitOutOfRange {
                    qubit: 2,
                    n_qubits: 2
                }
            ),
            other => panic!("{other:?}"),
        }
        match parse_circuit("qubits 3\nccx 1 1 2") {
            Err(CircuitError::AtLine { line: 2, inner }) => {
                assert_eq!(*inner, CircuitError::DuplicateQubit { qubit: 1 })
            }
            other => panic!("{other:?}"),
        }
    }
}
