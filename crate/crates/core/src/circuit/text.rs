//! Line-oriented circuit dump.
//!
//! ```text
//! qcircuit v1 qubits=3 registers=2
//! register a offset=0 width=2
//! register flag offset=2 width=1
//! h controls=[] targets=[0]
//! phase(0.7853981633974483) controls=[0] targets=[1]
//! x controls=[0,1] targets=[2]
//! ```
//!
//! Phase angles are written with Rust's shortest round-trip float format, so
//! parsing an export reproduces the circuit exactly.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Circuit, CircuitError, CircuitOp};
use crate::statevector::GateKind;

const MAGIC: &str = "qcircuit";
const VERSION: &str = "v1";

#[derive(Debug, Error, Clone, PartialEq)]
#[error("line {line}: {message}")]
pub struct TextError {
    pub line: usize,
    pub message: String,
}

fn fmt_list(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(","))
}

pub(super) fn export_text(c: &Circuit) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{MAGIC} {VERSION} qubits={} registers={}",
        c.num_qubits,
        c.registers.len()
    );
    for r in &c.registers {
        let _ = writeln!(
            out,
            "register {} offset={} width={}",
            r.name, r.offset, r.width
        );
    }
    for op in &c.ops {
        let _ = writeln!(
            out,
            "{} controls={} targets={}",
            op.kind,
            fmt_list(&op.controls),
            fmt_list(&op.targets)
        );
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        self.inner
            .by_ref()
            .map(|(i, l)| (i + 1, l.trim()))
            .find(|(_, l)| !l.is_empty())
    }
}

fn err(line: usize, message: impl Into<String>) -> TextError {
    TextError {
        line,
        message: message.into(),
    }
}

fn field<'a>(line: usize, token: Option<&'a str>, key: &str) -> Result<&'a str, TextError> {
    let token = token.ok_or_else(|| err(line, format!("missing '{key}='")))?;
    token
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| err(line, format!("expected '{key}=…', found '{token}'")))
}

fn number(line: usize, s: &str) -> Result<usize, TextError> {
    s.parse()
        .map_err(|_| err(line, format!("'{s}' is not a non-negative integer")))
}

fn list(line: usize, s: &str) -> Result<Vec<usize>, TextError> {
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| err(line, format!("expected a bracketed list, found '{s}'")))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|x| number(line, x.trim())).collect()
}

fn gate_kind(line: usize, token: &str) -> Result<GateKind, TextError> {
    if let Some(arg) = token
        .strip_prefix("phase(")
        .and_then(|r| r.strip_suffix(')'))
    {
        let lambda: f64 = arg
            .parse()
            .map_err(|_| err(line, format!("bad phase angle '{arg}'")))?;
        return Ok(GateKind::Phase(lambda));
    }
    match token {
        "h" => Ok(GateKind::H),
        "x" => Ok(GateKind::X),
        "z" => Ok(GateKind::Z),
        "swap" => Ok(GateKind::Swap),
        other => Err(err(line, format!("unknown gate '{other}'"))),
    }
}

/// Parse the output of [`Circuit::export_text`].
pub fn parse_text(text: &str) -> Result<Circuit, TextError> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let (ln, header) = lines.next_line().ok_or_else(|| err(1, "empty input"))?;
    let mut tok = header.split_whitespace();
    if tok.next() != Some(MAGIC) {
        return Err(err(ln, format!("expected '{MAGIC}' header")));
    }
    match tok.next() {
        Some(VERSION) => {}
        other => {
            return Err(err(
                ln,
                format!("unsupported version {:?}", other.unwrap_or("")),
            ))
        }
    }
    let num_qubits = number(ln, field(ln, tok.next(), "qubits")?)?;
    let num_registers = number(ln, field(ln, tok.next(), "registers")?)?;

    let mut circuit = Circuit::new(num_qubits);
    for _ in 0..num_registers {
        let (ln, l) = lines
            .next_line()
            .ok_or_else(|| err(ln, "fewer register lines than declared"))?;
        let mut tok = l.split_whitespace();
        if tok.next() != Some("register") {
            return Err(err(ln, "expected a register line"));
        }
        let name = tok.next().ok_or_else(|| err(ln, "missing register name"))?;
        let offset = number(ln, field(ln, tok.next(), "offset")?)?;
        let width = number(ln, field(ln, tok.next(), "width")?)?;
        circuit
            .add_register(name, offset, width)
            .map_err(|e: CircuitError| err(ln, e.to_string()))?;
    }

    while let Some((ln, l)) = lines.next_line() {
        let mut tok = l.split_whitespace();
        let kind = gate_kind(ln, tok.next().unwrap_or_default())?;
        let controls = list(ln, field(ln, tok.next(), "controls")?)?;
        let targets = list(ln, field(ln, tok.next(), "targets")?)?;
        if let Some(extra) = tok.next() {
            return Err(err(ln, format!("unexpected trailing '{extra}'")));
        }
        circuit
            .append(CircuitOp::new(kind, &controls, &targets))
            .map_err(|e| err(ln, e.to_string()))?;
    }
    Ok(circuit)
}
