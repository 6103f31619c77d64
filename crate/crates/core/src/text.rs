//! Line-oriented circuit files.
//!
//! ```text
//! QUBITS 3            # register size, required first statement
//! INDEXING 1          # optional; 1 (default) or 0
//! CNOT 1 2
//! CH 2 3
//! CCNOT 2 !3 1        # `!` marks a control that fires on |0>
//! U3(pi, -pi/2, pi/2) 1
//! ```
//!
//! Controls come before targets. Angles are decimal radians; `pi`,
//! `pi/<int>` and `<number>*pi[/<int>]` are accepted on input. The
//! serializer always writes one-based indices and plain decimals with 12
//! significant digits.

use std::fmt;

use thiserror::Error;

use crate::circuit::{Circuit, Control, Gate, GateApplication};
use crate::error::Error;
use crate::sim::MAX_QUBITS;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownGate(String),
    Arity(String),
    IndexOutOfRange { index: i64, n_qubits: usize },
    DuplicateOperand(i64),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UnknownGate(name) => write!(f, "unknown gate `{name}`"),
            ParseErrorKind::Arity(msg) => write!(f, "arity mismatch: {msg}"),
            ParseErrorKind::IndexOutOfRange { index, n_qubits } => {
                write!(f, "qubit {index} outside the declared {n_qubits}-qubit register")
            }
            ParseErrorKind::DuplicateOperand(q) => write!(f, "qubit {q} used more than once"),
        }
    }
}

/// Parse failure with a one-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

type PResult<T> = std::result::Result<T, ParseError>;

struct Line<'a> {
    text: &'a str,
    number: usize,
    pos: usize,
}

impl<'a> Line<'a> {
    fn err(&self, at: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.number,
            column: self.text[..at.min(self.text.len())].chars().count() + 1,
            kind,
        }
    }

    fn syntax(&self, at: usize, msg: impl Into<String>) -> ParseError {
        self.err(at, ParseErrorKind::Syntax(msg.into()))
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) -> bool {
        let before = self.pos;
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
        self.pos > before
    }

    fn at_end(&self) -> bool {
        self.rest().is_empty()
    }

    /// `[A-Za-z_][A-Za-z0-9_]*`
    fn word(&mut self) -> Option<(usize, &'a str)> {
        let start = self.pos;
        let len = self
            .rest()
            .char_indices()
            .take_while(|(i, ch)| ch.is_ascii_alphabetic() || *ch == '_' || (*i > 0 && ch.is_ascii_digit()))
            .map(|(i, ch)| i + ch.len_utf8())
            .last()
            .unwrap_or(0);
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((start, &self.text[start..self.pos]))
    }

    /// Non-whitespace run.
    fn token(&mut self) -> Option<(usize, &'a str)> {
        let start = self.pos;
        let len = self
            .rest()
            .char_indices()
            .take_while(|(_, ch)| !ch.is_whitespace())
            .map(|(i, ch)| i + ch.len_utf8())
            .last()
            .unwrap_or(0);
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((start, &self.text[start..self.pos]))
    }
}

fn parse_count(line: &Line<'_>, at: usize, tok: &str) -> PResult<i64> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(line.syntax(at, format!("expected an integer, found `{tok}`")));
    }
    tok.parse::<i64>()
        .map_err(|_| line.syntax(at, format!("integer `{tok}` is too large")))
}

/// `[sign] (number | [number '*'] pi ['/' int])`
pub fn parse_angle(expr: &str) -> Option<f64> {
    let s = expr.trim();
    let (sign, body) = match s.as_bytes().first() {
        Some(b'-') => (-1.0, &s[1..]),
        Some(b'+') => (1.0, &s[1..]),
        _ => (1.0, s),
    };
    let body = body.trim_start();
    let lower = body.to_ascii_lowercase();
    let pi_term = |t: &str| -> Option<f64> {
        let t = t.trim();
        let tail = t.strip_prefix("pi")?;
        let tail = tail.trim_start();
        if tail.is_empty() {
            return Some(std::f64::consts::PI);
        }
        let den = tail.strip_prefix('/')?.trim();
        if den.is_empty() || !den.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let den: u64 = den.parse().ok()?;
        (den != 0).then(|| std::f64::consts::PI / den as f64)
    };
    let plain = |t: &str| -> Option<f64> {
        let t = t.trim();
        // only digits, '.', exponent markers and signs; rejects inf/nan
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-')) {
            return None;
        }
        t.parse::<f64>().ok().filter(|v| v.is_finite())
    };
    let value = if let Some((coef, rest)) = lower.split_once('*') {
        plain(coef)? * pi_term(rest)?
    } else if lower.starts_with("pi") {
        pi_term(&lower)?
    } else {
        plain(&lower)?
    };
    Some(sign * value)
}

/// Parses UTF-8 bytes; invalid encodings become a syntax error on line 1.
pub fn parse_bytes(bytes: &[u8]) -> PResult<Circuit> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse(text),
        Err(e) => Err(ParseError {
            line: 1 + bytes[..e.valid_up_to()].iter().filter(|b| **b == b'\n').count(),
            column: 1,
            kind: ParseErrorKind::Syntax("input is not valid UTF-8".into()),
        }),
    }
}

pub fn parse(text: &str) -> PResult<Circuit> {
    let mut circuit: Option<Circuit> = None;
    let mut one_based = true;
    let mut seen_statement = false;

    for (idx, raw) in text.split('\n').enumerate() {
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let code = raw.split('#').next().unwrap_or("");
        let mut line = Line {
            text: code,
            number: idx + 1,
            pos: 0,
        };
        line.skip_ws();
        if line.at_end() {
            continue;
        }
        let Some((name_at, name)) = line.word() else {
            return Err(line.syntax(line.pos, "expected a keyword or gate name"));
        };
        let upper = name.to_ascii_uppercase();

        if upper == "QUBITS" {
            if circuit.is_some() {
                return Err(line.syntax(name_at, "QUBITS declared twice"));
            }
            line.skip_ws();
            let Some((at, tok)) = line.token() else {
                return Err(line.syntax(line.pos, "QUBITS needs a count"));
            };
            let n = parse_count(&line, at, tok)?;
            if n < 1 || n > MAX_QUBITS as i64 {
                return Err(line.syntax(at, format!("qubit count {n} outside 1..={MAX_QUBITS}")));
            }
            line.skip_ws();
            if !line.at_end() {
                return Err(line.syntax(line.pos, "unexpected text after QUBITS"));
            }
            circuit = Some(Circuit::new(n as usize).expect("count checked"));
            continue;
        }

        let Some(c) = circuit.as_mut() else {
            return Err(line.syntax(name_at, "file must start with `QUBITS <n>`"));
        };

        if upper == "INDEXING" {
            if seen_statement {
                return Err(line.syntax(name_at, "INDEXING must precede all gates"));
            }
            line.skip_ws();
            let Some((at, tok)) = line.token() else {
                return Err(line.syntax(line.pos, "INDEXING needs 0 or 1"));
            };
            one_based = match tok {
                "0" => false,
                "1" => true,
                _ => return Err(line.syntax(at, format!("INDEXING must be 0 or 1, found `{tok}`"))),
            };
            line.skip_ws();
            if !line.at_end() {
                return Err(line.syntax(line.pos, "unexpected text after INDEXING"));
            }
            continue;
        }

        seen_statement = true;
        let app = parse_statement(&mut line, name_at, name, c.n_qubits(), one_based)?;
        c.push(app).map_err(|e| line.syntax(name_at, e.to_string()))?;
    }

    circuit.ok_or(ParseError {
        line: 1,
        column: 1,
        kind: ParseErrorKind::Syntax("missing `QUBITS <n>` header".into()),
    })
}

fn parse_statement(
    line: &mut Line<'_>,
    name_at: usize,
    name: &str,
    n_qubits: usize,
    one_based: bool,
) -> PResult<GateApplication> {
    let mut params = Vec::new();
    let mut pending_ws = line.skip_ws();
    if line.rest().starts_with('(') {
        pending_ws = false;
        let open = line.pos;
        let Some(close_rel) = line.rest().find(')') else {
            return Err(line.syntax(open, "unclosed parameter list"));
        };
        let inner = &line.text[open + 1..open + close_rel];
        let mut offset = open + 1;
        for piece in inner.split(',') {
            let value = parse_angle(piece)
                .ok_or_else(|| line.syntax(offset, format!("invalid angle `{}`", piece.trim())))?;
            params.push(value);
            offset += piece.len() + 1;
        }
        line.pos = open + close_rel + 1;
    }

    let gate = Gate::from_name(name, &params).map_err(|e| match e {
        Error::UnknownGate(g) => line.err(name_at, ParseErrorKind::UnknownGate(g)),
        other => line.err(name_at, ParseErrorKind::Arity(other.to_string())),
    })?;

    let mut operands: Vec<(usize, bool, i64)> = Vec::new();
    loop {
        let had_ws = line.skip_ws() || std::mem::take(&mut pending_ws);
        if line.at_end() {
            break;
        }
        if !had_ws {
            return Err(line.syntax(line.pos, "operands must be separated by whitespace"));
        }
        let (at, tok) = line.token().expect("not at end");
        let (negated, digits, digits_at) = match tok.strip_prefix('!') {
            Some(d) => (true, d, at + 1),
            None => (false, tok, at),
        };
        let raw = parse_count(line, digits_at, digits)?;
        operands.push((at, negated, raw));
    }

    let (n_ctl, n_tgt) = (gate.n_controls(), gate.n_targets());
    if operands.len() != n_ctl + n_tgt {
        return Err(line.err(
            name_at,
            ParseErrorKind::Arity(format!(
                "{} takes {} operand(s), found {}",
                gate.name(),
                n_ctl + n_tgt,
                operands.len()
            )),
        ));
    }

    let mut seen: Vec<usize> = Vec::new();
    let mut controls = Vec::new();
    let mut targets = Vec::new();
    for (k, &(at, negated, raw)) in operands.iter().enumerate() {
        let index = if one_based { raw - 1 } else { raw };
        if index < 0 || index >= n_qubits as i64 {
            return Err(line.err(at, ParseErrorKind::IndexOutOfRange { index: raw, n_qubits }));
        }
        let q = index as usize;
        if seen.contains(&q) {
            return Err(line.err(at, ParseErrorKind::DuplicateOperand(raw)));
        }
        seen.push(q);
        if k < n_ctl {
            controls.push(Control { qubit: q, negated });
        } else if negated {
            return Err(line.syntax(at, "`!` is only allowed on control operands"));
        } else {
            targets.push(q);
        }
    }
    GateApplication::new(gate, controls, targets).map_err(|e| line.syntax(name_at, e.to_string()))
}

/// `%.12g`-style rendering.
pub fn format_angle(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let fixed = format!("{:.*}", (11 - exp) as usize, v);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Canonical text: `QUBITS <n>` then one statement per line, one-based.
pub fn serialize(circuit: &Circuit) -> String {
    let mut out = format!("QUBITS {}\n", circuit.n_qubits());
    for app in circuit.gates() {
        out.push_str(app.gate.name());
        let params = app.gate.params();
        if !params.is_empty() {
            let joined: Vec<String> = params.iter().map(|p| format_angle(*p)).collect();
            out.push('(');
            out.push_str(&joined.join(", "));
            out.push(')');
        }
        for c in &app.controls {
            out.push(' ');
            if c.negated {
                out.push('!');
            }
            out.push_str(&(c.qubit + 1).to_string());
        }
        for t in &app.targets {
            out.push(' ');
            out.push_str(&(t + 1).to_string());
        }
        out.push('\n');
    }
    out
}
