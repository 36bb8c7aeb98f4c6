//! State file formats.
//!
//! Text form:
//!
//! ```text
//! # comments and blank lines are ignored
//! qubits: 2
//! 0 0.70710678118654757 0
//! 3 0.70710678118654757 0
//! ```
//!
//! One `index re im` line per amplitude; indices that do not appear are
//! zero. JSON form: `{"qubits": n, "amplitudes": [[re, im], ...]}` with
//! exactly `2^n` pairs. Writers emit 17 significant digits so a written
//! state parses back bit-for-bit.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::StateVector;

/// Largest register accepted from a file.
pub const MAX_FILE_QUBITS: usize = 24;

/// Parses either format, choosing JSON when the first non-blank character
/// is `{`.
pub fn parse_state(input: &str) -> Result<StateVector> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

/// Same as [`parse_state`] for raw bytes, which must be UTF-8.
pub fn parse_state_bytes(input: &[u8]) -> Result<StateVector> {
    let text = std::str::from_utf8(input).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("input is not UTF-8: {e}"),
    })?;
    parse_state(text)
}

fn check_qubit_count(n: usize, line: usize) -> Result<()> {
    if n == 0 || n > MAX_FILE_QUBITS {
        return Err(Error::Parse {
            line,
            msg: format!("qubit count must be between 1 and {MAX_FILE_QUBITS}, got {n}"),
        });
    }
    Ok(())
}

fn parse_float(token: &str, line: usize) -> Result<f64> {
    let x: f64 = token.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("`{token}` is not a number"),
    })?;
    if !x.is_finite() {
        return Err(Error::Parse {
            line,
            msg: format!("`{token}` is not finite"),
        });
    }
    Ok(x)
}

pub fn parse_text(input: &str) -> Result<StateVector> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing `qubits: n` header".to_string(),
    })?;
    let count = header
        .strip_prefix("qubits")
        .and_then(|rest| rest.trim_start().strip_prefix(':'))
        .ok_or_else(|| Error::Parse {
            line: header_line,
            msg: format!("expected `qubits: n`, found `{header}`"),
        })?
        .trim();
    let n: usize = count.parse().map_err(|_| Error::Parse {
        line: header_line,
        msg: format!("`{count}` is not a qubit count"),
    })?;
    check_qubit_count(n, header_line)?;

    let dim = 1usize << n;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let mut seen = vec![false; dim];
    for (line, text) in lines {
        let mut tokens = text.split_whitespace();
        let (Some(idx), Some(re), Some(im), None) =
            (tokens.next(), tokens.next(), tokens.next(), tokens.next())
        else {
            return Err(Error::Parse {
                line,
                msg: format!("expected `index re im`, found `{text}`"),
            });
        };
        let index: usize = idx.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("`{idx}` is not a basis index"),
        })?;
        if index >= dim {
            return Err(Error::Parse {
                line,
                msg: format!("index {index} out of range for {n} qubits"),
            });
        }
        if std::mem::replace(&mut seen[index], true) {
            return Err(Error::Parse {
                line,
                msg: format!("index {index} appears twice"),
            });
        }
        amps[index] = Complex64::new(parse_float(re, line)?, parse_float(im, line)?);
    }
    StateVector::new(n, amps)
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonState {
    qubits: usize,
    amplitudes: Vec<[f64; 2]>,
}

pub fn parse_json(input: &str) -> Result<StateVector> {
    let doc: JsonState = serde_json::from_str(input).map_err(|e| Error::Json(e.to_string()))?;
    check_qubit_count(doc.qubits, 0).map_err(|e| Error::Json(e.to_string()))?;
    let expected = 1usize << doc.qubits;
    if doc.amplitudes.len() != expected {
        return Err(Error::LengthMismatch {
            qubits: doc.qubits,
            expected,
            got: doc.amplitudes.len(),
        });
    }
    StateVector::new(
        doc.qubits,
        doc.amplitudes
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect(),
    )
}

/// Text form with every amplitude listed.
pub fn write_text(s: &StateVector) -> String {
    let mut out = String::with_capacity(48 * s.dim() + 16);
    let _ = writeln!(out, "qubits: {}", s.num_qubits());
    for (i, a) in s.amplitudes().iter().enumerate() {
        let _ = writeln!(out, "{i} {} {}", fmt_real(a.re), fmt_real(a.im));
    }
    out
}

pub fn write_json(s: &StateVector) -> String {
    let doc = JsonState {
        qubits: s.num_qubits(),
        amplitudes: s.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
    };
    serde_json::to_string(&doc).expect("finite amplitudes serialize")
}

/// 17 significant digits; zero prints as `0`.
pub fn fmt_real(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// Parses a comma-separated list of 1-based qubit labels such as `1,3,5`.
pub fn parse_qubit_list(input: &str) -> Result<Vec<usize>> {
    let list: Vec<usize> = input
        .split(',')
        .map(|item| {
            let item = item.trim();
            item.parse::<usize>().map_err(|_| Error::Parse {
                line: 0,
                msg: format!("`{item}` is not a qubit label"),
            })
        })
        .collect::<Result<_>>()?;
    if let Some(&bad) = list.iter().find(|&&q| q == 0) {
        return Err(Error::QubitOutOfRange {
            qubit: bad,
            qubits: 0,
        });
    }
    Ok(list)
}
