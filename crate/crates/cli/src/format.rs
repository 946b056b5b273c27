//! Parsing and rendering for the matrix and permutation file formats.
//!
//! Matrix text format: first line the order `n`, then `n` lines of `n`
//! whitespace-separated rationals, each `p`, `-p`, or `p/q` with `q > 0`.
//! Matrix JSON format: `{"n": 5, "entries": [["1/5", ...], ...]}` with
//! every rational as a string, never a float. A leading `{` selects the
//! JSON parser, anything else the text parser.
//!
//! Permutations are emitted as one line `n` and one line of `n` images
//! (text), or `{"images": [...], "n": n}` (JSON).

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use panmagic::{Permutation, Scalar, SquareMatrix};
use serde_json::{json, Value};

/// A malformed input file; every variant names the source and, where one
/// exists, the offending line and token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormatError {
    BadOrder { source: String, line: usize, token: String },
    MissingRows { source: String, expected: usize, found: usize },
    WrongEntryCount { source: String, line: usize, expected: usize, found: usize },
    BadRational { source: String, line: usize, token: String },
    TrailingContent { source: String, line: usize },
    BadJson { source: String, message: String },
    BadJsonEntry { source: String, row: usize, col: usize, token: String },
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::BadOrder { source, line, token } => {
                write!(
                    f,
                    "{}:{}: expected a positive matrix order, found '{}'",
                    source, line, token
                )
            }
            FormatError::MissingRows { source, expected, found } => {
                write!(f, "{}: expected {} rows, found {}", source, expected, found)
            }
            FormatError::WrongEntryCount { source, line, expected, found } => {
                write!(f, "{}:{}: expected {} entries, found {}", source, line, expected, found)
            }
            FormatError::BadRational { source, line, token } => {
                write!(f, "{}:{}: bad rational token '{}'", source, line, token)
            }
            FormatError::TrailingContent { source, line } => {
                write!(f, "{}:{}: unexpected content after the last row", source, line)
            }
            FormatError::BadJson { source, message } => {
                write!(f, "{}: {}", source, message)
            }
            FormatError::BadJsonEntry { source, row, col, token } => {
                write!(f, "{}: entry ({}, {}): bad rational token '{}'", source, row, col, token)
            }
        }
    }
}

impl std::error::Error for FormatError {}

/// Strict rational grammar: optional `-`, digits, optionally `/` and more
/// digits with a nonzero value.
fn parse_rational(token: &str) -> Option<Scalar> {
    let (num_str, den_str) = match token.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (token, None),
    };
    let digits = num_str.strip_prefix('-').unwrap_or(num_str);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let numer: BigInt = num_str.parse().ok()?;
    let denom: BigInt = match den_str {
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            d.parse().ok()?
        }
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return None;
    }
    Some(Scalar::new(numer, denom))
}

/// Parses a matrix from either supported format, selected by the leading
/// character of the payload.
pub fn parse_matrix(text: &str, source: &str) -> Result<SquareMatrix, FormatError> {
    if text.trim_start().starts_with('{') {
        parse_matrix_json(text, source)
    } else {
        parse_matrix_text(text, source)
    }
}

fn parse_matrix_text(text: &str, source: &str) -> Result<SquareMatrix, FormatError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.trim().is_empty());

    let (order_line, order_text) = lines.next().ok_or_else(|| FormatError::BadOrder {
        source: source.to_string(),
        line: 1,
        token: String::new(),
    })?;
    let token = order_text.trim();
    let n: usize = token.parse().map_err(|_| FormatError::BadOrder {
        source: source.to_string(),
        line: order_line,
        token: token.to_string(),
    })?;
    if n == 0 {
        return Err(FormatError::BadOrder {
            source: source.to_string(),
            line: order_line,
            token: token.to_string(),
        });
    }

    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    for _ in 0..n {
        let Some((line_no, line)) = lines.next() else {
            return Err(FormatError::MissingRows {
                source: source.to_string(),
                expected: n,
                found: rows.len(),
            });
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != n {
            return Err(FormatError::WrongEntryCount {
                source: source.to_string(),
                line: line_no,
                expected: n,
                found: tokens.len(),
            });
        }
        let mut row = Vec::with_capacity(n);
        for tok in tokens {
            let value = parse_rational(tok).ok_or_else(|| FormatError::BadRational {
                source: source.to_string(),
                line: line_no,
                token: tok.to_string(),
            })?;
            row.push(value);
        }
        rows.push(row);
    }

    if let Some((line_no, _)) = lines.next() {
        return Err(FormatError::TrailingContent { source: source.to_string(), line: line_no });
    }

    Ok(SquareMatrix::from_rows(rows).expect("dimensions were checked"))
}

fn parse_matrix_json(text: &str, source: &str) -> Result<SquareMatrix, FormatError> {
    let bad = |message: &str| FormatError::BadJson {
        source: source.to_string(),
        message: message.to_string(),
    };
    let value: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let obj = value.as_object().ok_or_else(|| bad("expected a JSON object"))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .filter(|&n| n > 0)
        .ok_or_else(|| bad("field 'n' must be a positive integer"))? as usize;
    let entries = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("field 'entries' must be an array of rows"))?;
    if entries.len() != n {
        return Err(FormatError::MissingRows {
            source: source.to_string(),
            expected: n,
            found: entries.len(),
        });
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    for (i, row_value) in entries.iter().enumerate() {
        let row = row_value
            .as_array()
            .ok_or_else(|| bad("every row must be an array of rational strings"))?;
        if row.len() != n {
            return Err(FormatError::WrongEntryCount {
                source: source.to_string(),
                line: i + 1,
                expected: n,
                found: row.len(),
            });
        }
        let mut parsed = Vec::with_capacity(n);
        for (j, cell) in row.iter().enumerate() {
            let token = cell.as_str().unwrap_or("");
            let value = parse_rational(token).ok_or_else(|| FormatError::BadJsonEntry {
                source: source.to_string(),
                row: i,
                col: j,
                token: token.to_string(),
            })?;
            parsed.push(value);
        }
        rows.push(parsed);
    }
    Ok(SquareMatrix::from_rows(rows).expect("dimensions were checked"))
}

pub fn render_matrix_text(a: &SquareMatrix) -> String {
    let n = a.order();
    let mut out = format!("{}\n", n);
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| a.get(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn render_matrix_json(a: &SquareMatrix) -> String {
    let n = a.order();
    let entries: Vec<Vec<String>> =
        (0..n).map(|i| (0..n).map(|j| a.get(i, j).to_string()).collect()).collect();
    let mut out = serde_json::to_string_pretty(&json!({ "n": n, "entries": entries }))
        .expect("serialization of plain strings cannot fail");
    out.push('\n');
    out
}

pub fn render_perm_text(pi: &Permutation) -> String {
    let images: Vec<String> = pi.images().iter().map(usize::to_string).collect();
    format!("{}\n{}\n", pi.degree(), images.join(" "))
}

pub fn render_perm_json(pi: &Permutation) -> String {
    let mut out = serde_json::to_string_pretty(&json!({
        "n": pi.degree(),
        "images": pi.images(),
    }))
    .expect("serialization of integers cannot fail");
    out.push('\n');
    out
}
