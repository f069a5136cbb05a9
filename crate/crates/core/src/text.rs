//! Line-oriented text format for marked Gauss codes.
//!
//! One component per line. Tokens are `O<id><sign>`, `U<id><sign>`, `M+` and
//! `M-`, separated by whitespace; one token per line may carry a leading `*`
//! marking the base point (default: the first token). A line holding only `*`
//! is a crossing-free, unmarked component. `#` starts a comment.
//!
//! ```text
//! *O1+ U2+ M+ O3+ U1+ O2+ U3+
//! ```

use thiserror::Error;

use crate::code::{MarkedGaussCode, Role, Sign, Symbol};

/// A syntax error. `line` is 1-based; `column` is the 0-based character
/// offset within the line where the problem was detected.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

/// Parses a token starting at `col`; returns the symbol and whether it carried `*`.
fn parse_token(tok: &str, line: usize, col: usize) -> Result<(Symbol, bool), ParseError> {
    let chars: Vec<char> = tok.chars().collect();
    let mut i = 0;
    let starred = chars.first() == Some(&'*');
    if starred {
        i += 1;
    }
    let sign_at = |k: usize| -> Result<Sign, ParseError> {
        match chars.get(k) {
            Some('+') => Ok(Sign::Pos),
            Some('-') => Ok(Sign::Neg),
            Some(c) => Err(ParseError::new(line, col + k, format!("expected sign '+' or '-', found '{}'", c))),
            None => Err(ParseError::new(line, col + k, "missing sign")),
        }
    };
    let sym = match chars.get(i) {
        Some('M') => {
            let d = sign_at(i + 1)?;
            i += 2;
            Symbol::Mark(d)
        }
        Some(&c) if c == 'O' || c == 'U' => {
            let role = if c == 'O' { Role::Over } else { Role::Under };
            let start = i + 1;
            let mut end = start;
            while chars.get(end).is_some_and(|ch| ch.is_ascii_digit()) {
                end += 1;
            }
            if end == start {
                return Err(ParseError::new(line, col + start, "missing crossing id"));
            }
            let digits: String = chars[start..end].iter().collect();
            let id = digits
                .parse()
                .map_err(|_| ParseError::new(line, col + start, format!("crossing id '{}' out of range", digits)))?;
            let sign = sign_at(end)?;
            i = end + 1;
            Symbol::Pass { id, role, sign }
        }
        Some(c) => return Err(ParseError::new(line, col + i, format!("unexpected character '{}'", c))),
        None => return Err(ParseError::new(line, col + i, "empty token")),
    };
    if i != chars.len() {
        return Err(ParseError::new(line, col + i, "trailing characters in token"));
    }
    Ok((sym, starred))
}

/// Splits a line into (column, token) pairs, dropping comments.
pub(crate) fn tokens(line: &str) -> Vec<(usize, &str)> {
    let line = match line.find('#') {
        Some(k) => &line[..k],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    let mut byte_start = 0;
    for (col, (b, ch)) in line.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some(c0) = start.take() {
                out.push((c0, &line[byte_start..b]));
            }
        } else if start.is_none() {
            start = Some(col);
            byte_start = b;
        }
    }
    if let Some(c0) = start {
        out.push((c0, &line[byte_start..]));
    }
    out
}

/// Parses one component line; `None` for blank/comment lines.
pub(crate) fn parse_component_line(line: &str, lineno: usize) -> Result<Option<(Vec<Symbol>, usize)>, ParseError> {
    let toks = tokens(line);
    if toks.is_empty() {
        return Ok(None);
    }
    if toks.len() == 1 && toks[0].1 == "*" {
        return Ok(Some((Vec::new(), 0)));
    }
    let mut seq = Vec::with_capacity(toks.len());
    let mut base = None;
    for (k, (col, tok)) in toks.iter().enumerate() {
        let (sym, starred) = parse_token(tok, lineno, *col)?;
        if starred {
            if base.is_some() {
                return Err(ParseError::new(lineno, *col, "second base point marker on one component"));
            }
            base = Some(k);
        }
        seq.push(sym);
    }
    Ok(Some((seq, base.unwrap_or(0))))
}

pub fn parse_code(text: &str) -> Result<MarkedGaussCode, ParseError> {
    let mut components = Vec::new();
    let mut base_points = Vec::new();
    for (k, line) in text.lines().enumerate() {
        if let Some((seq, base)) = parse_component_line(line, k + 1)? {
            components.push(seq);
            base_points.push(base);
        }
    }
    Ok(MarkedGaussCode::with_base_points(components, base_points))
}

pub fn format_component(seq: &[crate::code::Symbol], base: usize) -> String {
    if seq.is_empty() {
        return "*".to_string();
    }
    seq.iter()
        .enumerate()
        .map(|(i, s)| if i == base { format!("*{}", s) } else { s.to_string() })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn format_code(code: &MarkedGaussCode) -> String {
    let mut out = String::new();
    for (seq, &b) in code.components.iter().zip(&code.base_points) {
        out.push_str(&format_component(seq, b));
        out.push('\n');
    }
    out
}
