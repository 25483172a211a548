//! Text input formats shared by the library and the CLI.
//!
//! Words are whitespace-separated tokens `g<k>` / `g<k>^-1`, or signed
//! integers `+k` / `-k` / `k`. `#` starts a comment that runs to the end of
//! the line. Errors carry 1-based line and column numbers.

use std::fmt;

use thiserror::Error;

use crate::word::Letter;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }

    /// Shift the position of an error found inside a sub-span starting at `(line, column)`.
    pub fn offset(mut self, line: usize, column: usize) -> Self {
        if self.line == 1 {
            self.column += column - 1;
        }
        self.line += line - 1;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

/// A token with its 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token<'a> {
    pub text: &'a str,
    pub line: usize,
    pub column: usize,
}

/// Split on whitespace, dropping `#` comments.
pub fn tokens(input: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    for (li, raw_line) in input.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("");
        let mut start: Option<usize> = None;
        for (ci, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    out.push(Token { text: &line[s..ci], line: li + 1, column: line[..s].chars().count() + 1 });
                }
            } else if start.is_none() {
                start = Some(ci);
            }
        }
    }
    out
}

fn parse_letter_token(tok: &Token<'_>) -> Result<Letter, ParseError> {
    let err = |msg: String| ParseError::new(tok.line, tok.column, msg);
    let text = tok.text;
    if let Some(rest) = text.strip_prefix('g').or_else(|| text.strip_prefix('G')) {
        let (num, positive) = match rest.split_once('^') {
            None => (rest, true),
            Some((num, "-1")) => (num, false),
            Some((num, "1" | "+1")) => (num, true),
            Some((_, exp)) => return Err(err(format!("unsupported exponent `{exp}` (only ^-1 and ^1)"))),
        };
        let generator: u32 = num.parse().map_err(|_| err(format!("bad generator index in `{text}`")))?;
        Letter::new(generator, positive).map_err(|e| err(e.to_string()))
    } else {
        let value: i64 = text.parse().map_err(|_| err(format!("unrecognized token `{text}`")))?;
        Letter::from_signed(value).map_err(|e| err(e.to_string()))
    }
}

/// Parse a letter sequence (not reduced).
pub fn parse_letters(input: &str) -> Result<Vec<Letter>, ParseError> {
    tokens(input).iter().map(parse_letter_token).collect()
}

/// Parse whitespace- or comma-separated integers.
pub fn parse_integers(input: &str) -> Result<Vec<(i64, usize, usize)>, ParseError> {
    let mut out = Vec::new();
    for tok in tokens(input) {
        let mut col = tok.column;
        for piece in tok.text.split(',') {
            if !piece.is_empty() {
                let v: i64 = piece
                    .parse()
                    .map_err(|_| ParseError::new(tok.line, col, format!("expected an integer, got `{piece}`")))?;
                out.push((v, tok.line, col));
            }
            col += piece.chars().count() + 1;
        }
    }
    Ok(out)
}

/// Parse a comma- or whitespace-separated list of positive indices, e.g. `1,2,3`.
pub fn parse_index_list(input: &str) -> Result<Vec<u32>, ParseError> {
    parse_integers(input)?
        .into_iter()
        .map(|(v, line, col)| {
            u32::try_from(v)
                .ok()
                .filter(|&v| v >= 1)
                .ok_or_else(|| ParseError::new(line, col, format!("expected a positive index, got {v}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn token_forms() {
        let ls = parse_letters("g1 g3^-1  -2 +4 5 # trailing comment").unwrap();
        let signed: Vec<i64> = ls.iter().map(|l| l.to_signed()).collect();
        assert_eq!(signed, vec![1, -3, -2, 4, 5]);
        assert!(parse_letters("").unwrap().is_empty());
    }

    #[test]
    fn error_positions() {
        let e = parse_letters("g1 g2\n  g0").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse_letters("g1 x").unwrap_err();
        assert_eq!((e.line, e.column), (1, 4));
        let e = parse_letters("g2^3").unwrap_err();
        assert!(e.message.contains("exponent"));
    }

    #[test]
    fn index_lists() {
        assert_eq!(parse_index_list("1,2, 3").unwrap(), vec![1, 2, 3]);
        let e = parse_index_list("1,0").unwrap_err();
        assert_eq!(e.column, 3);
    }
}
