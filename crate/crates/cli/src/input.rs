//! Reading inputs and parsing the text formats.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_rational::BigRational;

use ntriv::parse::{self, ParseError};
use ntriv::seifert::{IntMatrix, LaurentPolynomial};
use ntriv::word::{EntrySequence, Letter, Word};

use crate::CliError;

/// Entry sequences and `(position, letter)` insertions.
pub type FactorFile = (Vec<EntrySequence>, Vec<(usize, Letter)>);

pub struct Input {
    pub name: String,
    pub text: String,
}

impl Input {
    pub fn read(path: Option<&Path>) -> Result<Input, CliError> {
        match path {
            None => read_stdin(),
            Some(p) if p == Path::new("-") => read_stdin(),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                Ok(Input { name: p.display().to_string(), text })
            }
        }
    }

    pub fn error(&self, error: ParseError) -> CliError {
        CliError::Parse { origin: self.name.clone(), error }
    }

    /// Non-blank lines with comments removed, numbered from 1.
    fn lines(&self) -> impl Iterator<Item = (usize, &str)> {
        self.text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
            .filter(|(_, l)| !l.trim().is_empty())
    }
}

fn read_stdin() -> Result<Input, CliError> {
    let mut text = String::new();
    std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::Io(format!("<stdin>: {e}")))?;
    Ok(Input { name: "<stdin>".into(), text })
}

pub fn read_opt(path: &Option<PathBuf>) -> Result<Input, CliError> {
    Input::read(path.as_deref())
}

fn end_position(input: &Input) -> (usize, usize) {
    let line = input.text.lines().count().max(1);
    let column = input.text.lines().last().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// The whole input as one word.
pub fn word(input: &Input) -> Result<Word, CliError> {
    parse::parse_letters(&input.text).map(Word::from_letters).map_err(|e| input.error(e))
}

/// One word per non-blank line; a line holding only `e` is the empty word.
pub fn words(input: &Input) -> Result<Vec<Word>, CliError> {
    let mut out = Vec::new();
    for (n, line) in input.lines() {
        if line.trim() == "e" {
            out.push(Word::empty());
            continue;
        }
        let letters = parse::parse_letters(line).map_err(|e| input.error(e.offset(n, 1)))?;
        out.push(Word::from_letters(letters));
    }
    Ok(out)
}

/// Comma- or whitespace-separated positive indices given on the command line.
pub fn index_list(option: &str, text: &str) -> Result<Vec<u32>, CliError> {
    parse::parse_index_list(text).map_err(|error| CliError::Parse { origin: option.into(), error })
}

/// Genus `g` followed by the `2g × 2g` entries in row-major order.
pub fn matrix(input: &Input) -> Result<(usize, IntMatrix), CliError> {
    let values = parse::parse_integers(&input.text).map_err(|e| input.error(e))?;
    let Some(&(g, line, column)) = values.first() else {
        let (line, column) = end_position(input);
        return Err(input.error(ParseError::new(line, column, "expected the genus followed by matrix entries")));
    };
    if g < 1 {
        return Err(input.error(ParseError::new(line, column, format!("genus must be at least 1, got {g}"))));
    }
    let size = 2 * g as usize;
    let entries = &values[1..];
    if entries.len() > size * size {
        let (_, line, column) = entries[size * size];
        return Err(input.error(ParseError::new(line, column, format!("unexpected entry beyond the {size}x{size} matrix"))));
    }
    if entries.len() < size * size {
        let (line, column) = end_position(input);
        let message = format!("genus {g} needs {} entries, found {}", size * size, entries.len());
        return Err(input.error(ParseError::new(line, column, message)));
    }
    let m = entries.chunks(size).map(|row| row.iter().map(|&(v, _, _)| v).collect()).collect();
    Ok((g as usize, m))
}

/// Minimum exponent followed by the coefficients in increasing degree.
pub fn laurent(input: &Input) -> Result<LaurentPolynomial, CliError> {
    let values = parse::parse_integers(&input.text).map_err(|e| input.error(e))?;
    if values.len() < 2 {
        let (line, column) = end_position(input);
        let message = "expected the minimum exponent followed by at least one coefficient";
        return Err(input.error(ParseError::new(line, column, message)));
    }
    let coefficients = values[1..].iter().map(|&(c, _, _)| i128::from(c)).collect();
    Ok(LaurentPolynomial::new(values[0].0, coefficients))
}

/// Factor lines (entry sequences) and `insert <position> <letter>` lines.
pub fn factors(input: &Input) -> Result<FactorFile, CliError> {
    let mut factors = Vec::new();
    let mut insertions = Vec::new();
    for (n, line) in input.lines() {
        let toks = parse::tokens(line);
        if toks[0].text == "insert" {
            if toks.len() != 3 {
                let message = "expected `insert <position> <letter>`";
                return Err(input.error(ParseError::new(n, toks[0].column, message)));
            }
            let position: usize = toks[1].text.parse().map_err(|_| {
                input.error(ParseError::new(n, toks[1].column, format!("bad position `{}`", toks[1].text)))
            })?;
            let letters = parse::parse_letters(toks[2].text).map_err(|e| input.error(e.offset(n, toks[2].column)))?;
            insertions.push((position, letters[0]));
        } else {
            let letters = parse::parse_letters(line).map_err(|e| input.error(e.offset(n, 1)))?;
            let entries =
                EntrySequence::new(letters).map_err(|e| input.error(ParseError::new(n, toks[0].column, e.to_string())))?;
            factors.push(entries);
        }
    }
    Ok((factors, insertions))
}

/// Lines `{i, j, …} value` with rational values such as `3/4`.
pub fn subset_values(input: &Input) -> Result<BTreeMap<BTreeSet<u32>, BigRational>, CliError> {
    let mut out = BTreeMap::new();
    for (n, line) in input.lines() {
        let col = |byte: usize| line[..byte].chars().count() + 1;
        let open = line.find('{').filter(|&i| line[..i].trim().is_empty());
        let close = line.find('}');
        let (Some(open), Some(close)) = (open, close.filter(|&c| Some(c) > open)) else {
            let start = line.len() - line.trim_start().len();
            return Err(input.error(ParseError::new(n, col(start), "expected `{indices} value`")));
        };
        let subset: BTreeSet<u32> = parse::parse_index_list(&line[open + 1..close])
            .map_err(|e| input.error(e.offset(n, col(open + 1))))?
            .into_iter()
            .collect();
        let rest = &line[close + 1..];
        let value_start = close + 1 + (rest.len() - rest.trim_start().len());
        let value = BigRational::from_str(rest.trim())
            .map_err(|_| input.error(ParseError::new(n, col(value_start), format!("expected a rational, got `{}`", rest.trim()))))?;
        if out.insert(subset, value).is_some() {
            return Err(input.error(ParseError::new(n, col(open), "subset listed twice")));
        }
    }
    Ok(out)
}
