//! Plain-text automaton format.
//!
//! ```text
//! alphabet: a b
//! states: 2
//! start: 0
//! finals: 0
//! a: 1 0
//! b: 0 1
//! ```
//!
//! `#` starts a comment. Header lines come in the order shown, followed by
//! exactly one row per letter.

use std::fmt::Write;
use std::str::FromStr;

use thiserror::Error;

use super::{Alphabet, AutomatonError, Dfa};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseAutomatonError {
    #[error("line {line}: expected `{expected}:`")]
    MissingHeader { line: usize, expected: &'static str },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    Truncated(&'static str),
    #[error("no transition row for letter '{0}'")]
    MissingRow(char),
    #[error("line {line}: second transition row for letter '{letter}'")]
    DuplicateRow { line: usize, letter: char },
    #[error(transparent)]
    Invalid(#[from] AutomatonError),
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }

    fn header(&mut self, key: &'static str) -> Result<(usize, &'a str), ParseAutomatonError> {
        let (line, text) = self
            .next_content()
            .ok_or(ParseAutomatonError::Truncated(key))?;
        let (k, rest) = text
            .split_once(':')
            .ok_or(ParseAutomatonError::MissingHeader {
                line,
                expected: key,
            })?;
        if k.trim() != key {
            return Err(ParseAutomatonError::MissingHeader {
                line,
                expected: key,
            });
        }
        Ok((line, rest.trim()))
    }
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>, ParseAutomatonError> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| ParseAutomatonError::Syntax {
                line,
                message: format!("`{t}` is not a state number"),
            })
        })
        .collect()
}

fn single(line: usize, text: &str) -> Result<usize, ParseAutomatonError> {
    match numbers(line, text)?.as_slice() {
        [n] => Ok(*n),
        _ => Err(ParseAutomatonError::Syntax {
            line,
            message: "expected exactly one number".into(),
        }),
    }
}

impl FromStr for Dfa {
    type Err = ParseAutomatonError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = Lines {
            inner: s.lines().enumerate(),
        };
        let (line, letters) = lines.header("alphabet")?;
        let mut chars = Vec::new();
        for tok in letters.split_whitespace() {
            let mut it = tok.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => chars.push(c),
                _ => {
                    return Err(ParseAutomatonError::Syntax {
                        line,
                        message: format!("letter `{tok}` is not a single character"),
                    })
                }
            }
        }
        let alphabet = Alphabet::new(chars)?;
        let (line, states) = lines.header("states")?;
        let state_count = single(line, states)?;
        let (line, start) = lines.header("start")?;
        let start = single(line, start)?;
        let (line, finals) = lines.header("finals")?;
        let finals = numbers(line, finals)?;

        let mut rows: Vec<Option<Vec<usize>>> = vec![None; alphabet.len()];
        while let Some((line, text)) = lines.next_content() {
            let (letter, targets) = text.split_once(':').ok_or(ParseAutomatonError::Syntax {
                line,
                message: "expected `<letter>: <targets>`".into(),
            })?;
            let letter = letter.trim();
            let c = letter
                .chars()
                .next()
                .filter(|_| letter.chars().count() == 1)
                .ok_or(ParseAutomatonError::Syntax {
                    line,
                    message: format!("`{letter}` is not a letter"),
                })?;
            let a = alphabet
                .index_of(c)
                .ok_or(AutomatonError::ForeignLetter(c))?;
            if rows[a].is_some() {
                return Err(ParseAutomatonError::DuplicateRow { line, letter: c });
            }
            rows[a] = Some(numbers(line, targets)?);
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(a, r)| r.ok_or(ParseAutomatonError::MissingRow(alphabet.letter(a))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Dfa::new(alphabet, state_count, &rows, start, &finals)?)
    }
}

impl Dfa {
    /// Serializes this automaton as-is; use [`Dfa::canonical`] first for
    /// byte-stable output.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let letters: Vec<String> = self
            .alphabet()
            .letters()
            .iter()
            .map(char::to_string)
            .collect();
        let finals: Vec<String> = self.finals().map(|q| q.to_string()).collect();
        writeln!(out, "alphabet: {}", letters.join(" ")).unwrap();
        writeln!(out, "states: {}", self.state_count()).unwrap();
        writeln!(out, "start: {}", self.start()).unwrap();
        if finals.is_empty() {
            writeln!(out, "finals:").unwrap();
        } else {
            writeln!(out, "finals: {}", finals.join(" ")).unwrap();
        }
        for (a, c) in self.alphabet().letters().iter().enumerate() {
            let row: Vec<String> = (0..self.state_count())
                .map(|q| self.next(q, a).to_string())
                .collect();
            writeln!(out, "{c}: {}", row.join(" ")).unwrap();
        }
        out
    }
}
