//! Plain-text family files.
//!
//! ```text
//! # comment
//! 6 3
//! 1 2 3
//! 1 4 5   # trailing comment
//! ```
//!
//! The first non-comment line is `n k`; every further non-comment line is a
//! member given as `k` space-separated 1-based vertices. Output is always
//! canonical: header, then members in canonical order with ascending vertices.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::family::{make_family, FamilyError, SetFamily};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `n k` header line")]
    MissingHeader,
    #[error("line {line}: {source}")]
    Family {
        line: usize,
        #[source]
        source: FamilyError,
    },
    #[error("header: {0}")]
    Header(#[from] FamilyError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_numbers(line: usize, text: &str) -> Result<Vec<usize>, ParseError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| ParseError::Syntax {
                line,
                message: format!("expected a nonnegative integer, found `{tok}`"),
            })
        })
        .collect()
}

pub fn parse_family(text: &str) -> Result<SetFamily, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut sets: Vec<(usize, Vec<usize>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = strip_comment(raw).trim();
        if body.is_empty() {
            continue;
        }
        let nums = parse_numbers(line, body)?;
        match header {
            None => {
                if nums.len() != 2 {
                    return Err(ParseError::Syntax {
                        line,
                        message: format!("header must be `n k`, found {} numbers", nums.len()),
                    });
                }
                header = Some((nums[0], nums[1]));
            }
            Some(_) => sets.push((line, nums)),
        }
    }
    let (n, k) = header.ok_or(ParseError::MissingHeader)?;
    // Validate line by line so errors point at the offending input.
    for (line, set) in &sets {
        make_family(n, k, std::slice::from_ref(set)).map_err(|source| ParseError::Family {
            line: *line,
            source,
        })?;
    }
    let lists: Vec<Vec<usize>> = sets.into_iter().map(|(_, s)| s).collect();
    Ok(make_family(n, k, &lists)?)
}

pub fn read_family(path: &Path) -> Result<SetFamily, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_family(&text)
}

pub fn serialize_family(family: &SetFamily) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", family.n(), family.k()).unwrap();
    for m in family.iter() {
        let line: Vec<String> = m.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}
