//! Curve files and inline curve arguments.
//!
//! ```text
//! # four lines in general position
//! name: four generic lines
//! eps: x+y = 0
//! lines:
//!   1 0 0
//!   0 1 0
//!   0 0 1
//!   1 1 1
//! ```
//!
//! A curve is either one `poly:` expression or a `lines:` block with one
//! line per row, written as a coefficient triple or a linear expression.
//! `eps:` entries override `eps` for a line, named by expression or by its
//! 1-based position in the `lines:` block.

use freecurves::lines::product_of_lines;
use freecurves::polycore::{parse_line, parse_poly, HomoPoly, LinearForm, ParseError};
use freecurves::triples::EpsOverrides;
use thiserror::Error;

/// Inputs longer than this are rejected before parsing.
pub const MAX_FILE_LEN: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        #[source]
        source: ParseError,
    },
    #[error("no curve given: expected `poly:` or `lines:`")]
    Missing,
    #[error("both `poly:` and `lines:` given")]
    Both,
    #[error("input exceeds {MAX_FILE_LEN} bytes")]
    TooLong,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveSource {
    Poly(HomoPoly),
    Lines(Vec<LinearForm>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub name: String,
    pub source: CurveSource,
    pub eps: EpsOverrides,
}

impl CurveSpec {
    pub fn polynomial(&self) -> HomoPoly {
        match &self.source {
            CurveSource::Poly(p) => p.clone(),
            CurveSource::Lines(ls) => product_of_lines(ls),
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> CurveFileError {
    CurveFileError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_at<T>(line: usize, r: Result<T, ParseError>) -> Result<T, CurveFileError> {
    r.map_err(|source| CurveFileError::Parse { line, source })
}

const KEYS: [&str; 4] = ["name", "eps", "poly", "lines"];

fn header(text: &str) -> Option<(&str, &str)> {
    let (k, v) = text.split_once(':')?;
    let k = k.trim();
    KEYS.contains(&k).then(|| (k, v.trim()))
}

pub fn parse_curve_file(text: &str) -> Result<CurveSpec, CurveFileError> {
    if text.len() > MAX_FILE_LEN {
        return Err(CurveFileError::TooLong);
    }
    let mut name = None;
    let mut poly = None;
    let mut lines: Option<Vec<LinearForm>> = None;
    let mut eps_raw: Vec<(usize, String, i64)> = Vec::new();
    let mut in_lines = false;
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        if let Some((key, value)) = header(content) {
            in_lines = false;
            match key {
                "name" => name = Some(value.to_string()),
                "poly" => {
                    if poly.is_some() {
                        return Err(syntax(no, "duplicate `poly:`"));
                    }
                    poly = Some(parse_at(no, parse_poly(value))?);
                }
                "lines" => {
                    if lines.is_some() {
                        return Err(syntax(no, "duplicate `lines:`"));
                    }
                    if !value.is_empty() {
                        return Err(syntax(no, "`lines:` entries go on the following rows"));
                    }
                    lines = Some(Vec::new());
                    in_lines = true;
                }
                _ => {
                    let Some((l, k)) = value.rsplit_once('=') else {
                        return Err(syntax(no, "expected `eps: <line> = <integer>`"));
                    };
                    let k: i64 = k.trim().parse().map_err(|_| syntax(no, "eps must be an integer"))?;
                    eps_raw.push((no, l.trim().to_string(), k));
                }
            }
        } else if in_lines {
            let item = content.strip_prefix('-').map_or(content, str::trim);
            let l = parse_at(no, parse_line(item))?;
            lines.as_mut().unwrap().push(l);
        } else {
            return Err(syntax(no, format!("unexpected text `{content}`")));
        }
    }
    let source = match (poly, lines) {
        (Some(_), Some(_)) => return Err(CurveFileError::Both),
        (Some(p), None) => CurveSource::Poly(p),
        (None, Some(ls)) if !ls.is_empty() => CurveSource::Lines(ls),
        (None, Some(_)) => return Err(CurveFileError::Missing),
        (None, None) => return Err(CurveFileError::Missing),
    };
    let mut eps = EpsOverrides::new();
    for (no, key, k) in eps_raw {
        let line = match (&source, key.parse::<usize>()) {
            (CurveSource::Lines(ls), Ok(idx)) => ls
                .get(idx.wrapping_sub(1))
                .cloned()
                .ok_or_else(|| syntax(no, format!("no line number {idx}")))?,
            _ => parse_at(no, parse_line(&key))?,
        };
        eps.insert(line, k);
    }
    Ok(CurveSpec {
        name: name.unwrap_or_else(|| "unnamed".into()),
        source,
        eps,
    })
}

/// A curve written on the command line: `[l1, l2, ...]` for a line
/// arrangement, otherwise a polynomial expression.
pub fn parse_inline(text: &str) -> Result<CurveSpec, CurveFileError> {
    let t = text.trim();
    if t.len() > MAX_FILE_LEN {
        return Err(CurveFileError::TooLong);
    }
    let source = match t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        Some(body) => {
            // `;` separates lines when present, so triples may use commas
            let sep = if body.contains(';') { ';' } else { ',' };
            let ls = body
                .split(sep)
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| parse_at(1, parse_line(s)))
                .collect::<Result<Vec<_>, _>>()?;
            if ls.is_empty() {
                return Err(CurveFileError::Missing);
            }
            CurveSource::Lines(ls)
        }
        None => CurveSource::Poly(parse_at(1, parse_poly(t))?),
    };
    Ok(CurveSpec {
        name: t.to_string(),
        source,
        eps: EpsOverrides::new(),
    })
}
