//! Text formats for dessins and patterns.
//!
//! A dessin file is three `key: value` lines:
//!
//! ```text
//! degree: 10
//! x: (1 2 3 4)(5 6 7)(8 9)
//! y: (1 8 4 7)(2 3 10)(5 6)
//! ```
//!
//! A JSON object with the same three fields (`degree` a number, `x` and `y` strings) is
//! accepted too. Pattern files use `name`, `degree`, `xb`, `yb`, `wx`, `wy` and an optional
//! `role`; word maps read `1=x; 3=Y` with `X`, `Y`, `Z` the inverses and `e` the empty word.
//! Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;

use serde::Deserialize;
use thiserror::Error;

use crate::dessin::{Dessin, DessinError, RolePermutation};
use crate::pattern::{CrossingWord, ExtendingPattern, PatternError};
use crate::perm::{parse_cycles, CycleParseError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("field `{field}`: {source}")]
    Cycles {
        field: &'static str,
        source: CycleParseError,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Dessin(#[from] DessinError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

impl FormatError {
    /// Parse errors are malformed text; everything else is well-formed but invalid data.
    pub fn is_parse_error(&self) -> bool {
        match self {
            FormatError::Syntax { .. }
            | FormatError::MissingField(_)
            | FormatError::Cycles { .. }
            | FormatError::Json(_) => true,
            FormatError::Pattern(PatternError::BadWord(_)) => true,
            FormatError::Dessin(_) | FormatError::Pattern(_) => false,
        }
    }
}

fn key_values(text: &str) -> Result<BTreeMap<String, (usize, String)>, FormatError> {
    let mut fields = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(FormatError::Syntax {
                line: i + 1,
                message: format!("expected `key: value`, found `{line}`"),
            });
        };
        let key = key.trim().to_string();
        if fields.contains_key(&key) {
            return Err(FormatError::Syntax {
                line: i + 1,
                message: format!("duplicate field `{key}`"),
            });
        }
        fields.insert(key, (i + 1, value.trim().to_string()));
    }
    Ok(fields)
}

fn parse_degree(fields: &BTreeMap<String, (usize, String)>) -> Result<usize, FormatError> {
    let (line, value) = fields
        .get("degree")
        .ok_or(FormatError::MissingField("degree"))?;
    match value.parse::<usize>() {
        Ok(d) if d >= 1 => Ok(d),
        _ => Err(FormatError::Syntax {
            line: *line,
            message: format!("degree must be a positive integer, found `{value}`"),
        }),
    }
}

fn cycles_field(
    fields: &BTreeMap<String, (usize, String)>,
    field: &'static str,
    degree: usize,
) -> Result<crate::perm::Permutation, FormatError> {
    let (_, value) = fields.get(field).ok_or(FormatError::MissingField(field))?;
    parse_cycles(value, degree).map_err(|source| FormatError::Cycles { field, source })
}

#[derive(Deserialize)]
struct DessinRecord {
    degree: usize,
    x: String,
    y: String,
}

/// Reads a dessin from the text format or its JSON equivalent, validating it.
pub fn parse_dessin(text: &str) -> Result<Dessin, FormatError> {
    if text.trim_start().starts_with('{') {
        let record: DessinRecord = serde_json::from_str(text)?;
        if record.degree == 0 {
            return Err(FormatError::Syntax {
                line: 1,
                message: "degree must be a positive integer".into(),
            });
        }
        let x = parse_cycles(&record.x, record.degree)
            .map_err(|source| FormatError::Cycles { field: "x", source })?;
        let y = parse_cycles(&record.y, record.degree)
            .map_err(|source| FormatError::Cycles { field: "y", source })?;
        return Ok(Dessin::new(x, y)?);
    }
    let fields = key_values(text)?;
    for (key, (line, _)) in &fields {
        if !matches!(key.as_str(), "degree" | "x" | "y" | "name") {
            return Err(FormatError::Syntax {
                line: *line,
                message: format!("unknown field `{key}`"),
            });
        }
    }
    let degree = parse_degree(&fields)?;
    let x = cycles_field(&fields, "x", degree)?;
    let y = cycles_field(&fields, "y", degree)?;
    Ok(Dessin::new(x, y)?)
}

fn field_line(key: &str, value: &str) -> String {
    if value.is_empty() {
        format!("{key}:\n")
    } else {
        format!("{key}: {value}\n")
    }
}

pub fn write_dessin(dessin: &Dessin) -> String {
    let mut out = format!("degree: {}\n", dessin.degree());
    out.push_str(&field_line("x", &dessin.x().to_string()));
    out.push_str(&field_line("y", &dessin.y().to_string()));
    out
}

fn parse_word_map(value: &str, line: usize) -> Result<BTreeMap<usize, CrossingWord>, FormatError> {
    let mut map = BTreeMap::new();
    for entry in value.split(';') {
        let entry = entry.trim();
        if entry.is_empty() {
            continue;
        }
        let Some((edge, word)) = entry.split_once('=') else {
            return Err(FormatError::Syntax {
                line,
                message: format!("expected `<edge>=<word>`, found `{entry}`"),
            });
        };
        let edge: usize = edge.trim().parse().map_err(|_| FormatError::Syntax {
            line,
            message: format!("bad edge `{}`", edge.trim()),
        })?;
        let word: CrossingWord = word.parse()?;
        if map.insert(edge, word).is_some() {
            return Err(FormatError::Syntax {
                line,
                message: format!("edge {edge} listed twice"),
            });
        }
    }
    Ok(map)
}

pub fn parse_pattern(text: &str) -> Result<ExtendingPattern, FormatError> {
    let fields = key_values(text)?;
    for (key, (line, _)) in &fields {
        if !matches!(
            key.as_str(),
            "name" | "degree" | "xb" | "yb" | "wx" | "wy" | "role"
        ) {
            return Err(FormatError::Syntax {
                line: *line,
                message: format!("unknown field `{key}`"),
            });
        }
    }
    let name = fields
        .get("name")
        .map(|(_, v)| v.clone())
        .ok_or(FormatError::MissingField("name"))?;
    let degree = parse_degree(&fields)?;
    let xb = cycles_field(&fields, "xb", degree)?;
    let yb = cycles_field(&fields, "yb", degree)?;
    let words = |key: &str| match fields.get(key) {
        Some((line, value)) => parse_word_map(value, *line),
        None => Ok(BTreeMap::new()),
    };
    let (wx, wy) = (words("wx")?, words("wy")?);
    let mut pattern = ExtendingPattern::from_word_maps(name, xb, yb, &wx, &wy)?;
    if let Some((line, value)) = fields.get("role") {
        let h: RolePermutation = value.parse().map_err(|e| FormatError::Syntax {
            line: *line,
            message: format!("{e}"),
        })?;
        pattern = pattern.with_role(h);
    }
    Ok(pattern)
}

fn word_map_text(words: &[CrossingWord]) -> String {
    words
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_empty())
        .map(|(i, w)| format!("{}={}", i + 1, w))
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn write_pattern(pattern: &ExtendingPattern) -> String {
    let mut out = format!("name: {}\ndegree: {}\n", pattern.name, pattern.degree());
    out.push_str(&field_line("xb", &pattern.xb().to_string()));
    out.push_str(&field_line("yb", &pattern.yb().to_string()));
    out.push_str(&field_line("wx", &word_map_text(pattern.words_x())));
    out.push_str(&field_line("wy", &word_map_text(pattern.words_y())));
    if !pattern.role().is_identity() {
        out.push_str(&format!("role: {}\n", pattern.role()));
    }
    out
}
