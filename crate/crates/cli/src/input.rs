//! Loading dessins and patterns from paths, builtin names and the pattern search path.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use dessin_core::format::{parse_dessin, parse_pattern, FormatError};
use dessin_core::pattern::default_pattern_names;
use dessin_core::{builtin, Dessin, ExtendingPattern};

pub const PATTERN_PATH_VAR: &str = "DESSIN_PATTERN_PATH";

/// Failure to obtain an input, classified for the exit code.
#[derive(Debug)]
pub enum InputError {
    /// Unreadable file, malformed text, unknown pattern name.
    Parse(String),
    /// Well-formed text describing something invalid (e.g. an intransitive pair).
    Invalid(String),
}

impl InputError {
    pub fn message(&self) -> &str {
        match self {
            InputError::Parse(m) | InputError::Invalid(m) => m,
        }
    }
}

impl From<FormatError> for InputError {
    fn from(e: FormatError) -> Self {
        if e.is_parse_error() {
            InputError::Parse(e.to_string())
        } else {
            InputError::Invalid(e.to_string())
        }
    }
}

pub fn read_text(path: &str) -> Result<String, InputError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| InputError::Parse(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| InputError::Parse(format!("{path}: {e}")))
}

pub fn load_dessin(path: &str) -> Result<Dessin, InputError> {
    parse_dessin_text(path, &read_text(path)?)
}

pub fn parse_dessin_text(path: &str, text: &str) -> Result<Dessin, InputError> {
    parse_dessin(text).map_err(|e| prefix(path, e.into()))
}

fn prefix(path: &str, e: InputError) -> InputError {
    match e {
        InputError::Parse(m) => InputError::Parse(format!("{path}: {m}")),
        InputError::Invalid(m) => InputError::Invalid(format!("{path}: {m}")),
    }
}

/// A pattern file is recognised by its extension or by an `xb:` line.
pub fn looks_like_pattern(path: &str, text: &str) -> bool {
    Path::new(path).extension().is_some_and(|e| e == "pattern")
        || text.lines().any(|l| l.trim_start().starts_with("xb:"))
}

pub fn parse_pattern_text(path: &str, text: &str) -> Result<ExtendingPattern, InputError> {
    parse_pattern(text).map_err(|e| prefix(path, e.into()))
}

fn search_path() -> Vec<PathBuf> {
    std::env::var_os(PATTERN_PATH_VAR)
        .map(|v| std::env::split_paths(&v).collect())
        .unwrap_or_default()
}

/// Resolves one `--patterns` entry: builtin name (with optional `@roles`), then a file
/// path, then `<name>.pattern` in each directory of the search path.
pub fn resolve_pattern(entry: &str) -> Result<ExtendingPattern, InputError> {
    if let Ok(p) = builtin(entry) {
        return Ok(p);
    }
    if Path::new(entry).is_file() {
        let text = read_text(entry)?;
        return parse_pattern_text(entry, &text);
    }
    for dir in search_path() {
        let candidate = dir.join(format!("{entry}.pattern"));
        if candidate.is_file() {
            let shown = candidate.display().to_string();
            let text = read_text(&shown)?;
            return parse_pattern_text(&shown, &text);
        }
    }
    Err(InputError::Parse(format!(
        "unknown pattern `{entry}` (not a builtin, a file, or in ${PATTERN_PATH_VAR})"
    )))
}

pub fn resolve_patterns(list: Option<&str>) -> Result<Vec<ExtendingPattern>, InputError> {
    let names: Vec<String> = match list {
        Some(l) => l
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(String::from)
            .collect(),
        None => default_pattern_names(),
    };
    names.iter().map(|n| resolve_pattern(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_files_are_recognised() {
        assert!(looks_like_pattern("a.pattern", ""));
        assert!(looks_like_pattern("a.txt", "name: p\nxb: (1 2)\n"));
        assert!(!looks_like_pattern("a.dessin", "degree: 2\nx: (1 2)\ny:\n"));
    }

    #[test]
    fn default_list_and_role_suffixes_resolve() {
        let all = resolve_patterns(None).unwrap();
        assert_eq!(all.len(), default_pattern_names().len());
        let some = resolve_patterns(Some(" gamma@10i , xi ,")).unwrap();
        assert_eq!(some.len(), 2);
        assert!(matches!(resolve_pattern("nope"), Err(InputError::Parse(_))));
    }
}
