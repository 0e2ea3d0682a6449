//! Plain-text file formats: automata (`.dfa`), instances (`.int`),
//! machines (`.ntm`), family metadata sidecars and benchmark CSV.

mod bench_csv;
mod dfa;
mod instance;
mod meta;
mod ntm;

use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub use bench_csv::{read_bench_csv, write_bench_csv, BenchRow, Verdict, BENCH_COLUMNS};
pub use dfa::{emit_dfa, emit_dfa_compact, parse_dfa};
pub use instance::{emit_int, load_instance, parse_int, save_instance};
pub use meta::{load_family, save_family, Metadata};
pub use ntm::{emit_ntm, load_ntm, parse_ntm};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid: {0}")]
    Validation(String),
    #[error("{}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}", path.display())]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<FormatError>,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl FormatError {
    fn parse(line: usize, message: impl Into<String>) -> Self {
        Self::Parse {
            line,
            message: message.into(),
        }
    }

    fn in_file(self, path: &Path) -> Self {
        match self {
            e @ (Self::Io { .. } | Self::InFile { .. }) => e,
            e => Self::InFile {
                path: path.to_path_buf(),
                source: Box::new(e),
            },
        }
    }

    /// The innermost error, past any file context.
    pub fn root(&self) -> &FormatError {
        match self {
            Self::InFile { source, .. } => source.root(),
            e => e,
        }
    }
}

pub(crate) fn read_file(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn write_file(path: &Path, text: &str) -> Result<(), FormatError> {
    std::fs::write(path, text).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Splits a line into tokens. Double quotes group a token and may contain
/// `\"` and `\\`. With `hash_comments`, an unquoted `#` ends the line.
fn tokenize(line: &str, lineno: usize, hash_comments: bool) -> Result<Vec<Token>, FormatError> {
    let mut tokens = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '#' && hash_comments {
            break;
        } else if c == '"' {
            chars.next();
            let mut text = String::new();
            loop {
                match chars.next() {
                    None => return Err(FormatError::parse(lineno, "unterminated quoted token")),
                    Some('"') => break,
                    Some('\\') => match chars.next() {
                        Some(e @ ('"' | '\\')) => text.push(e),
                        _ => return Err(FormatError::parse(lineno, "bad escape in quoted token")),
                    },
                    Some(ch) => text.push(ch),
                }
            }
            tokens.push(Token { text, quoted: true });
        } else {
            let mut text = String::new();
            while let Some(&ch) = chars.peek() {
                if ch.is_whitespace() || ch == '"' || (ch == '#' && hash_comments) {
                    break;
                }
                text.push(ch);
                chars.next();
            }
            tokens.push(Token { text, quoted: false });
        }
    }
    Ok(tokens)
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Token {
    text: String,
    quoted: bool,
}

/// Quotes `text` unless it is a single plain character.
fn quote_symbol(text: &str) -> String {
    let mut chars = text.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if !c.is_whitespace() && !matches!(c, '#' | '"' | '\\') => text.to_string(),
        _ => quoted(text),
    }
}

/// Quotes `text` when it would not survive tokenizing bare.
fn quote_name(text: &str) -> String {
    if !text.is_empty() && !text.chars().any(|c| c.is_whitespace() || matches!(c, '#' | '"' | '\\')) {
        text.to_string()
    } else {
        quoted(text)
    }
}

fn quoted(text: &str) -> String {
    format!("\"{}\"", text.replace('\\', "\\\\").replace('"', "\\\""))
}

fn parse_num<T: std::str::FromStr>(tok: &Token, lineno: usize, what: &str) -> Result<T, FormatError> {
    tok.text
        .parse()
        .map_err(|_| FormatError::parse(lineno, format!("expected {what}, found '{}'", tok.text)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_quotes() {
        let t = tokenize(r#"alphabet a "b c" "say \"hi\"" # trailing"#, 1, true).unwrap();
        let texts: Vec<_> = t.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(texts, ["alphabet", "a", "b c", "say \"hi\""]);
        let t = tokenize("delta 0 0 # -> 1 # R S", 1, false).unwrap();
        assert_eq!(t.len(), 9);
        assert!(matches!(
            tokenize("a \"b", 7, true),
            Err(FormatError::Parse { line: 7, .. })
        ));
    }

    #[test]
    fn quoting_round_trips() {
        for s in ["a", "#", "\"", "ab", "", " ", "x\\y"] {
            let q = quote_symbol(s);
            let t = tokenize(&q, 1, true).unwrap();
            assert_eq!(t.len(), 1, "{q}");
            assert_eq!(t[0].text, s);
        }
    }
}
