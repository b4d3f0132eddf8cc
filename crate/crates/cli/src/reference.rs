use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use thiserror::Error;
use unram_exact::{parse_factored, BigRational, ParseError};

/// Table shipped with the binary.
pub const EMBEDDED_TABLE: &str = include_str!("../data/reference.tsv");

#[derive(Debug, Error)]
pub enum TableError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: expected `d<TAB>value`")]
    Shape { line: usize },
    #[error("line {line}: bad degree `{token}`")]
    Degree { line: usize, token: String },
    #[error("line {line}: {source}")]
    Value {
        line: usize,
        #[source]
        source: ParseError,
    },
    #[error("line {line}: degree {d} listed twice")]
    Duplicate { line: usize, d: u32 },
}

/// Degree → exact expected invariant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReferenceTable {
    pub rows: BTreeMap<u32, BigRational>,
}

impl ReferenceTable {
    /// Parses `d<TAB>value` lines; `#` lines and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut rows = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim_end_matches('\r');
            if trimmed.trim().is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (d, value) = trimmed.split_once('\t').ok_or(TableError::Shape { line })?;
            let d: u32 = d.parse().map_err(|_| TableError::Degree {
                line,
                token: d.to_string(),
            })?;
            let q = parse_factored(value).map_err(|source| TableError::Value { line, source })?;
            if rows.insert(d, q).is_some() {
                return Err(TableError::Duplicate { line, d });
            }
        }
        Ok(Self { rows })
    }

    pub fn load(path: &Path) -> Result<Self, TableError> {
        let text = fs::read_to_string(path).map_err(|source| TableError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn embedded() -> Self {
        Self::parse(EMBEDDED_TABLE).expect("embedded table parses")
    }
}
