//! Versioned JSON-lines catalog files: one header line, then one record per line.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::CliError;

pub const SCHEMA: &str = "sjk/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub schema: String,
    pub kind: String,
    pub params: Map<String, Value>,
}

impl Header {
    pub fn new(kind: &str, params: Map<String, Value>) -> Self {
        Header { schema: SCHEMA.to_string(), kind: kind.to_string(), params }
    }
}

pub fn persist_catalog<T: Serialize>(path: &Path, header: &Header, records: &[T]) -> Result<(), CliError> {
    let mut out = serde_json::to_string(header).map_err(CliError::internal)?;
    out.push('\n');
    for r in records {
        out.push_str(&serde_json::to_string(r).map_err(CliError::internal)?);
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display())))
}

pub struct Loaded<T> {
    pub header: Header,
    pub records: Vec<T>,
    pub warnings: Vec<String>,
}

/// Reads a catalog of `kind`, checking each record with `check`. Header
/// parameters that differ from `expected` produce warnings.
pub fn load_catalog<T, F>(path: &Path, kind: &str, expected: &Map<String, Value>, check: F) -> Result<Loaded<T>, CliError>
where
    T: DeserializeOwned,
    F: Fn(&Header, &T) -> Result<(), CliError>,
{
    let text = fs::read_to_string(path).map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let Some((_, first)) = lines.next() else {
        return Err(CliError::Validation(format!("{}: empty catalog file", path.display())));
    };
    let header: Header = serde_json::from_str(first).map_err(|e| CliError::Validation(format!("{}: bad header: {e}", path.display())))?;
    if header.schema != SCHEMA {
        return Err(CliError::Validation(format!("{}: schema {} is not {SCHEMA}", path.display(), header.schema)));
    }
    if header.kind != kind {
        return Err(CliError::Validation(format!("{}: catalog kind {} is not {kind}", path.display(), header.kind)));
    }
    let warnings = expected
        .iter()
        .filter(|(k, v)| header.params.get(*k) != Some(v))
        .map(|(k, v)| {
            let found = header.params.get(k).map_or("absent".to_string(), |x| x.to_string());
            format!("warning: header parameter {k} is {found}, requested {v}")
        })
        .collect();
    let mut records = Vec::new();
    for (i, line) in lines {
        let rec: T =
            serde_json::from_str(line).map_err(|e| CliError::Validation(format!("{}: record on line {}: {e}", path.display(), i + 1)))?;
        check(&header, &rec).map_err(|e| CliError::Validation(format!("{}: record on line {}: {}", path.display(), i + 1, e.message())))?;
        records.push(rec);
    }
    Ok(Loaded { header, records, warnings })
}
