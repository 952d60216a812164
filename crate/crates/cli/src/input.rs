//! Sample files: UTF-8 text, one decimal literal per line, blank lines ignored.

use std::fs;
use std::path::Path;

use smoothq::Sample;

use crate::error::CliError;

pub fn parse_sample(text: &str, path: &Path) -> Result<Sample, CliError> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        match trimmed.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            _ => {
                return Err(CliError::Parse {
                    path: path.to_path_buf(),
                    line: i + 1,
                    text: trimmed.to_string(),
                })
            }
        }
    }
    if values.is_empty() {
        return Err(CliError::EmptyInput {
            path: path.to_path_buf(),
        });
    }
    Ok(Sample::new(values)?)
}

pub fn read_sample(path: &Path) -> Result<Sample, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_sample(&text, path)
}
