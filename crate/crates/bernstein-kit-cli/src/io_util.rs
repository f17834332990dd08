use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// CLI failure modes mapped to exit codes: `Failure` -> 1, `Usage` -> 2.
#[derive(Debug)]
pub enum CliError {
    Failure(String),
    Usage(String),
}

pub fn read_json(path: &Path) -> Result<serde_json::Value, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("invalid JSON in {}: {e}", path.display())))
}

/// Write to the path or stdout. Output always ends with a single newline so
/// repeated runs produce byte-identical files.
pub fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    let body = if content.ends_with('\n') {
        content.to_string()
    } else {
        format!("{content}\n")
    };
    match out {
        Some(path) => fs::write(path, body)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .map_err(|e| CliError::Failure(format!("cannot write to stdout: {e}")))
        }
    }
}

/// CSV with a header row, '.' decimal separator and LF line endings.
pub fn csv_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn pretty_json(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON serialization cannot fail")
}
