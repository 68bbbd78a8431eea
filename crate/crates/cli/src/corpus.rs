//! JSON-lines cycle files.

use std::fs;
use std::io::Write;
use std::path::Path;

use qube_core::HamiltonianCycle;

use crate::CliError;

pub(crate) fn read_text(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        return std::io::read_to_string(std::io::stdin()).map_err(|source| CliError::Io { path: "-".into(), source });
    }
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// One cycle object per non-blank line.
pub fn parse_cycles(text: &str) -> Result<Vec<HamiltonianCycle>, CliError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, l)| {
            HamiltonianCycle::from_json(l).map_err(|e| CliError::Usage(format!("line {}: {e}", k + 1)))
        })
        .collect()
}

pub fn read_cycles(path: &Path) -> Result<Vec<HamiltonianCycle>, CliError> {
    parse_cycles(&read_text(path)?)
}

pub fn write_cycles<'a>(
    mut out: impl Write,
    cycles: impl IntoIterator<Item = &'a HamiltonianCycle>,
) -> std::io::Result<()> {
    for h in cycles {
        writeln!(out, "{}", h.to_json())?;
    }
    Ok(())
}
