//! CSV input and atomic file output.

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use tempfile::NamedTempFile;

use crate::error::{CliError, CliResult};

/// A CSV file read fully into named numeric columns.
#[derive(Debug)]
pub struct Table {
    pub path: PathBuf,
    pub headers: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

impl Table {
    pub fn read(path: &Path) -> CliResult<Self> {
        let csv_err = |source| CliError::Csv {
            path: path.to_owned(),
            source,
        };
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(csv_err)?;
        let headers: Vec<String> = reader.headers().map_err(csv_err)?.iter().map(str::to_owned).collect();
        if headers.is_empty() || headers.iter().all(String::is_empty) {
            return Err(CliError::Input {
                path: path.to_owned(),
                message: "missing header row".into(),
            });
        }
        let mut columns = vec![Vec::new(); headers.len()];
        for (line, record) in reader.records().enumerate() {
            let record = record.map_err(csv_err)?;
            for (k, field) in record.iter().enumerate() {
                let value: f64 = field.parse().map_err(|_| CliError::Input {
                    path: path.to_owned(),
                    message: format!("row {}: '{field}' in column '{}' is not a number", line + 2, headers[k]),
                })?;
                columns[k].push(value);
            }
        }
        if columns[0].is_empty() {
            return Err(CliError::Input {
                path: path.to_owned(),
                message: "no data rows".into(),
            });
        }
        Ok(Self {
            path: path.to_owned(),
            headers,
            columns,
        })
    }

    pub fn column(&self, name: &str) -> CliResult<&[f64]> {
        self.headers
            .iter()
            .position(|h| h == name)
            .map(|k| self.columns[k].as_slice())
            .ok_or_else(|| CliError::Input {
                path: self.path.clone(),
                message: format!("no column named '{name}' (found: {})", self.headers.join(", ")),
            })
    }
}

/// Writes through a temporary file in the target directory, then renames it
/// into place. `-` writes to standard output.
pub fn write_atomic(path: &Path, fill: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> CliResult<()> {
    let io_err = |source| CliError::Io {
        path: path.to_owned(),
        source,
    };
    if path == Path::new("-") {
        let stdout = io::stdout();
        let mut lock = stdout.lock();
        fill(&mut lock).map_err(io_err)?;
        return lock.flush().map_err(io_err);
    }
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).map_err(io_err)?;
    {
        let mut buf = io::BufWriter::new(tmp.as_file_mut());
        fill(&mut buf).map_err(io_err)?;
        buf.flush().map_err(io_err)?;
    }
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value)?;
    write_atomic(path, |w| writeln!(w, "{text}"))
}

/// Writes a header row and equally long numeric columns.
pub fn write_columns(path: &Path, headers: &[&str], columns: &[&[f64]]) -> CliResult<()> {
    debug_assert_eq!(headers.len(), columns.len());
    let rows = columns.first().map_or(0, |c| c.len());
    write_atomic(path, |w| {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(headers).map_err(io::Error::other)?;
        let mut fields = Vec::with_capacity(columns.len());
        for i in 0..rows {
            fields.clear();
            fields.extend(columns.iter().map(|c| c[i].to_string()));
            out.write_record(&fields).map_err(io::Error::other)?;
        }
        out.flush()
    })
}
