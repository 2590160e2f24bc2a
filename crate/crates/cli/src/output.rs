use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::{Envelope, SCHEMA_VERSION};

/// Pretty JSON with the schema envelope and a trailing newline.
pub fn json<T: Serialize>(config: &RunConfig, payload: T) -> Result<String, CliError> {
    let envelope = Envelope { schema: SCHEMA_VERSION.to_string(), config: config.clone(), payload };
    let mut s = serde_json::to_string_pretty(&envelope)?;
    s.push('\n');
    Ok(s)
}

/// CSV preceded by a `# schema=<version>` comment line.
pub fn csv(header: &[String], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.into_error()))?).expect("csv output is utf-8");
    Ok(format!("# schema={}\n{}", SCHEMA_VERSION, body))
}

/// Schema version, header and rows of a parsed CSV file.
pub type ParsedCsv = (String, Vec<String>, Vec<Vec<String>>);

/// Reads a CSV written by [`csv`].
pub fn parse_csv(text: &str) -> Result<ParsedCsv, CliError> {
    let (first, rest) = text.split_once('\n').unwrap_or((text, ""));
    let version = first
        .strip_prefix("# schema=")
        .ok_or_else(|| CliError::Invalid("missing schema line".into()))?
        .to_string();
    let mut r = csv::ReaderBuilder::new().from_reader(rest.as_bytes());
    let header = r.headers()?.iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.map(|x| x.iter().map(String::from).collect())).collect::<Result<_, _>>()?;
    Ok((version, header, rows))
}

pub fn num(x: f64) -> String {
    format!("{}", x)
}

/// Writes to `path` through a temporary file in the same directory and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}
