use std::fs::File;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// Nine significant digits in scientific notation, e.g. `4.13418421e-2`.
pub fn format_sig9(value: f64) -> String {
    if value == 0.0 {
        // avoid "-0"
        return "0.00000000e0".into();
    }
    format!("{value:.8e}")
}

pub(crate) fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes a header and rows as CSV to `path`, or to `stdout` when no path is
/// given.
pub(crate) fn write_csv(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    header: &[&str],
    rows: &[Vec<String>],
) -> Result<()> {
    match path {
        Some(path) => {
            let mut writer = csv::Writer::from_writer(create(path)?);
            fill(&mut writer, header, rows)?;
            writer.flush().map_err(|source| Error::Io {
                path: path.to_path_buf(),
                source,
            })
        }
        None => {
            let mut writer = csv::Writer::from_writer(stdout);
            fill(&mut writer, header, rows)?;
            writer.flush().map_err(|source| Error::Io {
                path: "<stdout>".into(),
                source,
            })
        }
    }
}

fn fill<W: Write>(
    writer: &mut csv::Writer<W>,
    header: &[&str],
    rows: &[Vec<String>],
) -> Result<()> {
    writer.write_record(header)?;
    for row in rows {
        writer.write_record(row)?;
    }
    Ok(())
}
