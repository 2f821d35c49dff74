use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use heegner_core::record::VerificationRecord;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn sink(out: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

/// Writes rows as CSV (header from the field names) or as a JSON array.
pub fn write_rows<T: Serialize>(rows: &[T], format: Format, out: Option<&Path>) -> io::Result<()> {
    let mut w = sink(out)?;
    match format {
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut w);
            for r in rows {
                csv.serialize(r).map_err(io::Error::other)?;
            }
            csv.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, rows).map_err(io::Error::other)?;
            writeln!(w)?;
        }
    }
    w.flush()
}

/// Verification records; an empty CSV still carries the header.
pub fn write_records(
    rows: &[VerificationRecord],
    format: Format,
    out: Option<&Path>,
) -> io::Result<()> {
    if rows.is_empty() && format == Format::Csv {
        let mut w = sink(out)?;
        writeln!(w, "{}", heegner_core::record::CSV_HEADER)?;
        return w.flush();
    }
    write_rows(rows, format, out)
}
