//! Headerless CSV designs (rows = runs, columns = factors) and the trace and
//! projection tables.

use std::fs::File;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};
use unidesign::optimize::TracePoint;
use unidesign::DesignMatrix;

use crate::error::{CliError, CliResult};

fn read_cells(path: &Path) -> CliResult<Vec<Vec<String>>> {
    let file = File::open(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let mut rows = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Input(format!("{}: row {}: {e}", path.display(), r + 1)))?;
        rows.push(record.iter().map(str::to_owned).collect::<Vec<_>>());
    }
    if rows.is_empty() {
        return Err(CliError::Input(format!("{}: no rows", path.display())));
    }
    let width = rows[0].len();
    for (r, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(CliError::Input(format!(
                "{}: row {} has {} columns, expected {width} (from row 1)",
                path.display(),
                r + 1,
                row.len()
            )));
        }
        if let Some(c) = row.iter().position(|cell| cell.is_empty()) {
            return Err(CliError::Input(format!("{}: row {}, column {}: empty cell", path.display(), r + 1, c + 1)));
        }
    }
    Ok(rows)
}

fn parse_cell<T: std::str::FromStr>(path: &Path, r: usize, c: usize, cell: &str, what: &str) -> CliResult<T> {
    cell.parse().map_err(|_| {
        CliError::Input(format!("{}: row {}, column {}: {cell:?} is not {what}", path.display(), r + 1, c + 1))
    })
}

/// Reads a design over `[0, 1]^s`.
pub fn read_design(path: &Path) -> CliResult<DesignMatrix> {
    let cells = read_cells(path)?;
    let (n, s) = (cells.len(), cells[0].len());
    let mut values = Vec::with_capacity(n * s);
    for (r, row) in cells.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            let v: f64 = parse_cell(path, r, c, cell, "a number")?;
            if !(0.0..=1.0).contains(&v) {
                return Err(CliError::Input(format!(
                    "{}: row {}, column {}: {v} lies outside [0, 1]",
                    path.display(),
                    r + 1,
                    c + 1
                )));
            }
            values.push(v);
        }
    }
    Ok(DesignMatrix::new(n, s, values)?)
}

/// Reads integer levels in `1..=q` and maps level `l` to `(l − 1)/(q − 1)`,
/// so the extreme levels land on the bounds once scaled.
pub fn read_lattice_levels(path: &Path, q: usize) -> CliResult<DesignMatrix> {
    if q < 2 {
        return Err(CliError::Usage("--lattice-levels needs at least 2 levels".into()));
    }
    let cells = read_cells(path)?;
    let (n, s) = (cells.len(), cells[0].len());
    let mut values = Vec::with_capacity(n * s);
    for (r, row) in cells.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            let l: usize = parse_cell(path, r, c, cell, "a level")?;
            if l == 0 || l > q {
                return Err(CliError::Input(format!(
                    "{}: row {}, column {}: level {l} outside 1..={q}",
                    path.display(),
                    r + 1,
                    c + 1
                )));
            }
            values.push((l - 1) as f64 / (q - 1) as f64);
        }
    }
    Ok(DesignMatrix::new(n, s, values)?)
}

fn to_bytes<F: FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>>(fill: F) -> Vec<u8> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    fill(&mut writer).expect("writing CSV to memory");
    writer.into_inner().expect("flushing CSV to memory")
}

/// Shortest decimal form that parses back to the same `f64`.
pub fn design_csv(design: &DesignMatrix) -> Vec<u8> {
    to_bytes(|w| {
        for row in design.rows() {
            w.write_record(row.iter().map(|v| v.to_string()))?;
        }
        Ok(())
    })
}

pub fn integer_csv(rows: impl IntoIterator<Item = Vec<usize>>) -> Vec<u8> {
    to_bytes(|w| {
        for row in rows {
            w.write_record(row.iter().map(|v| v.to_string()))?;
        }
        Ok(())
    })
}

/// `epoch,cd2,seconds` with a header row.
pub fn trace_csv(points: &[TracePoint]) -> Vec<u8> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for p in points {
        writer.serialize(p).expect("writing CSV to memory");
    }
    writer.into_inner().expect("flushing CSV to memory")
}

#[derive(Serialize)]
struct ProjectionRow {
    factor_a: usize,
    factor_b: usize,
    run: usize,
    x_a: f64,
    x_b: f64,
}

/// Every two-factor projection in long format, factors and runs 1-based.
pub fn projections_csv(design: &DesignMatrix) -> Vec<u8> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for a in 0..design.s() {
        for b in (a + 1)..design.s() {
            for (i, row) in design.rows().enumerate() {
                let record = ProjectionRow { factor_a: a + 1, factor_b: b + 1, run: i + 1, x_a: row[a], x_b: row[b] };
                writer.serialize(record).expect("writing CSV to memory");
            }
        }
    }
    writer.into_inner().expect("flushing CSV to memory")
}

/// SHA-256 of the given bytes; used to pin output files in manifests.
pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}
