//! Dataset CSV: header `y,x2,...,xp`, one row per observation. The
//! intercept column is implicit. Values are written with the shortest
//! representation that round-trips exactly.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::Dataset;
use crate::error::{Error, Result};

pub fn write_dataset<W: Write>(d: &Dataset, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let header: Vec<String> = std::iter::once("y".to_string()).chain((2..=d.p()).map(|j| format!("x{j}"))).collect();
    w.write_record(&header)?;
    for (row, y) in d.rows().zip(d.y()) {
        let record: Vec<String> = std::iter::once(y).chain(&row[1..]).map(|v| v.to_string()).collect();
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_dataset(d: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    write_dataset(d, File::create(path)?)
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<Dataset> {
    read_dataset(File::open(path)?)
}

pub fn read_dataset<R: Read>(input: R) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(input);
    let mut records = reader.records();

    let header = match records.next() {
        Some(rec) => rec?,
        None => return Err(parse_err(1, "y", "missing header")),
    };
    let names: Vec<String> = header.iter().map(|h| h.trim().to_string()).collect();
    if names.first().map(String::as_str) != Some("y") {
        return Err(parse_err(1, "1", "missing header: first column must be `y`"));
    }
    for (k, name) in names.iter().enumerate().skip(1) {
        let expected = format!("x{}", k + 1);
        if *name != expected {
            return Err(parse_err(1, &(k + 1).to_string(), &format!("expected header `{expected}`, found `{name}`")));
        }
    }
    let width = names.len();

    let mut predictors = Vec::new();
    let mut y = Vec::new();
    for rec in records {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != width {
            return Err(parse_err(
                line,
                &rec.len().to_string(),
                &format!("row has {} cells, expected {width}", rec.len()),
            ));
        }
        let mut values = Vec::with_capacity(width);
        for (cell, name) in rec.iter().zip(&names) {
            let cell = cell.trim();
            if cell.is_empty() {
                return Err(parse_err(line, name, "blank cell"));
            }
            let v: f64 = cell.parse().map_err(|_| parse_err(line, name, &format!("non-numeric cell `{cell}`")))?;
            if !v.is_finite() {
                return Err(parse_err(line, name, &format!("non-finite cell `{cell}`")));
            }
            values.push(v);
        }
        y.push(values[0]);
        predictors.push(values[1..].to_vec());
    }
    if y.is_empty() {
        return Err(Error::Dimension("dataset has a header but no rows".into()));
    }
    Dataset::from_predictors(predictors, y)
}

fn parse_err(line: u64, column: &str, message: &str) -> Error {
    Error::Parse { line, column: column.to_string(), message: message.to_string() }
}
