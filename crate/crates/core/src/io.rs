//! CSV readers and writers.
//!
//! Floats are written with the shortest decimal representation that parses
//! back to the same `f64`, so every write/read cycle is exact.
//!
//! Formats:
//!
//! * points: header `x1[,x2[,x3]][,w][,value]`, one point per row
//! * grid: no header, `L` rows of `L` values (a single row for `d = 1`)
//! * dense matrix: no header, row-major
//! * sparse matrix: header `i,j,q`, 0-based indices, both triangles
//! * curves, predictions, variograms: a header row followed by numeric rows

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::{PointSet, PrecisionMatrix};
use crate::predict::Prediction;
use crate::simulate::LatticeField;

fn parse_f64(field: &str, line: usize) -> Result<f64> {
    field
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("line {line}: not a number: {field:?}")))
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Writes a header (if non-empty) and numeric rows.
pub fn write_table<W: Write>(out: W, header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    if !header.is_empty() {
        w.write_record(header)?;
    }
    for row in rows {
        w.write_record(row.iter().map(|v| v.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a headed numeric table: column names and rows.
pub fn read_table<R: Read>(input: R) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let header = r.headers()?.iter().map(str::to_string).collect::<Vec<_>>();
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        rows.push(rec.iter().map(|f| parse_f64(f, i + 2)).collect::<Result<Vec<_>>>()?);
    }
    Ok((header, rows))
}

/// Reads a header-less numeric table.
fn read_raw<R: Read>(input: R) -> Result<Vec<Vec<f64>>> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(input);
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        rows.push(rec.iter().map(|f| parse_f64(f, i + 1)).collect::<Result<Vec<_>>>()?);
    }
    Ok(rows)
}

struct PointColumns {
    coords: Vec<usize>,
    weight: Option<usize>,
    value: Option<usize>,
}

fn point_columns(header: &[String]) -> Result<PointColumns> {
    let mut coords = Vec::new();
    let mut weight = None;
    let mut value = None;
    for (i, name) in header.iter().enumerate() {
        match name.as_str() {
            "x1" | "x2" | "x3" => {
                let k: usize = name[1..].parse().unwrap();
                if k != coords.len() + 1 {
                    return Err(Error::Parse(format!("coordinate column {name} out of order")));
                }
                coords.push(i);
            }
            "w" => weight = Some(i),
            "value" => value = Some(i),
            other => return Err(Error::Parse(format!("unknown point column {other:?}"))),
        }
    }
    if coords.is_empty() {
        return Err(Error::Parse("point file has no x1 column".into()));
    }
    Ok(PointColumns { coords, weight, value })
}

pub fn read_points_from<R: Read>(input: R) -> Result<PointSet> {
    let (header, rows) = read_table(input)?;
    let cols = point_columns(&header)?;
    let dim = cols.coords.len();
    let coords = rows
        .iter()
        .flat_map(|r| cols.coords.iter().map(move |&c| r[c]))
        .collect();
    let mut pts = PointSet::new(dim, coords)?;
    if let Some(c) = cols.weight {
        pts = pts.with_weights(rows.iter().map(|r| r[c]).collect())?;
    }
    if let Some(c) = cols.value {
        pts = pts.with_values(rows.iter().map(|r| r[c]).collect())?;
    }
    Ok(pts)
}

pub fn read_points(path: &Path) -> Result<PointSet> {
    read_points_from(open(path)?)
}

/// Writes points; the `w` column is omitted when all weights are 1.
pub fn write_points_to<W: Write>(out: W, pts: &PointSet) -> Result<()> {
    let with_w = pts.weights().iter().any(|&w| w != 1.0);
    let mut header: Vec<String> = (1..=pts.dim()).map(|k| format!("x{k}")).collect();
    if with_w {
        header.push("w".into());
    }
    if pts.values().is_some() {
        header.push("value".into());
    }
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = (0..pts.len()).map(|i| {
        let mut row = pts.position(i).to_vec();
        if with_w {
            row.push(pts.weights()[i]);
        }
        if let Some(v) = pts.values() {
            row.push(v[i]);
        }
        row
    });
    write_table(out, &header, rows)
}

pub fn write_points(path: &Path, pts: &PointSet) -> Result<()> {
    write_points_to(create(path)?, pts)
}

/// Target locations: header `x1[,x2[,x3]]`.
pub fn read_targets_from<R: Read>(input: R) -> Result<Vec<Vec<f64>>> {
    let (header, rows) = read_table(input)?;
    let cols = point_columns(&header)?;
    if cols.weight.is_some() || cols.value.is_some() {
        return Err(Error::Parse("target file takes coordinate columns only".into()));
    }
    Ok(rows)
}

pub fn read_targets(path: &Path) -> Result<Vec<Vec<f64>>> {
    read_targets_from(open(path)?)
}

/// Reads a grid. One row gives a 1-d field, `L` rows of `L` values a 2-d field.
pub fn read_grid_from<R: Read>(input: R, spacing: f64) -> Result<LatticeField> {
    let rows = read_raw(input)?;
    let side = rows.first().map_or(0, Vec::len);
    if rows.len() == 1 {
        return LatticeField::from_values(1, side, spacing, rows.into_iter().next().unwrap());
    }
    if rows.len() != side {
        return Err(Error::Parse(format!(
            "grid must be square: {} rows of {} values",
            rows.len(),
            side
        )));
    }
    if let Some(bad) = rows.iter().find(|r| r.len() != side) {
        return Err(Error::LengthMismatch {
            expected: side,
            found: bad.len(),
        });
    }
    LatticeField::from_values(2, side, spacing, rows.concat())
}

pub fn read_grid(path: &Path, spacing: f64) -> Result<LatticeField> {
    read_grid_from(open(path)?, spacing)
}

pub fn write_grid_to<W: Write>(out: W, field: &LatticeField) -> Result<()> {
    write_table(out, &[], (0..field.rows()).map(|r| field.row(r).to_vec()))
}

pub fn write_grid(path: &Path, field: &LatticeField) -> Result<()> {
    write_grid_to(create(path)?, field)
}

pub fn write_matrix_to<W: Write>(out: W, q: &PrecisionMatrix, sparse: bool) -> Result<()> {
    if sparse {
        let rows = q
            .triplets()
            .into_iter()
            .map(|t| vec![t.row as f64, t.col as f64, t.value]);
        write_table(out, &["i", "j", "q"], rows)
    } else {
        let n = q.order();
        let dense = q.to_dense();
        write_table(out, &[], (0..n).map(|i| dense[i * n..(i + 1) * n].to_vec()))
    }
}

pub fn write_matrix(path: &Path, q: &PrecisionMatrix, sparse: bool) -> Result<()> {
    write_matrix_to(create(path)?, q, sparse)
}

/// Reads a dense matrix as written by [`write_matrix_to`].
pub fn read_dense_matrix_from<R: Read>(input: R) -> Result<PrecisionMatrix> {
    let rows = read_raw(input)?;
    let n = rows.len();
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    PrecisionMatrix::from_dense(n, rows.concat())
}

pub fn write_predictions_to<W: Write>(out: W, preds: &[Prediction], dim: usize) -> Result<()> {
    let mut header: Vec<String> = (1..=dim).map(|k| format!("x{k}")).collect();
    header.push("mean".into());
    header.push("variance".into());
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = preds.iter().map(|p| {
        let mut row = p.location.clone();
        row.push(p.mean);
        row.push(p.variance);
        row
    });
    write_table(out, &header, rows)
}

pub fn write_predictions(path: &Path, preds: &[Prediction], dim: usize) -> Result<()> {
    write_predictions_to(create(path)?, preds, dim)
}
