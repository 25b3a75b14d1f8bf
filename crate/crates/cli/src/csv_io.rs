//! CSV ingestion and persistence for matrices and masks.
//!
//! Format: comma separator, `\n` line ends, UTF-8, no header unless the
//! caller skips one. An empty cell or the literal `NaN` marks a missing
//! entry; everything else must parse as a float. Values are written with 17
//! significant digits so that write-then-parse reproduces `f64` bits exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use hankel_rpca::{BoolMatrix, Matrix, ObservationMask};

/// Parses CSV text into a matrix plus its observation mask. Missing entries
/// read as 0 with the mask cleared at that position.
pub fn parse_matrix_csv(text: &str, skip_header: bool) -> Result<(Matrix<f64>, ObservationMask)> {
    let mut rows: Vec<Vec<(f64, bool)>> = Vec::new();
    let mut width = None;
    for (line_no, line) in text.lines().enumerate() {
        if skip_header && line_no == 0 {
            continue;
        }
        let row_no = rows.len() + 1;
        let mut row = Vec::new();
        for (col_idx, cell) in line.split(',').enumerate() {
            let cell = cell.trim_end_matches('\r');
            let trimmed = cell.trim();
            if trimmed.is_empty() || trimmed == "NaN" {
                row.push((0.0, false));
            } else {
                let value: f64 = trimmed.parse().with_context(|| {
                    format!("row {row_no}, column {}: cannot parse {trimmed:?} as a number", col_idx + 1)
                })?;
                if !value.is_finite() {
                    bail!("row {row_no}, column {}: non-finite value {trimmed:?}", col_idx + 1);
                }
                row.push((value, true));
            }
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                bail!("row {row_no} has {} columns, expected {w}", row.len())
            }
            _ => {}
        }
        rows.push(row);
    }
    if rows.is_empty() {
        bail!("empty CSV input");
    }
    let (n, t) = (rows.len(), width.unwrap());
    let matrix = Matrix::from_fn(n, t, |i, j| rows[i][j].0);
    let bools = BoolMatrix::from_fn(n, t, |i, j| rows[i][j].1);
    let mask = ObservationMask::new(bools).context("CSV has no observed entries")?;
    Ok((matrix, mask))
}

pub fn read_matrix_csv(path: &Path, skip_header: bool) -> Result<(Matrix<f64>, ObservationMask)> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_matrix_csv(&text, skip_header).with_context(|| format!("parsing {}", path.display()))
}

/// Serializes a matrix; entries where `mask` is unobserved become empty cells.
pub fn matrix_to_csv(m: &Matrix<f64>, mask: Option<&ObservationMask>) -> String {
    let (n, t) = m.dims();
    let mut out = String::new();
    for i in 0..n {
        for j in 0..t {
            if j > 0 {
                out.push(',');
            }
            let observed = mask.is_none_or(|mk| mk.is_observed(i, j));
            if observed {
                let _ = write!(out, "{:.16e}", m.get(i, j));
            }
        }
        out.push('\n');
    }
    out
}

pub fn write_matrix_csv(path: &Path, m: &Matrix<f64>, mask: Option<&ObservationMask>) -> Result<()> {
    fs::write(path, matrix_to_csv(m, mask)).with_context(|| format!("writing {}", path.display()))
}

/// 0/1 CSV for boolean matrices (anomaly flags).
pub fn write_bool_csv(path: &Path, m: &BoolMatrix) -> Result<()> {
    let (n, t) = m.dims();
    let mut out = String::new();
    for i in 0..n {
        for j in 0..t {
            if j > 0 {
                out.push(',');
            }
            out.push(if m.get(i, j) { '1' } else { '0' });
        }
        out.push('\n');
    }
    fs::write(path, out).with_context(|| format!("writing {}", path.display()))
}

/// `row,col` pairs, one per line.
pub fn write_index_csv(path: &Path, index: &[(usize, usize)]) -> Result<()> {
    let mut out = String::new();
    for &(i, j) in index {
        let _ = writeln!(out, "{i},{j}");
    }
    fs::write(path, out).with_context(|| format!("writing {}", path.display()))
}
