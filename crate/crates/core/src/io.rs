//! Matrix files.
//!
//! CSV files hold one row per line. A cell is a plain decimal (`-0.5`) or a
//! complex number written without spaces (`1.5-0.25i`, `2i`, `-i`).
//! JSON files hold `{"rows": n, "cols": m, "data": [[..], ..]}`, where a cell
//! is a number or an `[re, im]` pair.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix, RealMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Csv,
    Json,
}

impl MatrixFormat {
    /// JSON for a `.json` extension, CSV otherwise.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Self::Json,
            _ => Self::Csv,
        }
    }
}

fn parse_real(s: &str) -> Option<f64> {
    // f64::from_str also takes "inf" and "nan"
    if !s
        .bytes()
        .all(|b| b.is_ascii_digit() || b"+-.eE".contains(&b))
    {
        return None;
    }
    s.parse::<f64>().ok().filter(|x| x.is_finite())
}

fn parse_imag(s: &str) -> Option<f64> {
    match s {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => parse_real(s),
    }
}

/// Parse one cell such as `3`, `-1e-3`, `1.5-0.25i`, `2i` or `-i`.
pub fn parse_cell(cell: &str) -> Option<Complex64> {
    let s = cell.trim();
    let Some(body) = s.strip_suffix('i') else {
        return parse_real(s).map(|re| Complex64::new(re, 0.0));
    };
    // split before the last sign that does not belong to an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Some(Complex64::new(
            parse_real(&body[..k])?,
            parse_imag(&body[k..])?,
        )),
        None => Some(Complex64::new(0.0, parse_imag(body)?)),
    }
}

pub fn format_cell(z: Complex64) -> String {
    if z.im == 0.0 && !z.im.is_sign_negative() {
        return format!("{}", z.re);
    }
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

fn parse_error(row: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        row,
        col,
        message: message.into(),
    }
}

/// Parse CSV text. Positions in errors are 1-based.
pub fn parse_csv(text: &str) -> Result<ComplexMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            parse_error(line, 0, e.to_string())
        })?;
        let row = rows.len() + 1;
        if record.iter().all(str::is_empty) {
            continue;
        }
        if let Some(first) = rows.first() {
            if record.len() != first.len() {
                return Err(parse_error(
                    row,
                    record.len().min(first.len()) + 1,
                    format!("expected {} cells, found {}", first.len(), record.len()),
                ));
            }
        }
        let cells = record
            .iter()
            .enumerate()
            .map(|(j, cell)| {
                parse_cell(cell)
                    .ok_or_else(|| parse_error(row, j + 1, format!("cannot parse {cell:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(cells);
    }
    from_rows(rows)
}

fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<ComplexMatrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if r == 0 || c == 0 {
        return Err(parse_error(0, 0, "matrix is empty"));
    }
    Ok(ComplexMatrix::from_row_iterator(
        r,
        c,
        rows.into_iter().flatten(),
    ))
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
enum JsonCell {
    Real(f64),
    Complex([f64; 2]),
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<JsonCell>>,
}

pub fn parse_json(text: &str) -> Result<ComplexMatrix> {
    let parsed: JsonMatrix =
        serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.column(), e.to_string()))?;
    if parsed.data.len() != parsed.rows {
        return Err(parse_error(
            parsed.data.len().min(parsed.rows) + 1,
            0,
            format!("declared {} rows, found {}", parsed.rows, parsed.data.len()),
        ));
    }
    let mut rows = Vec::with_capacity(parsed.rows);
    for (i, row) in parsed.data.into_iter().enumerate() {
        if row.len() != parsed.cols {
            return Err(parse_error(
                i + 1,
                row.len().min(parsed.cols) + 1,
                format!("declared {} columns, found {}", parsed.cols, row.len()),
            ));
        }
        let cells = row
            .into_iter()
            .enumerate()
            .map(|(j, cell)| {
                let z = match cell {
                    JsonCell::Real(re) => Complex64::new(re, 0.0),
                    JsonCell::Complex([re, im]) => Complex64::new(re, im),
                };
                if z.is_finite() {
                    Ok(z)
                } else {
                    Err(parse_error(i + 1, j + 1, "non-finite value"))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(cells);
    }
    from_rows(rows)
}

pub fn parse_matrix(text: &str, format: MatrixFormat) -> Result<ComplexMatrix> {
    match format {
        MatrixFormat::Csv => parse_csv(text),
        MatrixFormat::Json => parse_json(text),
    }
}

pub fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    let bytes = read_bytes(path)?;
    let text = String::from_utf8(bytes).map_err(|_| parse_error(0, 0, "file is not UTF-8"))?;
    parse_matrix(&text, MatrixFormat::from_path(path))
}

/// The real part, provided every imaginary part is exactly zero.
pub fn require_real(m: &ComplexMatrix, which: &str) -> Result<RealMatrix> {
    if m.iter().any(|z| z.im != 0.0) {
        return Err(Error::NotReal {
            which: which.to_string(),
        });
    }
    Ok(m.map(|z| z.re))
}

pub fn to_csv(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    for row in m.row_iter() {
        let cells: Vec<String> = row.iter().map(|&z| format_cell(z)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// JSON text; cells are plain numbers when the whole matrix is real.
pub fn to_json(m: &ComplexMatrix) -> String {
    let real = m.iter().all(|z| z.im == 0.0 && !z.im.is_sign_negative());
    let data = m
        .row_iter()
        .map(|row| {
            row.iter()
                .map(|z| {
                    if real {
                        JsonCell::Real(z.re)
                    } else {
                        JsonCell::Complex([z.re, z.im])
                    }
                })
                .collect()
        })
        .collect();
    let doc = JsonMatrix {
        rows: m.nrows(),
        cols: m.ncols(),
        data,
    };
    serde_json::to_string(&doc).expect("matrix serialization cannot fail") + "\n"
}

pub fn write_matrix(path: &Path, m: &ComplexMatrix) -> Result<()> {
    let text = match MatrixFormat::from_path(path) {
        MatrixFormat::Csv => to_csv(m),
        MatrixFormat::Json => to_json(m),
    };
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
