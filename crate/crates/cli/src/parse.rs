//! Small text parsers used by the CLI: colon-range bin specifications and
//! CSV tables. Both accept untrusted input and must fail with errors, not
//! panics, on anything malformed.

use rmt_core::{Error, Result};

/// A `lo:step:hi` bin-range specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinSpec {
    pub lo: f64,
    pub step: f64,
    pub hi: f64,
}

impl BinSpec {
    /// Equidistant edges lo, lo+step, ..., hi.
    pub fn edges(&self) -> Result<Vec<f64>> {
        rmt_core::histogram::range_edges(self.lo, self.step, self.hi)
    }
}

impl std::str::FromStr for BinSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Contract(format!(
                "bin range {s:?} must have the form lo:step:hi"
            )));
        }
        let num = |p: &str, what: &str| -> Result<f64> {
            let v: f64 = p.trim().parse().map_err(|_| {
                Error::Contract(format!("bin range {s:?}: {what} {p:?} is not a number"))
            })?;
            if !v.is_finite() {
                return Err(Error::Contract(format!(
                    "bin range {s:?}: {what} must be finite"
                )));
            }
            Ok(v)
        };
        let spec = BinSpec {
            lo: num(parts[0], "lower edge")?,
            step: num(parts[1], "step")?,
            hi: num(parts[2], "upper edge")?,
        };
        if !(spec.step > 0.0) || !(spec.hi > spec.lo) {
            return Err(Error::Contract(format!(
                "bin range {s:?}: need step > 0 and hi > lo"
            )));
        }
        spec.edges()?;
        Ok(spec)
    }
}

/// A parsed CSV table: named columns of f64 values.
#[derive(Debug, Clone)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn column(&self, name: &str) -> Result<&[f64]> {
        self.header
            .iter()
            .position(|h| h == name)
            .map(|i| self.columns[i].as_slice())
            .ok_or_else(|| {
                Error::Contract(format!(
                    "no column {name:?} (available: {})",
                    self.header.join(", ")
                ))
            })
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }
}

/// Parse a comma-separated table with a header row; every body cell must
/// be a decimal number. Empty cells are tolerated as NaN placeholders
/// (the prolate error table has a triangular layout).
pub fn parse_csv(text: &str) -> Result<CsvTable> {
    let mut lines = text.lines().enumerate();
    let (_, header_line) = lines
        .next()
        .ok_or_else(|| Error::EmptyData("csv: empty input".into()))?;
    let header: Vec<String> = header_line
        .trim_end_matches('\r')
        .split(',')
        .map(|h| h.trim().to_string())
        .collect();
    if header.is_empty() || header.iter().all(String::is_empty) {
        return Err(Error::Parse {
            line: 1,
            msg: "csv: blank header row".into(),
        });
    }
    let mut columns = vec![Vec::new(); header.len()];
    for (idx, line) in lines {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != header.len() {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!(
                    "csv: row has {} cells, header has {}",
                    cells.len(),
                    header.len()
                ),
            });
        }
        for (j, cell) in cells.iter().enumerate() {
            let cell = cell.trim();
            let v = if cell.is_empty() {
                f64::NAN
            } else {
                cell.parse().map_err(|_| Error::Parse {
                    line: idx + 1,
                    msg: format!("csv: cell {cell:?} is not a number"),
                })?
            };
            columns[j].push(v);
        }
    }
    if columns[0].is_empty() {
        return Err(Error::EmptyData("csv: no data rows".into()));
    }
    Ok(CsvTable { header, columns })
}

/// Format one float with 17 significant digits (lossless f64 round trip).
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Render a CSV from a header and column slices; NaN cells render empty.
pub fn render_csv(header: &[&str], columns: &[&[f64]]) -> String {
    assert_eq!(header.len(), columns.len());
    let rows = columns.first().map_or(0, |c| c.len());
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for i in 0..rows {
        let mut first = true;
        for col in columns {
            if !first {
                out.push(',');
            }
            first = false;
            let v = col.get(i).copied().unwrap_or(f64::NAN);
            if !v.is_nan() {
                out.push_str(&fmt_f64(v));
            }
        }
        out.push('\n');
    }
    out
}
