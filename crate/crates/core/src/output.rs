//! CSV and JSON tables.
//!
//! Reals are rendered with 9 significant digits (`%.9g` style). JSON numbers
//! carry the same rounded value, so parsing either format gives identical
//! floats. CSV uses commas, `.` decimals and LF line endings.

use std::fmt;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::pairing::RankedMatching;
use crate::sim::SweepResult;

pub const SIGNIFICANT_DIGITS: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Formats `x` like C's `%.{digits}g`.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    // Let the scientific formatter do the rounding, then read off the exponent.
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Real(x) => format_significant(*x, SIGNIFICANT_DIGITS),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Real(x) => {
                let rounded: f64 = format_significant(*x, SIGNIFICANT_DIGITS)
                    .parse()
                    .expect("formatted real parses");
                serde_json::Number::from_f64(rounded)
                    .map(Value::Number)
                    .unwrap_or(Value::Null)
            }
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// Rows under a fixed, ordered header.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()
    }

    /// An array of objects, keys in column order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .cloned()
                        .zip(row.iter().map(Cell::to_json))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut out, &self.to_json())?;
        out.write_all(b"\n")
    }

    pub fn write<W: Write>(&self, format: Format, out: W) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    pub fn render(&self, format: Format) -> String {
        let mut buf = Vec::new();
        self.write(format, &mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("tables are UTF-8")
    }

    /// Writes to a temporary file beside `path` and renames it into place,
    /// so a failed write never leaves a partial file.
    pub fn write_file(&self, format: Format, path: &Path) -> io::Result<()> {
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        self.write(format, io::BufWriter::new(tmp.as_file_mut()))?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}

/// `snr_db`, one column per series, then `<series>_se` standard errors.
pub fn sweep_table(result: &SweepResult) -> Table {
    let columns = std::iter::once("snr_db".to_string())
        .chain(result.series.iter().cloned())
        .chain(result.series.iter().map(|s| format!("{s}_se")));
    let mut table = Table::new(columns);
    for row in &result.rows {
        let cells = std::iter::once(row.snr_db)
            .chain(row.means.iter().copied())
            .chain(row.std_errors.iter().copied())
            .map(Cell::Real)
            .collect();
        table.push(cells);
    }
    table
}

/// `rank, policy, noma_sum, oma_sum` for ranked matchings.
pub fn matching_table(ranked: &[RankedMatching]) -> Table {
    let mut table = Table::new(["rank", "policy", "noma_sum", "oma_sum"]);
    for (k, m) in ranked.iter().enumerate() {
        table.push(vec![
            Cell::from(k + 1),
            Cell::Text(m.policy.to_string()),
            Cell::Real(m.report.noma_sum),
            Cell::Real(m.report.oma_sum),
        ]);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(1.0 / 3.0, 9), "0.333333333");
        assert_eq!(format_significant(2.0 / 3.0, 9), "0.666666667");
        assert_eq!(format_significant(1.0 / 7.0, 9), "0.142857143");
        assert_eq!(format_significant(0.25, 9), "0.25");
        assert_eq!(format_significant(-10.0, 9), "-10");
        assert_eq!(format_significant(0.0, 9), "0");
        assert_eq!(format_significant(123456789.0, 9), "123456789");
        assert_eq!(format_significant(1234567890.0, 9), "1.23456789e+09");
        assert_eq!(format_significant(1.5e-7, 9), "1.5e-07");
        assert_eq!(format_significant(0.0001, 9), "0.0001");
        assert_eq!(format_significant(9.9999999999, 9), "10");
        assert_eq!(format_significant(f64::NAN, 9), "NaN");
    }

    #[test]
    fn csv_quotes_policies() {
        let mut t = Table::new(["policy", "x"]);
        t.push(vec![Cell::Text("(1,4),(2,3)".into()), Cell::Real(1.0)]);
        assert_eq!(t.render(Format::Csv), "policy,x\n\"(1,4),(2,3)\",1\n");
    }

    #[test]
    fn json_keeps_column_order() {
        let mut t = Table::new(["z", "a"]);
        t.push(vec![Cell::Real(2.0 / 3.0), Cell::Int(3)]);
        let s = t.render(Format::Json);
        assert!(s.find("\"z\"").unwrap() < s.find("\"a\"").unwrap());
        assert!(s.contains("0.666666667"));
    }

    #[test]
    fn header_present_without_rows() {
        let t = Table::new(["a", "b"]);
        assert_eq!(t.render(Format::Csv), "a,b\n");
    }

    #[test]
    fn format_parsing() {
        assert_eq!("CSV".parse::<Format>().unwrap(), Format::Csv);
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
    }
}
