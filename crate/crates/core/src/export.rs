//! Per-code tables in CSV and JSON.
//!
//! CSV header: `code,length,weight,var_num,var_den,a,b,sum`. The empty code is an empty
//! field and, having no variance, leaves `var_num` and `var_den` empty too.

use std::io::{self, Write};

use num_bigint::BigUint;
use serde::Serialize;

use crate::code::{cluster_variance, format_rational, weight, Code, Rational};
use crate::tree::{apply_code, norm1, Pair};

pub const CSV_HEADER: [&str; 8] = [
    "code", "length", "weight", "var_num", "var_den", "a", "b", "sum",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeRow {
    pub code: Code,
    pub weight: usize,
    pub variance: Option<Rational>,
    pub pair: Pair,
    pub sum: BigUint,
}

impl CodeRow {
    pub fn new(code: Code) -> Self {
        let pair = apply_code(&code);
        CodeRow {
            weight: weight(&code),
            variance: cluster_variance(&code).ok(),
            sum: norm1(&pair),
            pair,
            code,
        }
    }

    pub fn with_pair(code: Code, pair: Pair) -> Self {
        debug_assert_eq!(apply_code(&code), pair);
        CodeRow {
            weight: weight(&code),
            variance: cluster_variance(&code).ok(),
            sum: norm1(&pair),
            pair,
            code,
        }
    }

    fn csv_record(&self) -> [String; 8] {
        let (num, den) = match &self.variance {
            Some(v) => (v.numer().to_string(), v.denom().to_string()),
            None => (String::new(), String::new()),
        };
        [
            self.code.to_string(),
            self.code.len().to_string(),
            self.weight.to_string(),
            num,
            den,
            self.pair.a.to_string(),
            self.pair.b.to_string(),
            self.sum.to_string(),
        ]
    }

    fn variance_text(&self) -> String {
        self.variance
            .as_ref()
            .map_or_else(|| "-".to_string(), format_rational)
    }
}

#[derive(Serialize)]
struct JsonRow {
    code: String,
    length: usize,
    weight: usize,
    var: Option<String>,
    a: String,
    b: String,
    sum: String,
}

impl From<&CodeRow> for JsonRow {
    fn from(row: &CodeRow) -> Self {
        JsonRow {
            code: row.code.to_string(),
            length: row.code.len(),
            weight: row.weight,
            var: row.variance.as_ref().map(format_rational),
            a: row.pair.a.to_string(),
            b: row.pair.b.to_string(),
            sum: row.sum.to_string(),
        }
    }
}

fn csv_error(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

pub fn write_csv<W: Write>(out: W, rows: impl IntoIterator<Item = CodeRow>) -> io::Result<()> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    writer.write_record(CSV_HEADER).map_err(csv_error)?;
    for row in rows {
        writer.write_record(row.csv_record()).map_err(csv_error)?;
    }
    writer.flush()
}

/// A JSON array with one object per row; integers beyond `usize` fields are strings.
pub fn write_json<W: Write>(mut out: W, rows: impl IntoIterator<Item = CodeRow>) -> io::Result<()> {
    out.write_all(b"[")?;
    for (i, row) in rows.into_iter().enumerate() {
        out.write_all(if i == 0 { b"\n  " } else { b",\n  " })?;
        serde_json::to_writer(&mut out, &JsonRow::from(&row))?;
    }
    out.write_all(b"\n]\n")
}

/// Whitespace-aligned columns: `code a b sum weight var`.
pub fn write_table<W: Write>(
    mut out: W,
    rows: impl IntoIterator<Item = CodeRow>,
) -> io::Result<()> {
    writeln!(
        out,
        "{:<16} {:>12} {:>12} {:>12} {:>6} {:>10}",
        "code", "a", "b", "sum", "weight", "var"
    )?;
    for row in rows {
        let code = if row.code.is_empty() {
            "(root)".to_string()
        } else {
            row.code.to_string()
        };
        writeln!(
            out,
            "{:<16} {:>12} {:>12} {:>12} {:>6} {:>10}",
            code,
            row.pair.a,
            row.pair.b,
            row.sum,
            row.weight,
            row.variance_text()
        )?;
    }
    Ok(())
}
