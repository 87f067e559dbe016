//! Output encoding: one `OutputRecord` per command invocation, rendered as
//! CSV, JSON, or a human-readable pretty layout.
//!
//! Machine formats carry full double precision (17 significant digits via
//! `{:.16e}`, which round-trips every f64 exactly); the pretty format
//! rounds to 5 decimals — `{:.5}` rounds half-to-even, matching the
//! published tables — and normalizes `-0.0` to `0.0` so rounding can never
//! print a signed zero.

use std::fmt::Write as _;

pub const SCHEMA_VERSION: &str = "fgn/1";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
}

/// Full-precision numeric form used by csv and json alike, so the two
/// encodings always decode to identical payloads.
pub fn fmt_full(v: f64) -> String {
    format!("{v:.16e}")
}

/// 5-decimal pretty form (round-half-even), with a signed zero normalized
/// away — both literal −0.0 and tiny negatives that round to zero.
pub fn fmt5(v: f64) -> String {
    let s = format!("{v:.5}");
    if s == "-0.00000" { "0.00000".into() } else { s }
}

/// 6-decimal pretty form for the limit constants.
pub fn fmt6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" { "0.000000".into() } else { s }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Pretty,
}

/// Everything one command emits: identification, echoed parameters, the
/// tabular payload, and a pre-rendered pretty view.
pub struct OutputRecord {
    pub command: &'static str,
    pub parameters: Vec<(&'static str, String)>,
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
    pub pretty: String,
}

impl OutputRecord {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
            Format::Pretty => self.pretty.clone(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        write!(out, "schema={SCHEMA_VERSION},command={}", self.command).unwrap();
        for (k, v) in &self.parameters {
            // The header line is itself comma-separated; keep parameter
            // values from splitting it.
            write!(out, ",{k}={}", v.replace(',', ";")).unwrap();
        }
        out.push('\n');
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.columns.len());
            let fields: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Int(i) => i.to_string(),
                    Cell::Num(v) => fmt_full(*v),
                    Cell::Text(t) => t.replace(',', ";"),
                })
                .collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n");
        writeln!(out, "  \"schema_version\": {},", json_string(SCHEMA_VERSION)).unwrap();
        writeln!(out, "  \"command\": {},", json_string(self.command)).unwrap();
        out.push_str("  \"parameters\": {");
        for (i, (k, v)) in self.parameters.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "\n    {}: {}", json_string(k), json_string(v)).unwrap();
        }
        out.push_str(if self.parameters.is_empty() { "},\n" } else { "\n  },\n" });
        out.push_str("  \"rows\": [");
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str("\n    {");
            for (j, (name, cell)) in self.columns.iter().zip(row).enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                let value = match cell {
                    Cell::Int(v) => v.to_string(),
                    // JSON has no literal for non-finite numbers; encode
                    // them as strings (csv prints the same spelling).
                    Cell::Num(v) if v.is_finite() => fmt_full(*v),
                    Cell::Num(v) => json_string(&v.to_string()),
                    Cell::Text(t) => json_string(t),
                };
                write!(out, "{}: {}", json_string(name), value).unwrap();
            }
            out.push('}');
        }
        out.push_str(if self.rows.is_empty() { "]\n" } else { "\n  ]\n" });
        out.push_str("}\n");
        out
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                write!(out, "\\u{:04x}", c as u32).unwrap();
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
