//! Text formats. Every float is written with 17 significant digits, so
//! values read back compare bit-equal.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use cylwave_core::{Complex64, Field};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::CliError;

pub const WEIGHTS_HEADER: &str = "# q  Re(A)  Im(A)  Re(B)  Im(B)";

/// `d.dddddddddddddddde±x`
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Parses a weight table: five columns `q Re(A) Im(A) Re(B) Im(B)`, with
/// `#` comments and blank lines ignored.
pub fn parse_weights_table(text: &str) -> Result<Vec<(f64, Complex64, Complex64)>, CliError> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<f64> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Input(format!("weight table line {}: {e}", lineno + 1)))?;
        if cols.len() != 5 {
            return Err(CliError::Input(format!(
                "weight table line {}: expected 5 columns, found {}",
                lineno + 1,
                cols.len()
            )));
        }
        rows.push((cols[0], Complex64::new(cols[1], cols[2]), Complex64::new(cols[3], cols[4])));
    }
    Ok(rows)
}

pub fn read_weights_table(path: &Path) -> Result<Vec<(f64, Complex64, Complex64)>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read weight table {}: {e}", path.display())))?;
    parse_weights_table(&text)
}

pub fn format_weights_table(rows: &[(f64, Complex64, Complex64)]) -> String {
    let mut out = String::from(WEIGHTS_HEADER);
    out.push('\n');
    for (q, a, b) in rows {
        let _ =
            writeln!(out, "{} {} {} {} {}", fmt_f64(*q), fmt_f64(a.re), fmt_f64(a.im), fmt_f64(b.re), fmt_f64(b.im));
    }
    out
}

/// `z,r,re,im,abs2`, z-major, after `#` comment lines.
pub fn write_field_csv<W: Write>(mut out: W, comments: &[String], field: &Field) -> io::Result<()> {
    for c in comments {
        writeln!(out, "# {c}")?;
    }
    writeln!(out, "z,r,re,im,abs2")?;
    for (z, r, v) in field.samples() {
        writeln!(out, "{},{},{},{},{}", fmt_f64(z), fmt_f64(r), fmt_f64(v.re), fmt_f64(v.im), fmt_f64(v.norm_sqr()))?;
    }
    Ok(())
}

/// Pretty JSON with floats as `{:.16e}`; non-finite values become `null`.
struct ExactFloats<'a>(PrettyFormatter<'a>);

impl Formatter for ExactFloats<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(w, "{value:.16e}")
        } else {
            w.write_all(b"null")
        }
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, ExactFloats(PrettyFormatter::new()));
    value.serialize(&mut ser).map_err(|e| CliError::Input(format!("serialization: {e}")))?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}
