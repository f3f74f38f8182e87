//! Small CSV/JSON table writers shared by the library and the CLI.
//!
//! CSV cells here are always plain numerals or simple labels, so RFC
//! quoting only triggers on the (never exercised) separator/quote cases.

use crate::error::Result;
use std::io::Write;
use std::path::Path;

pub fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Format a float the way all table writers do: shortest round-trip form.
pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

/// Write a two-column `x,value` CSV table.
pub fn write_xy_csv(path: &Path, xs: &[f64], values: &[f64]) -> Result<()> {
    let mut out = String::from("x,value\n");
    for (x, v) in xs.iter().zip(values) {
        out.push_str(&fmt_f64(*x));
        out.push(',');
        out.push_str(&fmt_f64(*v));
        out.push('\n');
    }
    let mut file = std::fs::File::create(path)?;
    file.write_all(out.as_bytes())?;
    Ok(())
}

/// Write the JSON metadata sidecar next to a table: `<stem>.meta.json`.
pub fn write_sidecar(table_path: &Path, meta: &serde_json::Value) -> Result<std::path::PathBuf> {
    let sidecar = table_path.with_extension("meta.json");
    let mut file = std::fs::File::create(&sidecar)?;
    file.write_all(serde_json::to_string_pretty(meta).unwrap().as_bytes())?;
    file.write_all(b"\n")?;
    Ok(sidecar)
}
