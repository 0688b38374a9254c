//! Result serialization: CSV, a JSON mirror, and a companion gnuplot
//! script.
//!
//! The CSV schema is fixed:
//!
//! ```text
//! sweep_value,ber,mean_abs_llr,mi_bits,trials,errors,n00,n01,n10,n11
//! ```
//!
//! Floats are written with Rust's shortest round-trip formatting, which is
//! deterministic, so identical runs produce byte-identical files.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::ResultRow;
use crate::report_channel::ReportPath;

pub const CSV_HEADER: &str = "sweep_value,ber,mean_abs_llr,mi_bits,trials,errors,n00,n01,n10,n11";

/// Render rows to the fixed CSV schema.
pub fn csv_string(rows: &[ResultRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.sweep_value,
            r.ber,
            r.mean_abs_llr,
            r.mi_bits,
            r.trials,
            r.errors,
            r.confusion[0],
            r.confusion[1],
            r.confusion[2],
            r.confusion[3],
        ));
    }
    out
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Config(format!("{}: {e}", path.display()))
}

pub fn write_csv(rows: &[ResultRow], path: &Path) -> Result<()> {
    std::fs::write(path, csv_string(rows)).map_err(|e| io_err(path, e))
}

/// JSON mirror of the CSV rows, plus the equivalent report channels the
/// experiment actually used.
pub fn json_string(rows: &[ResultRow], paths: &[ReportPath]) -> String {
    let rows: Vec<serde_json::Value> = rows
        .iter()
        .map(|r| {
            serde_json::json!({
                "sweep_value": r.sweep_value,
                "ber": r.ber,
                "mean_abs_llr": r.mean_abs_llr,
                "mi_bits": r.mi_bits,
                "trials": r.trials,
                "errors": r.errors,
                "n00": r.confusion[0],
                "n01": r.confusion[1],
                "n10": r.confusion[2],
                "n11": r.confusion[3],
            })
        })
        .collect();
    let equivalents: Vec<serde_json::Value> = paths
        .iter()
        .map(|p| serde_json::json!({"eps0": p.equivalent.eps0, "eps1": p.equivalent.eps1}))
        .collect();
    let doc = serde_json::json!({"rows": rows, "equivalent_channels": equivalents});
    serde_json::to_string_pretty(&doc).expect("json serialization cannot fail")
}

pub fn write_json(rows: &[ResultRow], paths: &[ReportPath], path: &Path) -> Result<()> {
    std::fs::write(path, json_string(rows, paths)).map_err(|e| io_err(path, e))
}

/// Companion gnuplot script that plots the CSV (no interactive UI; writes a
/// PNG next to the data).
pub fn gnuplot_string(csv_name: &str, title: &str) -> String {
    let png = csv_name.strip_suffix(".csv").unwrap_or(csv_name);
    format!(
        "set datafile separator comma\n\
         set key outside\n\
         set grid\n\
         set xlabel \"sweep value\"\n\
         set ylabel \"BER\"\n\
         set y2label \"MI (bits)\"\n\
         set y2tics\n\
         set title \"{title}\"\n\
         set terminal pngcairo size 960,640\n\
         set output \"{png}.png\"\n\
         plot \"{csv_name}\" using 1:2 skip 1 with linespoints title \"BER\", \\\n\
         \x20    \"{csv_name}\" using 1:4 skip 1 axes x1y2 with linespoints title \"MI\"\n"
    )
}

pub fn write_gnuplot(csv_path: &Path, title: &str) -> Result<()> {
    let gp_path = csv_path.with_extension("gp");
    let csv_name = csv_path
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or_else(|| Error::Config(format!("bad csv path {}", csv_path.display())))?;
    let mut file = std::fs::File::create(&gp_path).map_err(|e| io_err(&gp_path, e))?;
    file.write_all(gnuplot_string(csv_name, title).as_bytes())
        .map_err(|e| io_err(&gp_path, e))
}
