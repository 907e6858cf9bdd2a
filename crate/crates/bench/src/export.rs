//! CSV, JSON and markdown renderings of a report, and atomic file output.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::Path;

use crate::config::{BandPolicy, Format};
use crate::error::BenchError;
use crate::report::{BenchmarkReport, ReportRow, RowStatus};

pub const CSV_HEADER: [&str; 8] = ["problem", "transform", "budget", "k", "n", "value", "abs_error", "status"];

/// Seventeen significant digits, enough to round-trip any double.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn cell_value(row: &ReportRow, v: Option<f64>) -> String {
    match (row.status, v) {
        (RowStatus::Unstable, _) => "unstable".to_string(),
        (_, Some(v)) => num(v),
        (_, None) => String::new(),
    }
}

fn opt_usize(v: Option<usize>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn to_csv(report: &BenchmarkReport) -> Result<String, BenchError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in &report.rows {
        w.write_record([
            r.problem.clone(),
            r.transform.clone(),
            r.budget.to_string(),
            opt_usize(r.k),
            opt_usize(r.n),
            cell_value(r, r.value),
            cell_value(r, r.abs_error),
            r.status.as_str().to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| BenchError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Rows of a CSV report. Metadata is not part of the CSV form.
pub fn read_csv<R: Read>(reader: R) -> Result<BenchmarkReport, BenchError> {
    let mut rdr = csv::Reader::from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(BenchError::Config(format!("unexpected report header {header:?}")));
    }
    let bad = |what: &str, v: &str| BenchError::Config(format!("bad {what} {v:?} in report"));
    let opt_num = |s: &str, what: &str| -> Result<Option<f64>, BenchError> {
        match s {
            "" | "unstable" => Ok(None),
            _ => s.parse().map(Some).map_err(|_| bad(what, s)),
        }
    };
    let opt_idx = |s: &str, what: &str| -> Result<Option<usize>, BenchError> {
        match s {
            "" => Ok(None),
            _ => s.parse().map(Some).map_err(|_| bad(what, s)),
        }
    };
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        rows.push(ReportRow {
            problem: rec[0].to_string(),
            transform: rec[1].to_string(),
            budget: rec[2].parse().map_err(|_| bad("budget", &rec[2]))?,
            k: opt_idx(&rec[3], "k")?,
            n: opt_idx(&rec[4], "n")?,
            value: opt_num(&rec[5], "value")?,
            abs_error: opt_num(&rec[6], "abs_error")?,
            status: RowStatus::parse(&rec[7]).ok_or_else(|| bad("status", &rec[7]))?,
        });
    }
    Ok(BenchmarkReport {
        rows,
        ..BenchmarkReport::default()
    })
}

fn json_value(row: &ReportRow, v: Option<f64>) -> String {
    match (row.status, v) {
        (RowStatus::Unstable, _) => "\"unstable\"".to_string(),
        (_, Some(v)) => num(v),
        (_, None) => "null".to_string(),
    }
}

fn json_opt(v: Option<usize>) -> String {
    v.map(|v| v.to_string()).unwrap_or_else(|| "null".to_string())
}

/// Array of row objects with the CSV field names.
pub fn to_json(report: &BenchmarkReport) -> Result<String, BenchError> {
    let mut out = String::from("[");
    for (i, r) in report.rows.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write!(
            out,
            "\n  {{\"problem\": {}, \"transform\": {}, \"budget\": {}, \"k\": {}, \"n\": {}, \
             \"value\": {}, \"abs_error\": {}, \"status\": \"{}\"}}",
            serde_json::to_string(&r.problem)?,
            serde_json::to_string(&r.transform)?,
            r.budget,
            json_opt(r.k),
            json_opt(r.n),
            json_value(r, r.value),
            json_value(r, r.abs_error),
            r.status.as_str(),
        )
        .expect("writing to a String");
    }
    out.push_str("\n]\n");
    Ok(out)
}

fn md_cell(r: &ReportRow) -> String {
    match (r.status, r.abs_error, r.value) {
        (RowStatus::Unstable, _, _) => "unstable".to_string(),
        (RowStatus::Undefined, _, _) => "-".to_string(),
        (_, Some(e), _) => format!("{e:.3e}"),
        (_, None, Some(v)) => format!("{v:.6e}"),
        _ => String::new(),
    }
}

/// One table per problem: a row per budget, a column per transform.
pub fn to_markdown(report: &BenchmarkReport, band: &BandPolicy) -> String {
    let m = &report.metadata;
    let mut out = String::new();
    let _ = writeln!(out, "# Benchmark report\n");
    let _ = writeln!(out, "- version: {}", m.version);
    let _ = writeln!(out, "- precision: {}", m.precision);
    let _ = writeln!(out, "- denominator guard: {:e}", m.guard);
    let _ = writeln!(out, "- timestamp: {}", m.timestamp);
    let _ = writeln!(out, "- wall time: {:.1} ms", m.wall_time_ms);
    let _ = writeln!(
        out,
        "- cells show |T - S| at the highest-order entry whose input ends at S_n. \
         Fixture checks use decade bands rather than digits, since the recursions are \
         cancellation-dominated and trailing digits depend on rounding: {}.",
        band.describe()
    );
    let mut problems: Vec<&str> = Vec::new();
    for r in &report.rows {
        if !problems.contains(&r.problem.as_str()) {
            problems.push(&r.problem);
        }
    }
    for p in problems {
        let rows: Vec<&ReportRow> = report.rows.iter().filter(|r| r.problem == p).collect();
        let mut transforms: Vec<&str> = Vec::new();
        for r in &rows {
            if !transforms.contains(&r.transform.as_str()) {
                transforms.push(&r.transform);
            }
        }
        let budgets: BTreeSet<usize> = rows.iter().map(|r| r.budget).collect();
        let _ = writeln!(out, "\n## {p}\n");
        let _ = writeln!(out, "| n | {} |", transforms.join(" | "));
        let _ = writeln!(out, "|---|{}", "---|".repeat(transforms.len()));
        for b in budgets {
            let cells: Vec<String> = transforms
                .iter()
                .map(|t| {
                    rows.iter()
                        .find(|r| r.budget == b && r.transform == *t)
                        .map(|r| md_cell(r))
                        .unwrap_or_default()
                })
                .collect();
            let _ = writeln!(out, "| {b} | {} |", cells.join(" | "));
        }
    }
    out
}

pub fn render(report: &BenchmarkReport, format: Format, band: &BandPolicy) -> Result<String, BenchError> {
    match format {
        Format::Csv => to_csv(report),
        Format::Json => to_json(report),
        Format::Markdown => Ok(to_markdown(report, band)),
    }
}

/// Write `contents` to a temporary file next to `path`, then rename it
/// into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), BenchError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| BenchError::Io(e.error))?;
    Ok(())
}

pub fn export(report: &BenchmarkReport, format: Format, band: &BandPolicy, path: &Path) -> Result<(), BenchError> {
    write_atomic(path, render(report, format, band)?.as_bytes())
}
