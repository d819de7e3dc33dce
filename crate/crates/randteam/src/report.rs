//! Comparison records and their Markdown, CSV and JSON renderings.

use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::config::Mode;
use crate::error::{Result, RunError};
use crate::ledger::Ledger;

pub const CSV_HEADER: [&str; 6] = [
    "case",
    "param_set",
    "value",
    "paper_value",
    "abs_diff",
    "status",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    KnownDiscrepancy,
    Mismatch,
    /// Nothing published to compare against.
    NoReference,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Match => "match",
            Status::KnownDiscrepancy => "known-discrepancy",
            Status::Mismatch => "mismatch",
            Status::NoReference => "no-reference",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompatRecord {
    pub case: String,
    pub param_set: String,
    pub value: f64,
    pub paper_value: Option<f64>,
    pub abs_diff: Option<f64>,
    pub status: Status,
}

impl CompatRecord {
    /// `match` within `tol`, otherwise `known-discrepancy` when the ledger
    /// lists the case for this mode, otherwise `mismatch`.
    pub fn compare(
        case: impl Into<String>,
        param_set: impl Into<String>,
        value: f64,
        reference: f64,
        tol: f64,
        ledger: &Ledger,
        mode: Mode,
    ) -> Self {
        let case = case.into();
        let diff = (value - reference).abs();
        let status = if diff <= tol {
            Status::Match
        } else if ledger.contains(&case, mode) {
            Status::KnownDiscrepancy
        } else {
            Status::Mismatch
        };
        CompatRecord {
            case,
            param_set: param_set.into(),
            value,
            paper_value: Some(reference),
            abs_diff: Some(diff),
            status,
        }
    }

    pub fn unreferenced(case: impl Into<String>, param_set: impl Into<String>, value: f64) -> Self {
        CompatRecord {
            case: case.into(),
            param_set: param_set.into(),
            value,
            paper_value: None,
            abs_diff: None,
            status: Status::NoReference,
        }
    }
}

/// A plain table rendered only in Markdown.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub caption: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub tables: Vec<Table>,
    pub records: Vec<CompatRecord>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, r: CompatRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.tables.extend(other.tables);
        self.records.extend(other.records);
        self.notes.extend(other.notes);
    }

    pub fn has_mismatch(&self) -> bool {
        self.records.iter().any(|r| r.status == Status::Mismatch)
    }

    pub fn record(&self, case: &str) -> Option<&CompatRecord> {
        self.records.iter().find(|r| r.case == case)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Md,
    Csv,
    Json,
}

pub fn emit<W: Write>(report: &Report, format: Format, out: W) -> Result<()> {
    match format {
        Format::Md => emit_markdown(report, out),
        Format::Csv => emit_csv(report, out),
        Format::Json => emit_json(report, out),
    }
}

pub fn emit_csv<W: Write>(report: &Report, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in &report.records {
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        w.write_record([
            r.case.clone(),
            r.param_set.clone(),
            r.value.to_string(),
            opt(r.paper_value),
            opt(r.abs_diff),
            r.status.as_str().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_json<W: Write>(report: &Report, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, report).map_err(|e| RunError::Format(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

pub fn parse_json(text: &str) -> Result<Report> {
    serde_json::from_str(text).map_err(|e| RunError::Format(e.to_string()))
}

fn md_row(cells: &[String]) -> String {
    format!("| {} |\n", cells.join(" | "))
}

fn md_rule(n: usize) -> String {
    format!("|{}\n", "---|".repeat(n))
}

pub fn emit_markdown<W: Write>(report: &Report, mut out: W) -> Result<()> {
    let mut s = String::new();
    writeln!(s, "## {}\n", report.title).unwrap();
    for t in &report.tables {
        if !t.caption.is_empty() {
            writeln!(s, "{}\n", t.caption).unwrap();
        }
        s.push_str(&md_row(&t.header));
        s.push_str(&md_rule(t.header.len()));
        for row in &t.rows {
            s.push_str(&md_row(row));
        }
        s.push('\n');
    }
    if !report.records.is_empty() {
        let header: Vec<String> = CSV_HEADER.iter().map(|h| h.to_string()).collect();
        s.push_str(&md_row(&header));
        s.push_str(&md_rule(header.len()));
        for r in &report.records {
            let opt = |x: Option<f64>| x.map(|v| format!("{v:.4}")).unwrap_or_else(|| "-".into());
            s.push_str(&md_row(&[
                r.case.clone(),
                r.param_set.clone(),
                format!("{:.4}", r.value),
                opt(r.paper_value),
                r.abs_diff
                    .map(|v| format!("{v:.1e}"))
                    .unwrap_or_else(|| "-".into()),
                r.status.as_str().into(),
            ]));
        }
        s.push('\n');
    }
    for n in &report.notes {
        writeln!(s, "- {n}").unwrap();
    }
    out.write_all(s.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let l = Ledger::bundled();
        let mut r = Report::new("sample");
        r.push(CompatRecord::compare(
            "security/lower",
            "p1=1/4",
            0.25,
            0.25,
            5e-3,
            &l,
            Mode::Corrected,
        ));
        r.push(CompatRecord::compare(
            "table1/row4",
            "phi",
            -3.5,
            -4.5211,
            5e-3,
            &l,
            Mode::Corrected,
        ));
        r.push(CompatRecord::compare(
            "zs/case2/none",
            "",
            0.6921,
            1.8991,
            5e-3,
            &l,
            Mode::Corrected,
        ));
        r.push(CompatRecord::unreferenced("minimax", "", 0.1 + 0.2));
        r
    }

    #[test]
    fn statuses() {
        let r = sample();
        let s: Vec<Status> = r.records.iter().map(|x| x.status).collect();
        assert_eq!(
            s,
            [
                Status::Match,
                Status::KnownDiscrepancy,
                Status::Mismatch,
                Status::NoReference
            ]
        );
        assert!(r.has_mismatch());
    }

    #[test]
    fn empty_csv_is_header_only() {
        let mut buf = Vec::new();
        emit_csv(&Report::new("empty"), &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "case,param_set,value,paper_value,abs_diff,status\n"
        );
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let mut buf = Vec::new();
        emit_json(&r, &mut buf).unwrap();
        assert_eq!(parse_json(std::str::from_utf8(&buf).unwrap()).unwrap(), r);
    }

    #[test]
    fn csv_rows() {
        let mut buf = Vec::new();
        emit_csv(&sample(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("security/lower,p1=1/4,0.25,0.25,0,match"));
        assert!(text.lines().nth(4).unwrap().ends_with(",,,no-reference"));
    }
}
