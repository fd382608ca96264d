//! On-disk formats: sequence files, identity reports, triangle tables.
//!
//! Every rational is written as a string, `"num/den"` or a bare integer.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identities::CheckReport;
use crate::kernel::{format_rational, parse_rational, ExactInt, ExactRational};
use crate::series::{Flavor, Series};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceFile {
    pub flavor: Flavor,
    pub terms: Vec<ExactRational>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawTerm {
    Text(String),
    Int(i64),
}

#[derive(Deserialize)]
struct RawSequence {
    flavor: Flavor,
    terms: Vec<RawTerm>,
}

#[derive(Serialize)]
struct OutSequence {
    flavor: Flavor,
    terms: Vec<String>,
}

impl SequenceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawSequence = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("bad sequence file: {e}")))?;
        let terms = raw
            .terms
            .into_iter()
            .map(|t| match t {
                RawTerm::Text(s) => parse_rational(&s),
                RawTerm::Int(i) => Ok(ExactRational::from_integer(i.into())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SequenceFile {
            flavor: raw.flavor,
            terms,
        })
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let out = OutSequence {
            flavor: self.flavor,
            terms: self.terms.iter().map(format_rational).collect(),
        };
        let mut s = serde_json::to_string_pretty(&out).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_series(series: &Series) -> Self {
        SequenceFile {
            flavor: series.flavor(),
            terms: series.sequence(),
        }
    }

    /// The series through `order`, defaulting to every term in the file.
    pub fn to_series(&self, order: Option<usize>) -> Result<Series> {
        if self.terms.is_empty() {
            return Err(Error::LengthMismatch { need: 1, got: 0 });
        }
        let order = order.unwrap_or(self.terms.len() - 1);
        Series::new(self.flavor, order, &self.terms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub id: String,
    pub n: usize,
    pub p: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub z: Option<String>,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl From<&CheckReport> for ReportEntry {
    fn from(r: &CheckReport) -> Self {
        ReportEntry {
            id: r.instance.id.name().to_string(),
            n: r.instance.n,
            p: r.instance.p,
            mu: r.instance.mu.as_ref().map(format_rational),
            z: r.instance.z.as_ref().map(format_rational),
            lhs: format_rational(&r.lhs),
            rhs: format_rational(&r.rhs),
            pass: r.pass,
        }
    }
}

pub fn report_json(reports: &[CheckReport]) -> String {
    let entries: Vec<ReportEntry> = reports.iter().map(ReportEntry::from).collect();
    let mut s = serde_json::to_string_pretty(&entries).expect("serializable");
    s.push('\n');
    s
}

/// Ragged rows, one line per row, no header.
pub fn rows_csv<T: AsRef<str>>(rows: &[Vec<T>]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .has_headers(false)
        .from_writer(Vec::new());
    for row in rows {
        w.write_record(row.iter().map(|c| c.as_ref()))
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv of ascii"))
}

pub fn int_rows(rows: &[Vec<ExactInt>]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| r.iter().map(|v| v.to_string()).collect())
        .collect()
}
