//! Individual preference estimates, one subject per row.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use statrs::statistics::{Data, Median, Statistics};

use super::{check_header, csv_error, csv_error_at};
use crate::error::{Error, Result};
use crate::preferences::PreferenceParams;

pub const HEADER: [&str; 4] = ["id", "alpha", "beta", "kappa"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRecord {
    pub id: String,
    pub alpha: f64,
    pub beta: f64,
    pub kappa: f64,
}

impl EstimateRecord {
    pub fn params(&self) -> PreferenceParams {
        PreferenceParams { alpha: self.alpha, beta: self.beta, kappa: self.kappa, lambda: 0.0 }
    }

    /// `α, β ∈ [−2, 2]` and `κ ∈ [0, 1]`.
    pub fn in_test_box(&self) -> bool {
        self.params().in_test_box()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub total: usize,
    pub kept: usize,
    pub dropped: usize,
    pub dropped_ids: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamSummary {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub median: f64,
}

impl ParamSummary {
    /// `None` for an empty sample.
    pub fn of(xs: &[f64]) -> Option<Self> {
        if xs.is_empty() {
            return None;
        }
        Some(Self { min: xs.min(), max: xs.max(), mean: xs.mean(), median: Data::new(xs.to_vec()).median() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateSummary {
    pub alpha: ParamSummary,
    pub beta: ParamSummary,
    pub kappa: ParamSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoadedEstimates {
    /// Rows inside the test box, in file order.
    pub records: Vec<EstimateRecord>,
    pub report: FilterReport,
    /// Statistics of the kept rows; `None` when the filter drops everything.
    pub summary: Option<EstimateSummary>,
}

/// Parses `id,alpha,beta,kappa` CSV text and applies the test-sample filter.
pub fn parse_estimates(text: &str) -> Result<LoadedEstimates> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(csv_error)?.clone();
    check_header(&headers, &HEADER)?;
    let mut all = Vec::new();
    let mut seen = HashSet::new();
    for row in rdr.records() {
        let row = row.map_err(csv_error)?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let rec: EstimateRecord = row.deserialize(Some(&headers)).map_err(|e| csv_error_at(line, e))?;
        if rec.id.is_empty() {
            return Err(Error::Parse { line, msg: "empty subject id".into() });
        }
        if ![rec.alpha, rec.beta, rec.kappa].iter().all(|x| x.is_finite()) {
            return Err(Error::Parse { line, msg: format!("non-finite parameter for subject `{}`", rec.id) });
        }
        if !seen.insert(rec.id.clone()) {
            return Err(Error::DuplicateId(rec.id));
        }
        all.push(rec);
    }
    if all.is_empty() {
        return Err(Error::Empty("estimates file has no data rows".into()));
    }
    let total = all.len();
    let (records, dropped): (Vec<_>, Vec<_>) = all.into_iter().partition(EstimateRecord::in_test_box);
    let report =
        FilterReport { total, kept: records.len(), dropped: dropped.len(), dropped_ids: dropped.into_iter().map(|r| r.id).collect() };
    let column = |f: fn(&EstimateRecord) -> f64| records.iter().map(f).collect::<Vec<_>>();
    let summary =
        match (ParamSummary::of(&column(|r| r.alpha)), ParamSummary::of(&column(|r| r.beta)), ParamSummary::of(&column(|r| r.kappa))) {
            (Some(alpha), Some(beta), Some(kappa)) => Some(EstimateSummary { alpha, beta, kappa }),
            _ => None,
        };
    Ok(LoadedEstimates { records, report, summary })
}

pub fn load_estimates(path: &Path) -> Result<LoadedEstimates> {
    parse_estimates(&std::fs::read_to_string(path)?)
}

/// Source column names for each field of the generic schema.
///
/// The public export of the individual estimates has no documented layout,
/// so the names must be supplied when the file is ingested.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnMapping {
    pub id: String,
    pub alpha: String,
    pub beta: String,
    pub kappa: String,
}

/// Rewrites a CSV with arbitrary columns into the `id,alpha,beta,kappa`
/// schema. Extra columns are ignored.
pub fn convert_estimates(text: &str, mapping: &ColumnMapping) -> Result<String> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(csv_error)?.clone();
    let index = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| Error::Parse { line: 1, msg: format!("source column `{name}` not found") })
    };
    let cols = [index(&mapping.id)?, index(&mapping.alpha)?, index(&mapping.beta)?, index(&mapping.kappa)?];
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(HEADER).map_err(csv_error)?;
    for row in rdr.records() {
        let row = row.map_err(csv_error)?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let fields: Vec<&str> = cols
            .iter()
            .map(|&c| row.get(c).ok_or_else(|| Error::Parse { line, msg: "row is shorter than the header".into() }))
            .collect::<Result<_>>()?;
        wtr.write_record(fields).map_err(csv_error)?;
    }
    let bytes = wtr.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
