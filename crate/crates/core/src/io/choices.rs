//! Binary choice data: `subject_id,game_id,role,action`.

use std::path::Path;

use super::{check_header, csv_error, csv_error_at, write_atomic};
use crate::error::{Error, Result};
use crate::mixture::ChoiceRecord;

pub const HEADER: [&str; 4] = ["subject_id", "game_id", "role", "action"];

/// Parses choice rows. Roles are `P` or `R` and actions `0` or `1`; the
/// match against a game battery happens in `ChoiceData::new`.
pub fn parse_choices(text: &str) -> Result<Vec<ChoiceRecord>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(csv_error)?.clone();
    check_header(&headers, &HEADER)?;
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(csv_error)?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let rec: ChoiceRecord = row.deserialize(Some(&headers)).map_err(|e| csv_error_at(line, e))?;
        if rec.subject_id.is_empty() || rec.game_id.is_empty() {
            return Err(Error::Parse { line, msg: "empty subject or game id".into() });
        }
        if rec.action > 1 {
            return Err(Error::Parse { line, msg: format!("action must be 0 or 1, got {}", rec.action) });
        }
        out.push(rec);
    }
    if out.is_empty() {
        return Err(Error::Empty("choices file has no data rows".into()));
    }
    Ok(out)
}

pub fn load_choices(path: &Path) -> Result<Vec<ChoiceRecord>> {
    parse_choices(&std::fs::read_to_string(path)?)
}

pub fn choices_csv(records: &[ChoiceRecord]) -> Result<String> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(HEADER).map_err(csv_error)?;
    for r in records {
        let action = r.action.to_string();
        wtr.write_record([r.subject_id.as_str(), r.game_id.as_str(), r.role.as_str(), action.as_str()]).map_err(csv_error)?;
    }
    let bytes = wtr.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn write_choices(path: &Path, records: &[ChoiceRecord]) -> Result<()> {
    write_atomic(path, choices_csv(records)?.as_bytes())
}
