//! File formats and batch predictions: individual estimates and choice data
//! as CSV, game batteries as JSON, run configuration as TOML.
//!
//! Every parser takes a string so that it can be fuzzed without touching the
//! file system; the `load_*` wrappers only add the read.

pub mod choices;
pub mod config;
pub mod estimates;
pub mod games;
pub mod predict;
pub mod report;

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

pub use choices::{load_choices, parse_choices, write_choices};
pub use config::RunConfig;
pub use estimates::{load_estimates, parse_estimates, EstimateRecord, FilterReport, LoadedEstimates};
pub use games::{load_games, parse_games, GamesDocument};
pub use predict::{predict_all, PredictionSet};
pub use report::FitReport;

/// Version tag carried by every JSON document the crate emits.
pub const SCHEMA_VERSION: u32 = 1;

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Maps a CSV error onto a line-numbered parse error where possible.
pub(crate) fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    csv_error_at(line, e)
}

pub(crate) fn csv_error_at(line: usize, e: csv::Error) -> Error {
    let msg = match e.kind() {
        csv::ErrorKind::Deserialize { err, .. } => err.to_string(),
        _ => e.to_string(),
    };
    Error::Parse { line, msg }
}

/// Checks that the header row is exactly `expected`.
pub(crate) fn check_header(headers: &csv::StringRecord, expected: &[&str]) -> Result<()> {
    if headers.iter().eq(expected.iter().copied()) {
        Ok(())
    } else {
        Err(Error::Parse {
            line: 1,
            msg: format!("expected header `{}`, found `{}`", expected.join(","), headers.iter().collect::<Vec<_>>().join(",")),
        })
    }
}
