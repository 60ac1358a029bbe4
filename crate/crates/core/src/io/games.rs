//! Game batteries as JSON.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::SCHEMA_VERSION;
use crate::error::{Error, Result};
use crate::mixture::BinaryGame;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GamesDocument {
    pub schema_version: u32,
    pub games: Vec<BinaryGame>,
}

impl GamesDocument {
    pub fn new(games: Vec<BinaryGame>) -> Self {
        Self { schema_version: SCHEMA_VERSION, games }
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!("unsupported games schema version {}", self.schema_version)));
        }
        if self.games.is_empty() {
            return Err(Error::Empty("games document lists no games".into()));
        }
        let mut ids = HashSet::new();
        for g in &self.games {
            g.validate()?;
            if !ids.insert(g.id.as_str()) {
                return Err(Error::DuplicateId(g.id.clone()));
            }
        }
        Ok(())
    }
}

pub fn parse_games(text: &str) -> Result<Vec<BinaryGame>> {
    let doc: GamesDocument = serde_json::from_str(text)?;
    doc.validate()?;
    Ok(doc.games)
}

pub fn load_games(path: &Path) -> Result<Vec<BinaryGame>> {
    parse_games(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_defaults() {
        let games = BinaryGame::mini_ultimatum_set();
        let text = serde_json::to_string(&GamesDocument::new(games.clone())).unwrap();
        assert_eq!(parse_games(&text).unwrap(), games);
        let one = r#"{"schema_version":1,"games":[{"id":"g","payoffs":[[[1,1],[1,1]],[[2,0],[0,0]]]}]}"#;
        assert_eq!(parse_games(one).unwrap()[0].belief_a, 0.5);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(parse_games(r#"{"schema_version":2,"games":[]}"#), Err(Error::Config(_))));
        assert!(matches!(parse_games(r#"{"schema_version":1,"games":[]}"#), Err(Error::Empty(_))));
        let dup = r#"{"schema_version":1,"games":[{"id":"g","payoffs":[[[1,1],[1,1]],[[2,0],[0,0]]]},{"id":"g","payoffs":[[[1,1],[1,1]],[[2,0],[0,0]]]}]}"#;
        assert!(matches!(parse_games(dup), Err(Error::DuplicateId(_))));
        let neg = r#"{"schema_version":1,"games":[{"id":"g","payoffs":[[[-1,1],[1,1]],[[2,0],[0,0]]]}]}"#;
        assert!(parse_games(neg).is_err());
        assert!(matches!(parse_games("{"), Err(Error::Json(_))));
    }
}
