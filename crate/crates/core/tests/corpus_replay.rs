//! Replays the fuzz corpus seeds through the parsers on stable, with the
//! same invariants the fuzz targets assert, plus random mutations of each
//! seed.

use std::path::{Path, PathBuf};

use bargain_core::io::estimates::{convert_estimates, ColumnMapping};
use bargain_core::io::{parse_choices, parse_estimates, parse_games, RunConfig};
use bargain_core::{Error, PayoffCurve};
use proptest::collection::vec;
use proptest::prelude::{any, proptest, ProptestConfig};

fn estimates(text: &str) {
    if let Ok(loaded) = parse_estimates(text) {
        assert_eq!(loaded.report.kept + loaded.report.dropped, loaded.report.total);
        assert!(loaded.records.iter().all(|r| r.in_test_box()));
    }
}

fn convert(text: &str) {
    let mapping = ColumnMapping { id: "subject".into(), alpha: "a".into(), beta: "b".into(), kappa: "k".into() };
    if let Ok(out) = convert_estimates(text, &mapping) {
        if let Err(Error::Parse { line, .. }) = parse_estimates(&out) {
            assert!(line > 1, "{out}");
        }
    }
}

fn choices(text: &str) {
    if let Ok(records) = parse_choices(text) {
        assert!(!records.is_empty());
        assert!(records.iter().all(|r| r.action <= 1));
    }
}

fn games(text: &str) {
    if let Ok(games) = parse_games(text) {
        for g in &games {
            assert!(g.affine_utilities(PayoffCurve::ShiftedLog).iter().flatten().all(|c| c.is_finite()));
        }
    }
}

fn config(text: &str) {
    if let Ok(cfg) = RunConfig::from_toml(text) {
        assert!(cfg.setting().is_ok());
        assert_eq!(RunConfig::from_toml(&cfg.to_toml()).ok(), Some(cfg));
    }
}

type Target = (&'static str, fn(&str));

const TARGETS: [Target; 5] = [
    ("parse_estimates_csv", estimates),
    ("convert_estimates_csv", convert),
    ("parse_choices_csv", choices),
    ("parse_games_json", games),
    ("parse_run_config", config),
];

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus")
}

fn seeds(target: &str) -> Vec<String> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir().join(target)).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files.iter().map(|p| std::fs::read_to_string(p).unwrap()).collect()
}

#[test]
fn every_target_has_seeds_and_they_replay() {
    for (target, check) in TARGETS {
        let seeds = seeds(target);
        assert!(seeds.len() >= 2, "{target}");
        for s in &seeds {
            check(s);
        }
    }
    // Valid seeds stay valid.
    assert!(parse_estimates(&seeds("parse_estimates_csv")[3]).is_ok());
    assert!(parse_choices(&seeds("parse_choices_csv")[1]).is_ok());
    assert!(parse_games(&seeds("parse_games_json")[1]).is_ok());
    assert!(RunConfig::from_toml(&seeds("parse_run_config")[1]).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn mutated_seeds_never_panic(target in 0usize..5, seed in any::<usize>(), edits in vec((any::<usize>(), any::<u8>()), 0..6)) {
        let (name, check) = TARGETS[target];
        let seeds = seeds(name);
        let mut bytes = seeds[seed % seeds.len()].clone().into_bytes();
        for (pos, b) in edits {
            if bytes.is_empty() {
                bytes.push(b);
            } else {
                let i = pos % bytes.len();
                bytes[i] = b;
            }
        }
        if let Ok(text) = std::str::from_utf8(&bytes) {
            check(text);
        }
    }
}
