#![no_main]

use bargain_core::io::parse_choices;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(records) = parse_choices(text) {
            assert!(!records.is_empty());
            assert!(records.iter().all(|r| r.action <= 1));
        }
    }
});
