#![no_main]
//! Individual-estimate CSV parser. Accepted input must survive a
//! predictable filter: every kept record lies in the test box.

use bargain_core::io::parse_estimates;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(loaded) = parse_estimates(text) {
            assert_eq!(loaded.report.kept + loaded.report.dropped, loaded.report.total);
            assert!(loaded.records.iter().all(|r| r.in_test_box()));
        }
    }
});
