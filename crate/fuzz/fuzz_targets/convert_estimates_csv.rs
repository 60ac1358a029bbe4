#![no_main]

use bargain_core::io::estimates::{convert_estimates, ColumnMapping};
use bargain_core::io::parse_estimates;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let mapping = ColumnMapping { id: "subject".into(), alpha: "a".into(), beta: "b".into(), kappa: "k".into() };
    if let Ok(out) = convert_estimates(text, &mapping) {
        // Converted output is in the native schema, so it must at least
        // get past the header check.
        if let Err(bargain_core::Error::Parse { line, .. }) = parse_estimates(&out) {
            assert!(line > 1);
        }
    }
});
