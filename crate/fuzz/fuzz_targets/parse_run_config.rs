#![no_main]

use bargain_core::io::RunConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(cfg) = RunConfig::from_toml(text) {
            assert!(cfg.setting().is_ok());
            assert_eq!(RunConfig::from_toml(&cfg.to_toml()).ok(), Some(cfg));
        }
    }
});
