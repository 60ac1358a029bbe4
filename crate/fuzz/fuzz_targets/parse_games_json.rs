#![no_main]

use bargain_core::io::parse_games;
use bargain_core::PayoffCurve;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(games) = parse_games(text) {
            // Validated games have finite payoffs, so utilities are finite.
            for g in &games {
                assert!(g.affine_utilities(PayoffCurve::ShiftedLog).iter().flatten().all(|c| c.is_finite()));
            }
        }
    }
});
