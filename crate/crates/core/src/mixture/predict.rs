//! Behavior implied by estimated types, and thresholds revealed by the mini
//! ultimatum games.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::data::{ChoiceRecord, Role};
use super::games::BinaryGame;
use crate::curve::PayoffCurve;
use crate::error::Result;
use crate::preferences::{dg_transfer, Endowment, PreferenceParams};
use crate::solver::constrained_threshold;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PredictedBehavior {
    pub dg_transfer: f64,
    /// Minimal acceptable ultimatum offer, assuming everyone offers `w/2`.
    pub ug_threshold: f64,
}

/// Dictator transfer from the full `(α, β, κ)` and ultimatum threshold
/// from `(α, κ)`; `β` cannot enter the threshold because the responder is
/// behind.
pub fn predict_behavior(p: &PreferenceParams, w: Endowment, curve: PayoffCurve) -> Result<PredictedBehavior> {
    p.validate()?;
    curve.validate()?;
    Ok(PredictedBehavior { dg_transfer: dg_transfer(p, curve, w), ug_threshold: constrained_threshold(p.kappa, p.alpha, curve, w)? })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MiniUgResponse {
    /// Responder's share of the unequal split.
    pub share: f64,
    pub rejected: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImplicitThreshold {
    pub threshold: f64,
    /// Some accepted split is less generous than a rejected one.
    pub non_monotone: bool,
}

/// Largest responder share among the rejected unequal splits, 0 if none.
pub fn implicit_rejection_threshold(responses: &[MiniUgResponse]) -> ImplicitThreshold {
    let threshold = responses.iter().filter(|r| r.rejected).map(|r| r.share).fold(0.0, f64::max);
    let min_accepted = responses.iter().filter(|r| !r.rejected).map(|r| r.share).fold(f64::INFINITY, f64::min);
    ImplicitThreshold { threshold, non_monotone: min_accepted < threshold }
}

/// Responder share of the unequal split when `game` has the mini ultimatum
/// shape: equal split or unequal split, with punishment to equal low
/// payoffs.
pub fn mini_ultimatum_share(game: &BinaryGame) -> Option<f64> {
    let [[e0, e1], [split, punish]] = game.payoffs;
    let equal = e0 == e1 && e0[0] == e0[1];
    let flat = punish[0] == punish[1] && punish[0] < split[1];
    (equal && flat && split[0] > split[1]).then_some(split[1])
}

/// Implicit thresholds per subject from responder records of mini ultimatum
/// games. Records of other games are ignored.
pub fn implicit_thresholds(games: &[BinaryGame], records: &[ChoiceRecord]) -> BTreeMap<String, ImplicitThreshold> {
    let shares: BTreeMap<&str, f64> = games.iter().filter_map(|g| mini_ultimatum_share(g).map(|s| (g.id.as_str(), s))).collect();
    let mut per_subject: BTreeMap<String, Vec<MiniUgResponse>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.role == Role::Responder) {
        if let Some(&share) = shares.get(r.game_id.as_str()) {
            per_subject.entry(r.subject_id.clone()).or_default().push(MiniUgResponse { share, rejected: r.action == 1 });
        }
    }
    per_subject.into_iter().map(|(id, rs)| (id, implicit_rejection_threshold(&rs))).collect()
}
