//! Synthetic choice data for recovery checks.

use rand::Rng;

use super::choice::ChoiceModel;
use super::data::{best_pair, ChoiceRecord, Role};
use super::em::task_rng;
use super::games::{strategy_utilities, BinaryGame};
use crate::curve::PayoffCurve;
use crate::error::{Error, Result};
use crate::preferences::PreferenceParams;

/// Six mini ultimatum games (two decisions each) and six binary dictator
/// choices, 18 decisions in all. The dictator pairs place indifference
/// boundaries close to the two-type profile (0.05, 0.08, 0.25) and
/// (0.28, −0.30, 0.19), so that each type sits in a narrow cell.
pub fn standard_battery() -> Vec<BinaryGame> {
    let mut games = BinaryGame::mini_ultimatum_set();
    let pairs = [
        ([40.0, 60.0], [60.0, 40.0]),
        ([50.0, 25.0], [60.0, 5.0]),
        ([20.0, 55.0], [40.0, 10.0]),
        ([15.0, 40.0], [25.0, 5.0]),
        ([50.0, 30.0], [60.0, 10.0]),
        ([0.0, 45.0], [10.0, 10.0]),
    ];
    for (i, (a, b)) in pairs.into_iter().enumerate() {
        games.push(BinaryGame::dictator(format!("dg_{}", i + 1), a, b).expect("valid allocations"));
    }
    games
}

#[derive(Debug, Clone)]
pub struct SyntheticSample {
    pub records: Vec<ChoiceRecord>,
    /// Generating type of each subject, in subject-id order.
    pub labels: Vec<usize>,
}

/// Type sizes by largest remainder, so that the realized shares are as
/// close to `shares` as `n` allows.
pub fn type_counts(shares: &[f64], n: usize) -> Vec<usize> {
    let raw: Vec<f64> = shares.iter().map(|s| s * n as f64).collect();
    let mut counts: Vec<usize> = raw.iter().map(|r| r.floor() as usize).collect();
    let mut rest: Vec<(f64, usize)> = raw.iter().enumerate().map(|(i, r)| (r - r.floor(), i)).collect();
    rest.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let missing = n - counts.iter().sum::<usize>();
    for &(_, i) in rest.iter().take(missing) {
        counts[i] += 1;
    }
    counts
}

/// Draws every active decision of `n` subjects. Each subject plays the
/// best veil strategy and trembles per decision as `model` prescribes.
pub fn simulate_choices(
    types: &[PreferenceParams],
    shares: &[f64],
    n: usize,
    games: &[BinaryGame],
    curve: PayoffCurve,
    model: ChoiceModel,
    seed: u64,
) -> Result<SyntheticSample> {
    if types.is_empty() || types.len() != shares.len() {
        return Err(Error::domain("need one share per generating type"));
    }
    if shares.iter().any(|s| !(*s >= 0.0)) || (shares.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err(Error::domain("generating shares must be non-negative and sum to 1"));
    }
    for p in types {
        p.validate()?;
    }
    let counts = type_counts(shares, n);
    let labels: Vec<usize> = counts.iter().enumerate().flat_map(|(k, &c)| std::iter::repeat_n(k, c)).collect();
    let width = n.to_string().len();
    let utilities: Vec<Vec<[f64; 4]>> = types.iter().map(|p| games.iter().map(|g| strategy_utilities(p, curve, g)).collect()).collect();
    let mut records = Vec::new();
    for (i, &k) in labels.iter().enumerate() {
        let mut rng = task_rng(seed, i as u64);
        let lambda = types[k].lambda;
        for (g, game) in games.iter().enumerate() {
            let u = &utilities[k][g];
            let roles: &[Role] = if game.b_is_passive() { &[Role::Proposer] } else { &[Role::Proposer, Role::Responder] };
            for &role in roles {
                let (one, zero) = best_pair(u, role, 1);
                let p_one = model.prob(lambda, one, zero);
                let action = usize::from(rng.random::<f64>() < p_one);
                records.push(ChoiceRecord { subject_id: format!("s{i:0width$}"), game_id: game.id.clone(), role, action });
            }
        }
    }
    Ok(SyntheticSample { records, labels })
}
