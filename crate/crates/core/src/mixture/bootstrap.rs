//! Nonparametric bootstrap of a mixture fit over subjects.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::data::ChoiceData;
use super::em::{em_fit_from, task_rng, EmConfig, MixtureFit};
use crate::curve::PayoffCurve;
use crate::error::{Error, Result};
use crate::preferences::PreferenceParams;

/// Share of replicates with conflicting labels above which a warning is
/// attached.
pub const LABEL_WARNING_RATE: f64 = 0.10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapSe {
    pub replicates: usize,
    /// Standard errors of `(α, β, κ, λ)` per type of the reference fit.
    pub params: Vec<[f64; 4]>,
    pub shares: Vec<f64>,
    /// Replicates whose greedy alignment disagreed with nearest-neighbor
    /// labels.
    pub unresolved: usize,
    pub warning: Option<String>,
}

fn as_vec(p: &PreferenceParams) -> [f64; 4] {
    [p.alpha, p.beta, p.kappa, p.lambda]
}

fn dist(a: &PreferenceParams, b: &PreferenceParams) -> f64 {
    as_vec(a).iter().zip(as_vec(b)).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Greedy nearest-pair matching of replicate types onto reference types.
/// Returns `perm[j]` = replicate type matched to reference type `j`, and
/// whether every match is also each replicate type's nearest reference.
pub fn align(reference: &[PreferenceParams], replicate: &[PreferenceParams]) -> (Vec<usize>, bool) {
    let k = reference.len();
    let mut pairs: Vec<(f64, usize, usize)> =
        (0..k).flat_map(|j| (0..k).map(move |i| (j, i))).map(|(j, i)| (dist(&reference[j], &replicate[i]), j, i)).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut perm = vec![usize::MAX; k];
    let mut used = vec![false; k];
    for (_, j, i) in pairs {
        if perm[j] == usize::MAX && !used[i] {
            perm[j] = i;
            used[i] = true;
        }
    }
    let consistent = perm
        .iter()
        .enumerate()
        .all(|(j, &i)| (0..k).all(|other| other == j || dist(&reference[other], &replicate[i]) > dist(&reference[j], &replicate[i])));
    (perm, consistent)
}

fn sample_sd(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    (xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0)).sqrt()
}

/// Resamples subjects with replacement `replicates` times, refits, aligns
/// the types to `reference` and reports standard deviations. Each refit
/// starts from the reference estimates; random starts would let replicates
/// hop between neighboring flat cells of nearly equal likelihood.
pub fn bootstrap_se(
    data: &ChoiceData,
    curve: PayoffCurve,
    cfg: &EmConfig,
    reference: &MixtureFit,
    replicates: usize,
    seed: u64,
) -> Result<BootstrapSe> {
    if replicates < 2 {
        return Err(Error::domain("bootstrap needs at least two replicates"));
    }
    if reference.k != cfg.k {
        return Err(Error::domain("reference fit and configuration disagree on the number of types"));
    }
    let n = data.n_subjects();
    let fits: Vec<MixtureFit> = (0..replicates)
        .into_par_iter()
        .map(|b| {
            let mut rng = task_rng(seed, b as u64);
            let idx: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
            em_fit_from(&data.resample(&idx), curve, cfg, &reference.types, &reference.shares)
        })
        .collect::<Result<_>>()?;
    let k = cfg.k;
    let mut draws = vec![vec![[0.0; 5]; fits.len()]; k];
    let mut unresolved = 0;
    for (b, fit) in fits.iter().enumerate() {
        let (perm, consistent) = align(&reference.types, &fit.types);
        if !consistent {
            unresolved += 1;
        }
        for (j, &i) in perm.iter().enumerate() {
            let [a, be, ka, la] = as_vec(&fit.types[i]);
            draws[j][b] = [a, be, ka, la, fit.shares[i]];
        }
    }
    let column = |j: usize, c: usize| sample_sd(&draws[j].iter().map(|d| d[c]).collect::<Vec<_>>());
    let params = (0..k).map(|j| [column(j, 0), column(j, 1), column(j, 2), column(j, 3)]).collect();
    let shares = (0..k).map(|j| column(j, 4)).collect();
    let warning = (unresolved as f64 > LABEL_WARNING_RATE * replicates as f64)
        .then(|| format!("type labels conflicted in {unresolved} of {replicates} bootstrap replicates"));
    Ok(BootstrapSe { replicates, params, shares, unresolved, warning })
}
