//! Expectation-maximization for a finite mixture of preference types.
//!
//! Under the constant-error model a type's likelihood is piecewise constant
//! in `(α, β, κ)`: it depends on them only through which action each
//! decision favours. Given that pattern the optimal `λ` is closed form, so
//! the M-step searches the three preference parameters with a lattice scan
//! followed by a compass search, then moves to the middle of the flat cell
//! it landed in. A candidate replaces the current parameters only when the
//! expected complete-data log-likelihood does not drop, which keeps every
//! iteration an ascent step.

use std::collections::{HashSet, VecDeque};

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::choice::ChoiceModel;
use super::criteria::{entropy, icl};
use super::data::{ChoiceData, KindEvaluator};
use crate::curve::PayoffCurve;
use crate::error::{Error, Result};
use crate::numeric;
use crate::preferences::PreferenceParams;

pub const ALPHA_RANGE: (f64, f64) = (-2.0, 2.0);
pub const BETA_RANGE: (f64, f64) = (-2.0, 2.0);
pub const KAPPA_RANGE: (f64, f64) = (0.0, 1.0);
pub const LAMBDA_RANGE: (f64, f64) = (0.01, 0.99);

const RANGES: [(f64, f64); 3] = [ALPHA_RANGE, BETA_RANGE, KAPPA_RANGE];
const LATTICE_STEPS: [f64; 3] = [0.2, 0.2, 0.1];
const COMPASS_START: f64 = 0.2;
const COMPASS_MIN: f64 = 1.0 / 256.0;
const CENTROID_STEPS: [f64; 3] = [0.02, 0.02, 0.01];
const CENTROID_CAP: usize = 200_000;
const LATTICE_SEEDS: usize = 3;

/// Per-task generator: stream `stream` of the ChaCha8 sequence for `seed`.
pub fn task_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmConfig {
    pub k: usize,
    pub restarts: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
    #[serde(default)]
    pub model: ChoiceModel,
}

impl Default for EmConfig {
    fn default() -> Self {
        Self { k: 1, restarts: 5, tol: 1e-6, max_iter: 200, seed: 0, model: ChoiceModel::ConstantError }
    }
}

impl EmConfig {
    pub fn with_k(k: usize) -> Self {
        Self { k, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::domain("number of types must be at least 1"));
        }
        if self.restarts == 0 {
            return Err(Error::domain("at least one EM restart is required"));
        }
        if !(self.tol > 0.0) || self.max_iter == 0 {
            return Err(Error::domain("EM tolerance and iteration cap must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureFit {
    pub k: usize,
    pub model: ChoiceModel,
    /// Types ordered by decreasing share.
    pub types: Vec<PreferenceParams>,
    pub shares: Vec<f64>,
    pub subject_ids: Vec<String>,
    /// Row `i` holds subject `i`'s posterior type probabilities.
    pub posteriors: Vec<Vec<f64>>,
    pub log_likelihood: f64,
    pub entropy: f64,
    pub icl: f64,
    pub n_subjects: usize,
    /// Log-likelihood after every E-step.
    pub trace: Vec<f64>,
    pub converged: bool,
    /// Types whose share fell below `1/(10N)`.
    pub degenerate_types: Vec<usize>,
    /// Index of the winning random start.
    pub restart: usize,
}

impl MixtureFit {
    pub fn nec(&self, lnl_one: f64) -> Result<f64> {
        super::criteria::nec(self.entropy, self.log_likelihood, lnl_one)
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degenerate_types.is_empty()
    }
}

/// Weighted M-step objective of one type.
struct TypeObjective<'a> {
    eval: &'a KindEvaluator,
    weights: Vec<f64>,
    model: ChoiceModel,
}

fn params_of(theta: [f64; 3], lambda: f64) -> PreferenceParams {
    PreferenceParams { alpha: theta[0], beta: theta[1], kappa: theta[2], lambda }
}

impl TypeObjective<'_> {
    /// Best `λ` for `theta` and the objective value there.
    fn value(&self, theta: [f64; 3], scratch: &mut Vec<(f64, f64)>) -> (f64, f64) {
        self.eval.utility_pairs(&params_of(theta, 0.0), scratch);
        match self.model {
            ChoiceModel::ConstantError => {
                let (mut right, mut wrong, mut tie) = (0.0, 0.0, 0.0);
                for (&(c, o), &w) in scratch.iter().zip(&self.weights) {
                    if c > o {
                        right += w;
                    } else if c < o {
                        wrong += w;
                    } else {
                        tie += w;
                    }
                }
                let lambda = if right + wrong > 0.0 { 2.0 * wrong / (right + wrong) } else { 0.5 }.clamp(LAMBDA_RANGE.0, LAMBDA_RANGE.1);
                let q = xlny(right, 1.0 - 0.5 * lambda) + xlny(wrong, 0.5 * lambda) + tie * 0.5f64.ln();
                (q, lambda)
            }
            ChoiceModel::Logit => {
                let q = |l: f64| -> f64 {
                    scratch.iter().zip(&self.weights).map(|(&(c, o), &w)| xlny(w, super::choice::logit_prob(l, c, o))).sum()
                };
                let (l, v) = numeric::golden_max(q, LAMBDA_RANGE.0, LAMBDA_RANGE.1, 1e-6);
                (v, l)
            }
        }
    }
}

/// `x ln y` with `0 ln 0 = 0`.
fn xlny(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.ln()
    }
}

fn clamp_theta(mut t: [f64; 3]) -> [f64; 3] {
    for (x, (lo, hi)) in t.iter_mut().zip(RANGES) {
        *x = x.clamp(lo, hi);
    }
    t
}

fn lattice() -> Vec<[f64; 3]> {
    let axis = |d: usize| {
        let (lo, hi) = RANGES[d];
        let n = ((hi - lo) / LATTICE_STEPS[d]).round() as usize;
        (0..=n).map(move |i| lo + i as f64 * LATTICE_STEPS[d]).collect::<Vec<_>>()
    };
    let (a, b, k) = (axis(0), axis(1), axis(2));
    let mut out = Vec::with_capacity(a.len() * b.len() * k.len());
    for &x in &a {
        for &y in &b {
            for &z in &k {
                out.push([x, y, z]);
            }
        }
    }
    out
}

/// Greedy coordinate moves that shrink the step when nothing improves.
fn compass(obj: &TypeObjective, start: [f64; 3], scratch: &mut Vec<(f64, f64)>) -> ([f64; 3], f64) {
    let mut x = start;
    let mut fx = obj.value(x, scratch).0;
    let mut step = COMPASS_START;
    while step >= COMPASS_MIN {
        let mut moved = false;
        for d in 0..3 {
            let scale = if d == 2 { 0.5 } else { 1.0 };
            for sign in [1.0, -1.0] {
                let mut y = x;
                y[d] += sign * step * scale;
                let y = clamp_theta(y);
                if y == x {
                    continue;
                }
                let fy = obj.value(y, scratch).0;
                if fy > fx {
                    x = y;
                    fx = fy;
                    moved = true;
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    (x, fx)
}

/// Which action each weighted decision kind favours at `theta`.
fn pattern(obj: &TypeObjective, theta: [f64; 3], scratch: &mut Vec<(f64, f64)>) -> Vec<i8> {
    obj.eval.utility_pairs(&params_of(theta, 0.0), scratch);
    scratch
        .iter()
        .zip(&obj.weights)
        .filter(|(_, &w)| w > 0.0)
        .map(|(&(c, o), _)| {
            if c > o {
                1
            } else if c < o {
                -1
            } else {
                0
            }
        })
        .collect()
}

/// Centroid of the lattice-connected set of parameters sharing the choice
/// pattern of `x`, where the constant-error objective is flat. Falls back to
/// the member closest to the centroid when the set is not convex enough to
/// contain it.
fn flat_set_centroid(obj: &TypeObjective, x: [f64; 3], scratch: &mut Vec<(f64, f64)>) -> [f64; 3] {
    let to_point = |c: [i64; 3]| -> [f64; 3] { std::array::from_fn(|d| RANGES[d].0 + c[d] as f64 * CENTROID_STEPS[d]) };
    let cells: [i64; 3] = std::array::from_fn(|d| ((RANGES[d].1 - RANGES[d].0) / CENTROID_STEPS[d]).round() as i64);
    let target = pattern(obj, x, scratch);
    let snapped: [i64; 3] = std::array::from_fn(|d| ((x[d] - RANGES[d].0) / CENTROID_STEPS[d]).round() as i64);
    if pattern(obj, to_point(snapped), scratch) != target {
        return x;
    }
    let mut seen = HashSet::from([snapped]);
    let mut queue = VecDeque::from([snapped]);
    let mut members = Vec::new();
    while let Some(c) = queue.pop_front() {
        members.push(to_point(c));
        if members.len() >= CENTROID_CAP {
            break;
        }
        for d in 0..3 {
            for step in [-1, 1] {
                let mut n = c;
                n[d] += step;
                if n[d] < 0 || n[d] > cells[d] || !seen.insert(n) {
                    continue;
                }
                if pattern(obj, to_point(n), scratch) == target {
                    queue.push_back(n);
                }
            }
        }
    }
    let m = members.len() as f64;
    let centroid: [f64; 3] = std::array::from_fn(|d| members.iter().map(|p| p[d]).sum::<f64>() / m);
    if pattern(obj, centroid, scratch) == target {
        return centroid;
    }
    let d2 = |p: &[f64; 3]| (0..3).map(|d| (p[d] - centroid[d]).powi(2)).sum::<f64>();
    *members.iter().min_by(|a, b| d2(a).total_cmp(&d2(b))).expect("non-empty")
}

/// One M-step for one type. Returns the new parameters, never worse than
/// `current` in the weighted objective.
fn maximize_type(obj: &TypeObjective, current: Option<PreferenceParams>, grid: &[[f64; 3]]) -> PreferenceParams {
    let mut scratch = Vec::with_capacity(obj.eval.len());
    let mut scored: Vec<(f64, usize)> = grid.iter().enumerate().map(|(i, t)| (obj.value(*t, &mut scratch).0, i)).collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut starts: Vec<[f64; 3]> = scored.iter().take(LATTICE_SEEDS).map(|s| grid[s.1]).collect();
    let incumbent = current.map(|p| [p.alpha, p.beta, p.kappa]);
    if let Some(t) = incumbent {
        starts.insert(0, t);
    }
    let mut best: Option<([f64; 3], f64)> = None;
    for s in starts {
        let (x, fx) = compass(obj, s, &mut scratch);
        if best.is_none_or(|b| fx > b.1) {
            best = Some((x, fx));
        }
    }
    let (x, _) = best.expect("at least one start");
    let (fx, lambda) = obj.value(x, &mut scratch);
    if let Some(t) = incumbent {
        // The incumbent at its own best λ is never worse than at the old λ.
        let (f_old, l_old) = obj.value(t, &mut scratch);
        if f_old > fx {
            return params_of(t, l_old);
        }
    }
    params_of(x, lambda)
}

struct State {
    types: Vec<PreferenceParams>,
    shares: Vec<f64>,
}

/// Subject-by-type log-likelihoods.
fn subject_loglik(data: &ChoiceData, eval: &KindEvaluator, model: ChoiceModel, types: &[PreferenceParams]) -> Vec<Vec<f64>> {
    let lps: Vec<Vec<f64>> = types.iter().map(|p| eval.log_probs(model, p)).collect();
    data.subjects().iter().map(|s| lps.iter().map(|lp| s.counts.iter().map(|&(kd, n)| n as f64 * lp[kd]).sum()).collect()).collect()
}

/// Posteriors and total log-likelihood.
fn e_step(ll: &[Vec<f64>], shares: &[f64]) -> (Vec<Vec<f64>>, f64) {
    let mut total = 0.0;
    let post = ll
        .iter()
        .map(|row| {
            let terms: Vec<f64> = row.iter().zip(shares).map(|(l, &pi)| if pi > 0.0 { l + pi.ln() } else { f64::NEG_INFINITY }).collect();
            let m = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let z: f64 = terms.iter().map(|t| (t - m).exp()).sum();
            total += m + z.ln();
            let mut r: Vec<f64> = terms.iter().map(|t| (t - m).exp() / z).collect();
            let s: f64 = r.iter().sum();
            r.iter_mut().for_each(|x| *x /= s);
            r
        })
        .collect();
    (post, total)
}

fn m_step(
    data: &ChoiceData,
    eval: &KindEvaluator,
    model: ChoiceModel,
    post: &[Vec<f64>],
    current: Option<&State>,
    grid: &[[f64; 3]],
) -> State {
    let k = post[0].len();
    let n = post.len() as f64;
    let shares: Vec<f64> = (0..k).map(|j| post.iter().map(|r| r[j]).sum::<f64>() / n).collect();
    let types = (0..k)
        .map(|j| {
            let obj = TypeObjective { eval, weights: kind_weights(data, eval, post, j), model };
            maximize_type(&obj, current.map(|c| c.types[j]), grid)
        })
        .collect();
    State { types, shares }
}

/// Posterior-weighted count of every decision kind for type `j`.
fn kind_weights(data: &ChoiceData, eval: &KindEvaluator, post: &[Vec<f64>], j: usize) -> Vec<f64> {
    let mut weights = vec![0.0; eval.len()];
    for (s, r) in data.subjects().iter().zip(post) {
        for &(kd, c) in &s.counts {
            weights[kd] += r[j] * c as f64;
        }
    }
    weights
}

/// Replaces each type by the centroid of its flat set. The choice pattern
/// and hence the likelihood are unchanged; the move is undone otherwise.
fn recenter(data: &ChoiceData, eval: &KindEvaluator, model: ChoiceModel, run: &mut RunResult) {
    if model != ChoiceModel::ConstantError {
        return;
    }
    let mut scratch = Vec::with_capacity(eval.len());
    let types: Vec<PreferenceParams> = run
        .state
        .types
        .iter()
        .enumerate()
        .map(|(j, p)| {
            let obj = TypeObjective { eval, weights: kind_weights(data, eval, &run.post, j), model };
            let c = flat_set_centroid(&obj, [p.alpha, p.beta, p.kappa], &mut scratch);
            params_of(c, p.lambda)
        })
        .collect();
    let ll = subject_loglik(data, eval, model, &types);
    let (post, lnl) = e_step(&ll, &run.state.shares);
    if lnl >= run.lnl - 1e-9 * (1.0 + run.lnl.abs()) {
        run.state.types = types;
        run.post = post;
        run.lnl = lnl;
    }
}

/// Each subject's share of action 1 per `(game, role)` slot, 0.5 where the
/// slot was not played.
fn choice_profiles(data: &ChoiceData) -> Vec<Vec<f64>> {
    let mut slots: Vec<(usize, usize)> = data.kinds().iter().map(|k| (k.game, k.role as usize)).collect();
    slots.sort_unstable();
    slots.dedup();
    data.subjects()
        .iter()
        .map(|s| {
            let mut ones = vec![0.0; slots.len()];
            let mut total = vec![0.0; slots.len()];
            for &(kd, c) in &s.counts {
                let k = data.kinds()[kd];
                let i = slots.binary_search(&(k.game, k.role as usize)).expect("slot of a known kind");
                total[i] += c as f64;
                ones[i] += (k.action * c as usize) as f64;
            }
            ones.iter().zip(&total).map(|(o, t)| if *t > 0.0 { o / t } else { 0.5 }).collect()
        })
        .collect()
}

/// Hard assignment to `k` seeds picked k-means++ style on choice profiles.
/// Balanced random splits tend to produce near-identical halves from which
/// EM cannot separate the types.
fn initial_posteriors(profiles: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let n = profiles.len();
    let dist = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>();
    let mut seeds = vec![rng.random_range(0..n)];
    let mut nearest: Vec<f64> = profiles.iter().map(|p| dist(p, &profiles[seeds[0]])).collect();
    while seeds.len() < k {
        let weights: Vec<f64> = nearest.iter().map(|d| d * d).collect();
        let total: f64 = weights.iter().sum();
        let next = if total > 0.0 {
            let mut u = rng.random::<f64>() * total;
            weights
                .iter()
                .position(|&w| {
                    u -= w;
                    u < 0.0 && w > 0.0
                })
                .unwrap_or_else(|| weights.iter().rposition(|&w| w > 0.0).expect("positive weight"))
        } else {
            let free: Vec<usize> = (0..n).filter(|i| !seeds.contains(i)).collect();
            *free.choose(rng).expect("k never exceeds n")
        };
        seeds.push(next);
        for (d, p) in nearest.iter_mut().zip(profiles) {
            *d = d.min(dist(p, &profiles[next]));
        }
    }
    let mut post = vec![vec![0.0; k]; n];
    for (i, p) in profiles.iter().enumerate() {
        let j = seeds.iter().position(|&s| s == i).unwrap_or_else(|| {
            let d: Vec<f64> = seeds.iter().map(|&s| dist(p, &profiles[s])).collect();
            (0..k).min_by(|&a, &b| d[a].total_cmp(&d[b]).then(a.cmp(&b))).expect("k >= 1")
        });
        post[i][j] = 1.0;
    }
    post
}

struct RunResult {
    state: State,
    post: Vec<Vec<f64>>,
    lnl: f64,
    trace: Vec<f64>,
    converged: bool,
}

fn run_once(data: &ChoiceData, eval: &KindEvaluator, cfg: &EmConfig, restart: usize, grid: &[[f64; 3]]) -> Result<RunResult> {
    let mut rng = task_rng(cfg.seed, restart as u64);
    let post = initial_posteriors(&choice_profiles(data), cfg.k, &mut rng);
    let state = m_step(data, eval, cfg.model, &post, None, grid);
    iterate(data, eval, cfg, state, grid)
}

fn iterate(data: &ChoiceData, eval: &KindEvaluator, cfg: &EmConfig, mut state: State, grid: &[[f64; 3]]) -> Result<RunResult> {
    let mut post = Vec::new();
    let mut trace = Vec::new();
    let mut converged = false;
    let mut lnl = f64::NEG_INFINITY;
    for _ in 0..cfg.max_iter {
        let ll = subject_loglik(data, eval, cfg.model, &state.types);
        let (p, l) = e_step(&ll, &state.shares);
        if let Some(&prev) = trace.last() {
            if l < prev - 1e-9 * (1.0 + f64::abs(prev)) {
                return Err(Error::Numeric(format!("EM ascent violated: log-likelihood fell from {prev} to {l}")));
            }
        }
        trace.push(l);
        post = p;
        let delta = l - lnl;
        lnl = l;
        if delta.abs() < cfg.tol {
            converged = true;
            break;
        }
        state = m_step(data, eval, cfg.model, &post, Some(&state), grid);
    }
    Ok(RunResult { state, post, lnl, trace, converged })
}

/// Log-likelihood of every subject's decisions under a single type.
pub fn single_type_loglik(data: &ChoiceData, curve: PayoffCurve, model: ChoiceModel, p: &PreferenceParams) -> f64 {
    let eval = data.evaluator(curve);
    subject_loglik(data, &eval, model, std::slice::from_ref(p)).iter().map(|r| r[0]).sum()
}

/// Log-likelihood of the data under a given mixture.
pub fn mixture_loglik(
    data: &ChoiceData,
    curve: PayoffCurve,
    model: ChoiceModel,
    types: &[PreferenceParams],
    shares: &[f64],
) -> Result<f64> {
    if types.is_empty() || types.len() != shares.len() {
        return Err(Error::domain("need one share per type"));
    }
    let eval = data.evaluator(curve);
    Ok(e_step(&subject_loglik(data, &eval, model, types), shares).1)
}

/// Fits a `cfg.k`-type mixture and returns the best of `cfg.restarts`
/// random starts. Restarts run in parallel with independent streams.
pub fn em_fit(data: &ChoiceData, curve: PayoffCurve, cfg: &EmConfig) -> Result<MixtureFit> {
    check_fit(data, curve, cfg)?;
    let eval = data.evaluator(curve);
    let grid = lattice();
    let runs: Vec<RunResult> = (0..cfg.restarts).into_par_iter().map(|r| run_once(data, &eval, cfg, r, &grid)).collect::<Result<_>>()?;
    let (restart, best) = runs.into_iter().enumerate().reduce(|a, b| if b.1.lnl > a.1.lnl { b } else { a }).expect("at least one restart");
    Ok(finish(data, &eval, cfg, best, restart))
}

/// Runs EM once from the given types and shares instead of random starts.
/// The reported restart index is `cfg.restarts`.
pub fn em_fit_from(
    data: &ChoiceData,
    curve: PayoffCurve,
    cfg: &EmConfig,
    types: &[PreferenceParams],
    shares: &[f64],
) -> Result<MixtureFit> {
    check_fit(data, curve, cfg)?;
    if types.len() != cfg.k || shares.len() != cfg.k {
        return Err(Error::domain(format!("warm start needs {} types and shares", cfg.k)));
    }
    for p in types {
        p.validate()?;
    }
    if shares.iter().any(|s| !(*s > 0.0)) || (shares.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err(Error::domain("warm-start shares must be positive and sum to 1"));
    }
    let eval = data.evaluator(curve);
    let state = State { types: types.to_vec(), shares: shares.to_vec() };
    let run = iterate(data, &eval, cfg, state, &lattice())?;
    Ok(finish(data, &eval, cfg, run, cfg.restarts))
}

fn check_fit(data: &ChoiceData, curve: PayoffCurve, cfg: &EmConfig) -> Result<()> {
    cfg.validate()?;
    curve.validate()?;
    if data.n_subjects() < cfg.k {
        return Err(Error::domain(format!("{} subjects cannot identify {} types", data.n_subjects(), cfg.k)));
    }
    Ok(())
}

fn finish(data: &ChoiceData, eval: &KindEvaluator, cfg: &EmConfig, mut best: RunResult, restart: usize) -> MixtureFit {
    recenter(data, eval, cfg.model, &mut best);
    let n = data.n_subjects();
    let mut order: Vec<usize> = (0..cfg.k).collect();
    order.sort_by(|&a, &b| best.state.shares[b].total_cmp(&best.state.shares[a]).then(a.cmp(&b)));
    let types: Vec<PreferenceParams> = order.iter().map(|&j| best.state.types[j]).collect();
    let shares: Vec<f64> = order.iter().map(|&j| best.state.shares[j]).collect();
    let posteriors: Vec<Vec<f64>> = best.post.iter().map(|r| order.iter().map(|&j| r[j]).collect()).collect();
    let en = entropy(&posteriors);
    let floor = 1.0 / (10.0 * n as f64);
    let degenerate_types = shares.iter().enumerate().filter(|(_, &s)| s < floor).map(|(j, _)| j).collect();
    MixtureFit {
        k: cfg.k,
        model: cfg.model,
        types,
        shares,
        subject_ids: data.subjects().iter().map(|s| s.id.clone()).collect(),
        posteriors,
        log_likelihood: best.lnl,
        entropy: en,
        icl: icl(best.lnl, cfg.k, n, en),
        n_subjects: n,
        trace: best.trace,
        converged: best.converged,
        degenerate_types,
        restart,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixture::data::{ChoiceRecord, Role};
    use crate::mixture::games::BinaryGame;

    fn selfish_data() -> ChoiceData {
        let games = BinaryGame::mini_ultimatum_set();
        let mut recs = Vec::new();
        for s in 0..10 {
            for g in &games {
                recs.push(ChoiceRecord { subject_id: format!("s{s}"), game_id: g.id.clone(), role: Role::Proposer, action: 0 });
                recs.push(ChoiceRecord { subject_id: format!("s{s}"), game_id: g.id.clone(), role: Role::Responder, action: 0 });
            }
        }
        ChoiceData::new(games, &recs).unwrap()
    }

    #[test]
    fn constant_error_lambda_is_closed_form() {
        let data = selfish_data();
        let eval = data.evaluator(PayoffCurve::ShiftedLog);
        let mut weights = vec![0.0; eval.len()];
        weights[0] = 10.0;
        let obj = TypeObjective { eval: &eval, weights, model: ChoiceModel::ConstantError };
        let mut scratch = Vec::new();
        let (q, l) = obj.value([0.0, 0.0, 0.0], &mut scratch);
        assert_eq!(l, LAMBDA_RANGE.0);
        assert!((q - 10.0 * (1.0 - 0.005f64).ln()).abs() < 1e-12);
    }

    #[test]
    fn single_type_fit_is_monotone_and_consistent() {
        let data = selfish_data();
        let cfg = EmConfig { restarts: 2, ..EmConfig::with_k(1) };
        let fit = em_fit(&data, PayoffCurve::ShiftedLog, &cfg).unwrap();
        assert!(fit.trace.windows(2).all(|w| w[1] >= w[0] - 1e-9));
        assert_eq!(fit.entropy, 0.0);
        assert_eq!(fit.shares, vec![1.0]);
        assert!(fit.converged);
        assert_eq!(fit.types[0].lambda, LAMBDA_RANGE.0);
    }

    #[test]
    fn rejects_bad_config() {
        let data = selfish_data();
        assert!(em_fit(&data, PayoffCurve::ShiftedLog, &EmConfig::with_k(0)).is_err());
        assert!(em_fit(&data, PayoffCurve::ShiftedLog, &EmConfig::with_k(11)).is_err());
    }

    #[test]
    fn e_step_rows_sum_to_one() {
        let ll = vec![vec![-3.0, -1.0, -700.0], vec![-2.0, -2.0, -2.0]];
        let (post, total) = e_step(&ll, &[0.2, 0.5, 0.3]);
        for r in &post {
            assert!((r.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        let direct = (0.2 * (-3f64).exp() + 0.5 * (-1f64).exp() + 0.3 * (-700f64).exp()).ln() + (-2.0f64);
        assert!((total - direct).abs() < 1e-12);
    }

    #[test]
    fn streams_are_independent_and_reproducible() {
        use rand::Rng;
        let a: u64 = task_rng(7, 0).random();
        let b: u64 = task_rng(7, 1).random();
        assert_ne!(a, b);
        assert_eq!(a, task_rng(7, 0).random::<u64>());
    }
}
