//! Deliberately naive cross-checks for the analytic solvers: exhaustive grid
//! maximization with its own quadrature, and finite-difference gradients.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::beliefs::{BeliefDistribution, BeliefKind};
use crate::curve::PayoffCurve;
use crate::error::{Error, Result};
use crate::mixture::em::task_rng;
use crate::preferences::{eval_expected_utility, Endowment, PreferenceParams, Strategy};
use crate::solver::UgSetting;

const SIMPSON_PANELS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridDomain {
    /// All `(x1, x2) ∈ [0, w]²`.
    Rectangle,
    /// Symmetric strategies `(y, y)` only.
    Diagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub step: f64,
    pub domain: GridDomain,
}

impl GridSpec {
    pub fn rectangle(step: f64) -> Self {
        Self { step, domain: GridDomain::Rectangle }
    }

    pub fn diagonal(step: f64) -> Self {
        Self { step, domain: GridDomain::Diagonal }
    }

    /// Grid points on `[0, w]`, the last one pinned to `w`.
    pub fn points(&self, w: Endowment) -> Result<Vec<f64>> {
        if !(self.step > 0.0 && self.step <= w.value()) {
            return Err(Error::domain(format!("grid step must lie in (0, w], got {}", self.step)));
        }
        let n = (w.value() / self.step).round().max(1.0) as usize;
        Ok((0..=n).map(|j| if j == n { w.value() } else { j as f64 * self.step }).collect())
    }
}

fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    if b <= a {
        return 0.0;
    }
    let n = panels + panels % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let x = a + i as f64 * h;
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
    }
    s * h / 3.0
}

/// `∫_{[x, w/2]} h dF` for every grid point `x`, accumulated cell by cell.
fn tail_integrals<H: Fn(f64) -> f64 + Sync>(h: H, belief: &BeliefDistribution, xs: &[f64]) -> Vec<f64> {
    let half = belief.half();
    match belief.kind() {
        BeliefKind::AlwaysAccept => xs.iter().map(|&x| if x <= 0.0 { h(0.0) } else { 0.0 }).collect(),
        BeliefKind::Empirical { samples, .. } => {
            let n = samples.len() as f64;
            xs.iter().map(|&x| samples.iter().filter(|s| **s >= x).map(|s| h(*s)).sum::<f64>() / n).collect()
        }
        _ => {
            let cells: Vec<f64> =
                xs.par_windows(2).map(|c| simpson(|y| h(y) * belief.pdf(y), c[0].min(half), c[1].min(half), SIMPSON_PANELS)).collect();
            let mut out = vec![0.0; xs.len()];
            for j in (0..cells.len()).rev() {
                out[j] = out[j + 1] + cells[j];
            }
            out
        }
    }
}

/// Expected utility assembled from the three terms with composite Simpson
/// quadrature of step `step` for the responder integral.
pub fn riemann_expected_utility(p: &PreferenceParams, setting: &UgSetting, s: Strategy, step: f64) -> f64 {
    let curve = setting.curve();
    let w = setting.endowment().value();
    let half = 0.5 * w;
    let k = p.kappa;
    let a = p.alpha;
    let proposer = (1.0 - k) * curve.eval(w - s.x1) * setting.thresholds().cdf_unchecked(s.x1);
    let h = |y: f64| (1.0 - k + a) * curve.eval(y) - a * curve.eval(w - y);
    let offers = setting.offers();
    let responder = if offers.is_continuous() {
        let panels = (((half - s.x2).max(0.0) / step).ceil() as usize).max(2);
        simpson(|y| h(y) * offers.pdf(y), s.x2.min(half), half, panels)
    } else {
        tail_integrals(h, offers, &[s.x2])[0]
    };
    let universal = if s.x1 >= s.x2 { k * (curve.eval(w - s.x1) + curve.eval(s.x1)) } else { 0.0 };
    proposer + responder + universal
}

/// Exhaustive grid argmax of the ultimatum utility. Ties go to the lowest
/// `x1`, then the lowest `x2`.
pub fn brute_force_ug(p: &PreferenceParams, setting: &UgSetting, grid: GridSpec) -> Result<(Strategy, f64)> {
    let w = setting.endowment();
    let wv = w.value();
    let xs = grid.points(w)?;
    let curve = setting.curve();
    let (k, a) = (p.kappa, p.alpha);
    let prop: Vec<f64> = xs.iter().map(|&x| (1.0 - k) * curve.eval(wv - x) * setting.thresholds().cdf_unchecked(x)).collect();
    let tail = tail_integrals(|y| (1.0 - k + a) * curve.eval(y) - a * curve.eval(wv - y), setting.offers(), &xs);
    let univ: Vec<f64> = xs.iter().map(|&x| k * (curve.eval(wv - x) + curve.eval(x))).collect();
    match grid.domain {
        GridDomain::Diagonal => {
            let mut best = (0, f64::NEG_INFINITY);
            for j in 0..xs.len() {
                let u = prop[j] + tail[j] + univ[j];
                if u > best.1 {
                    best = (j, u);
                }
            }
            Ok((Strategy::new(xs[best.0], xs[best.0]), best.1))
        }
        GridDomain::Rectangle => {
            let rows: Vec<(usize, f64)> = (0..xs.len())
                .into_par_iter()
                .map(|i| {
                    let mut best = (0, f64::NEG_INFINITY);
                    for j in 0..xs.len() {
                        let u = prop[i] + tail[j] + if xs[i] >= xs[j] { univ[i] } else { 0.0 };
                        if u > best.1 {
                            best = (j, u);
                        }
                    }
                    best
                })
                .collect();
            let mut best = (0, 0, f64::NEG_INFINITY);
            for (i, &(j, u)) in rows.iter().enumerate() {
                if u > best.2 {
                    best = (i, j, u);
                }
            }
            Ok((Strategy::new(xs[best.0], xs[best.1]), best.2))
        }
    }
}

/// One-dimensional scan of the dictator objective over `[0, w]`.
pub fn brute_force_dg(p: &PreferenceParams, curve: PayoffCurve, w: Endowment, step: f64) -> Result<(f64, f64)> {
    let wv = w.value();
    let xs = GridSpec::rectangle(step).points(w)?;
    let objective = |x: f64| {
        let (mine, theirs) = (curve.eval(wv - x), curve.eval(x));
        let behind = (theirs - mine).max(0.0);
        let ahead = (mine - theirs).max(0.0);
        0.5 * ((1.0 - p.kappa) * mine - p.alpha * behind - p.beta * ahead) + 0.5 * p.kappa * (mine + theirs)
    };
    let mut best = (0.0, f64::NEG_INFINITY);
    for x in xs {
        let v = objective(x);
        if v > best.1 {
            best = (x, v);
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FocCheck {
    pub finite_difference: [f64; 2],
    pub analytic: [f64; 2],
}

impl FocCheck {
    /// Finite difference minus analytic gradient, per component.
    pub fn residual(&self) -> [f64; 2] {
        [self.finite_difference[0] - self.analytic[0], self.finite_difference[1] - self.analytic[1]]
    }
}

/// Central finite-difference gradient (step `1e-5·w`) of the expected
/// utility next to the analytic first-order expressions.
pub fn foc_residual(p: &PreferenceParams, setting: &UgSetting, s: Strategy) -> Result<FocCheck> {
    let w = setting.endowment();
    let wv = w.value();
    let h = 1e-5 * wv;
    if (s.x1 - s.x2).abs() <= h {
        return Err(Error::Nondifferentiable { x1: s.x1, x2: s.x2 });
    }
    if s.x1 - h < 0.0 || s.x1 + h > wv || s.x2 - h < 0.0 || s.x2 + h > wv {
        return Err(Error::domain(format!("strategy ({}, {}) not interior", s.x1, s.x2)));
    }
    let (th, of) = (setting.thresholds(), setting.offers());
    let curve = setting.curve();
    let u = |x1: f64, x2: f64| eval_expected_utility(p, curve, th, of, Strategy::new(x1, x2), w);
    let fd1 = (u(s.x1 + h, s.x2)? - u(s.x1 - h, s.x2)?) / (2.0 * h);
    let fd2 = (u(s.x1, s.x2 + h)? - u(s.x1, s.x2 - h)?) / (2.0 * h);
    let (k, a) = (p.kappa, p.alpha);
    let (x1, x2) = (s.x1, s.x2);
    let mut an1 = (1.0 - k) * (-curve.derivative(wv - x1) * th.cdf(x1)? + curve.eval(wv - x1) * th.pdf(x1));
    if x1 > x2 {
        an1 += k * (curve.derivative(x1) - curve.derivative(wv - x1));
    }
    let an2 = -of.pdf(x2) * ((1.0 - k + a) * curve.eval(x2) - a * curve.eval(wv - x2));
    Ok(FocCheck { finite_difference: [fd1, fd2], analytic: [an1, an2] })
}

/// One solver-versus-grid comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceDraw {
    pub alpha: f64,
    pub kappa: f64,
    pub solver: Strategy,
    pub solver_utility: f64,
    pub grid: Strategy,
    pub grid_utility: f64,
}

impl EquivalenceDraw {
    /// How far the grid maximum exceeds the solver, 0 when it does not.
    pub fn shortfall(&self) -> f64 {
        (self.grid_utility - self.solver_utility).max(0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub step: f64,
    pub tolerance: f64,
    pub draws: Vec<EquivalenceDraw>,
    pub max_shortfall: f64,
    pub passed: bool,
}

/// Compares `optimal_strategy` with the exhaustive grid on `draws` random
/// `(α, κ)` points, `α ∈ [alpha_lo, alpha_hi)` and `κ ∈ [0, kappa_hi)`.
/// Draw `i` uses its own stream of `seed`, so results do not depend on
/// scheduling.
pub fn equivalence_check(
    setting: &UgSetting,
    draws: usize,
    step: f64,
    (alpha_lo, alpha_hi): (f64, f64),
    kappa_hi: f64,
    seed: u64,
) -> Result<EquivalenceReport> {
    if !(alpha_lo < alpha_hi) || !(0.0 < kappa_hi && kappa_hi < 1.0) {
        return Err(Error::domain("oracle check needs alpha_lo < alpha_hi and kappa_hi in (0, 1)"));
    }
    const TOLERANCE: f64 = 1e-6;
    let draws = (0..draws)
        .into_par_iter()
        .map(|i| {
            let mut rng = task_rng(seed, i as u64);
            let p = PreferenceParams::social(rng.random_range(alpha_lo..alpha_hi), 0.0, rng.random_range(0.0..kappa_hi))?;
            let opt = setting.optimal_strategy(&p)?;
            let (grid, grid_utility) = brute_force_ug(&p, setting, GridSpec::rectangle(step))?;
            Ok(EquivalenceDraw {
                alpha: p.alpha,
                kappa: p.kappa,
                solver: opt.strategy,
                solver_utility: setting.utility(p.alpha, p.kappa, opt.strategy),
                grid,
                grid_utility,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_shortfall = draws.iter().map(EquivalenceDraw::shortfall).fold(0.0, f64::max);
    Ok(EquivalenceReport { step, tolerance: TOLERANCE, draws, max_shortfall, passed: max_shortfall <= TOLERANCE })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_is_exact_on_cubics() {
        let v = simpson(|x| x * x * x - 2.0 * x, 0.0, 2.0, 2);
        assert!((v - 0.0).abs() < 1e-12);
    }

    #[test]
    fn selfish_always_accept_takes_everything() {
        let w = Endowment::new(10.0).unwrap();
        let setting = UgSetting::symmetric(PayoffCurve::ShiftedLog, BeliefDistribution::always_accept(5.0).unwrap(), w).unwrap();
        let p = PreferenceParams::social(0.0, 0.0, 0.0).unwrap();
        let (s, u) = brute_force_ug(&p, &setting, GridSpec::rectangle(0.025)).unwrap();
        assert_eq!(s, Strategy::new(0.0, 0.0));
        assert!((u - 11f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn dg_oracle_corners() {
        let w = Endowment::new(58.8).unwrap();
        let p = PreferenceParams::social(0.4, 0.0, 0.0).unwrap();
        assert_eq!(brute_force_dg(&p, PayoffCurve::ShiftedLog, w, 0.01).unwrap().0, 0.0);
        let p = PreferenceParams::social(0.0, 0.0, 1.0).unwrap();
        assert!((brute_force_dg(&p, PayoffCurve::ShiftedLog, w, 0.01).unwrap().0 - 29.4).abs() <= 0.01);
        let p = PreferenceParams::social(0.13, 0.22, 0.26).unwrap();
        let x = brute_force_dg(&p, PayoffCurve::ShiftedLog, w, 0.01).unwrap().0;
        assert!((x - 22.16).abs() <= 0.01 + 1e-9, "{x}");
    }

    #[test]
    fn foc_refuses_the_diagonal() {
        let base = UgSetting::baseline();
        let p = PreferenceParams::social(0.5, 0.0, 0.5).unwrap();
        assert!(matches!(foc_residual(&p, &base, Strategy::new(3.0, 3.0)), Err(Error::Nondifferentiable { .. })));
    }
}
