//! Symmetric Nash equilibria of the ultimatum game between two players with
//! identical `(α, κ)`, and a grid best-response verifier.
//!
//! The upper end of the equilibrium segment has no closed form in general, so
//! it is computed by scanning the verifier along the diagonal.

use serde::{Deserialize, Serialize};

use crate::curve::PayoffCurve;
use crate::error::{Error, Result};
use crate::numeric;
use crate::preferences::{eval_expost_symmetric, expost_proposer_payoff, expost_responder_payoff, Endowment, PreferenceParams, Strategy};

/// Deviation gains at or below this are treated as zero.
pub const VERIFY_TOL: f64 = 1e-9;
const ROOT_TOL: f64 = 1e-10;

/// The deviation grid `{0, step, 2·step, …, w}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NashGrid {
    step: f64,
    n: usize,
    w: f64,
}

impl NashGrid {
    pub fn new(w: Endowment, step: f64) -> Result<Self> {
        if !(step > 0.0 && step <= w.value()) {
            return Err(Error::domain(format!("grid step must lie in (0, w], got {step}")));
        }
        let n = (w.value() / step).round().max(1.0) as usize;
        Ok(Self { step, n, w: w.value() })
    }

    /// Default resolution `w/400`.
    pub fn default_for(w: Endowment) -> Self {
        Self::new(w, w.value() / 400.0).expect("valid step")
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.n + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The `j`-th grid point; the last one is exactly `w`.
    pub fn point(&self, j: usize) -> f64 {
        if j >= self.n {
            self.w
        } else {
            j as f64 * self.step
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.n).map(|j| self.point(j))
    }
}

fn params(kappa: f64, alpha: f64) -> PreferenceParams {
    PreferenceParams { alpha, beta: 0.0, kappa, lambda: 0.0 }
}

fn check_kappa(kappa: f64) -> Result<()> {
    if (0.0..=1.0).contains(&kappa) {
        Ok(())
    } else {
        Err(Error::domain(format!("kappa must lie in [0, 1], got {kappa}")))
    }
}

/// `min { x : v'(w−x) ≥ κ v'(x) }`.
pub fn tau_of_kappa(kappa: f64, curve: PayoffCurve, w: Endowment) -> Result<f64> {
    check_kappa(kappa)?;
    let wv = w.value();
    if kappa == 1.0 {
        return Ok(w.half());
    }
    if kappa == 0.0 {
        return Ok(0.0);
    }
    if !curve.is_strictly_concave() {
        // Linear: 1 ≥ κ holds everywhere.
        return Ok(0.0);
    }
    let g = |x: f64| curve.derivative(wv - x) - kappa * curve.derivative(x);
    Ok(numeric::first_nonnegative(g, 0.0, w.half(), ROOT_TOL))
}

/// `min { x : (1+α−κ) v(x) ≥ α v(w−x) }`; equals the responder threshold.
pub fn x2_lower_of(kappa: f64, alpha: f64, curve: PayoffCurve, w: Endowment) -> Result<f64> {
    check_kappa(kappa)?;
    if alpha <= 0.0 {
        return Ok(0.0);
    }
    let wv = w.value();
    let g = |x: f64| (1.0 + alpha - kappa) * curve.eval(x) - alpha * curve.eval(wv - x);
    if kappa == 1.0 {
        return Ok(numeric::first_nonnegative(g, 0.0, w.half(), ROOT_TOL));
    }
    numeric::bisect(g, 0.0, w.half(), ROOT_TOL)
}

/// `max { x : (1+α−κ) v(w−x) ≥ α v(x) }`: beyond it a proposer prefers to
/// have the offer rejected.
pub fn x1_upper_of(kappa: f64, alpha: f64, curve: PayoffCurve, w: Endowment) -> Result<f64> {
    check_kappa(kappa)?;
    let wv = w.value();
    if alpha <= 0.0 {
        return Ok(wv);
    }
    let g = |x: f64| (1.0 + alpha - kappa) * curve.eval(wv - x) - alpha * curve.eval(x);
    Ok(numeric::last_nonnegative(g, w.half(), wv, ROOT_TOL))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NashCheck {
    pub is_equilibrium: bool,
    /// Largest gain from a unilateral grid deviation (≤ 0 when none helps).
    pub gain: f64,
    pub best_deviation: Strategy,
}

/// Exhaustive check of unilateral deviations on the grid.
pub fn verify_nash(profile: Strategy, kappa: f64, alpha: f64, curve: PayoffCurve, w: Endowment, grid: &NashGrid) -> Result<NashCheck> {
    check_kappa(kappa)?;
    let p = params(kappa, alpha);
    let baseline = eval_expost_symmetric(&p, curve, profile, profile, w)?;
    let (y1, y2) = (profile.x1, profile.x2);
    let xs: Vec<f64> = grid.points().collect();
    // Deviation utility separates: proposer part in x1', responder part in
    // x2' (two values), and the universal term coupling them.
    let prop: Vec<f64> = xs.iter().map(|&x| if x >= y2 { expost_proposer_payoff(&p, curve, x, w) } else { 0.0 }).collect();
    let univ: Vec<f64> = xs.iter().map(|&x| kappa * (curve.eval(w.value() - x) + curve.eval(x))).collect();
    let resp = expost_responder_payoff(&p, curve, y1, w);
    let mut best = (f64::NEG_INFINITY, Strategy::new(0.0, 0.0));
    for (i, &x1) in xs.iter().enumerate() {
        for &x2 in &xs {
            let mut u = prop[i];
            if y1 >= x2 {
                u += resp;
            }
            if x1 >= x2 {
                u += univ[i];
            }
            if u > best.0 {
                best = (u, Strategy::new(x1, x2));
            }
        }
    }
    let gain = best.0 - baseline;
    Ok(NashCheck { is_equilibrium: gain <= VERIFY_TOL, gain, best_deviation: best.1 })
}

/// Largest grid point `x ≥ w/2` whose diagonal profile `(x, x)` passes the
/// verifier, with `α = 0`. `None` if no such point exists.
pub fn rho_of_kappa(kappa: f64, curve: PayoffCurve, w: Endowment, grid: &NashGrid) -> Result<Option<f64>> {
    rho_of(kappa, 0.0, curve, w, grid)
}

/// Upper end of the symmetric equilibrium segment for general `α`.
pub fn rho_of(kappa: f64, alpha: f64, curve: PayoffCurve, w: Endowment, grid: &NashGrid) -> Result<Option<f64>> {
    let half = w.half();
    for j in (0..grid.len()).rev() {
        let x = grid.point(j);
        if x < half - 1e-12 * w.value() {
            break;
        }
        if verify_nash(Strategy::new(x, x), kappa, alpha, curve, w, grid)?.is_equilibrium {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetKind {
    SymmetricSegment,
    SegmentPlusAsymmetricStub,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StubDirection {
    /// Thresholds at or below the offer.
    Below,
    Above,
    Both,
    /// No threshold survives at the offer `τ`.
    Empty,
}

/// Equilibria of the form `(τ, x2)` found by the verifier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymmetricStub {
    pub offer: f64,
    pub threshold_min: Option<f64>,
    pub threshold_max: Option<f64>,
    pub direction: StubDirection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NashBounds {
    pub tau: f64,
    pub x2_lower: f64,
    pub x1_upper: f64,
    pub rho: Option<f64>,
    /// `[max(x̲₂, τ), min(x̄₁, ρ)]`, absent when empty.
    pub segment: Option<(f64, f64)>,
    pub set_kind: SetKind,
    pub asymmetric_stub: Option<AsymmetricStub>,
    pub flags: Vec<String>,
}

/// The symmetric equilibrium segment and, when `τ > x̲₂`, the stub of
/// asymmetric equilibria at offer `τ`.
pub fn nash_set(kappa: f64, alpha: f64, curve: PayoffCurve, w: Endowment, grid: &NashGrid) -> Result<NashBounds> {
    if !(kappa > 0.0 && kappa <= 1.0) {
        return Err(Error::domain(format!("nash set needs kappa in (0, 1], got {kappa}")));
    }
    if !(alpha >= 0.0) {
        return Err(Error::domain(format!("nash set needs alpha >= 0, got {alpha}")));
    }
    let tau = tau_of_kappa(kappa, curve, w)?;
    let x2_lower = x2_lower_of(kappa, alpha, curve, w)?;
    let x1_upper = x1_upper_of(kappa, alpha, curve, w)?;
    let rho = rho_of(kappa, alpha, curve, w, grid)?;
    let mut flags = Vec::new();
    let lo = x2_lower.max(tau);
    let segment = match rho {
        Some(r) if lo <= x1_upper.min(r) => Some((lo, x1_upper.min(r))),
        _ => {
            flags.push("no symmetric equilibrium on grid".to_string());
            None
        }
    };
    let asymmetric_stub = if tau > x2_lower {
        let mut passing = Vec::new();
        for x2 in grid.points().take_while(|x| *x <= w.value()) {
            if verify_nash(Strategy::new(tau, x2), kappa, alpha, curve, w, grid)?.is_equilibrium {
                passing.push(x2);
            }
        }
        let threshold_min = passing.first().copied();
        let threshold_max = passing.last().copied();
        let direction = match (threshold_min, threshold_max) {
            (None, _) | (_, None) => StubDirection::Empty,
            (Some(_), Some(hi)) if hi <= tau => StubDirection::Below,
            (Some(lo), Some(_)) if lo >= tau => StubDirection::Above,
            _ => StubDirection::Both,
        };
        Some(AsymmetricStub { offer: tau, threshold_min, threshold_max, direction })
    } else {
        None
    };
    let set_kind = if asymmetric_stub.is_some() { SetKind::SegmentPlusAsymmetricStub } else { SetKind::SymmetricSegment };
    Ok(NashBounds { tau, x2_lower, x1_upper, rho, segment, set_kind, asymmetric_stub, flags })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w10() -> Endowment {
        Endowment::new(10.0).unwrap()
    }

    #[test]
    fn tau_values() {
        let sl = PayoffCurve::ShiftedLog;
        assert_eq!(tau_of_kappa(0.0, sl, w10()).unwrap(), 0.0);
        assert_eq!(tau_of_kappa(1.0, sl, w10()).unwrap(), 5.0);
        // 1/(11−x) = 0.5/(x+1) ⇒ x = 3.
        assert!((tau_of_kappa(0.5, sl, w10()).unwrap() - 3.0).abs() < 1e-8);
    }

    #[test]
    fn x1_upper_linear_closed_form() {
        for (k, a) in [(0.2, 0.5), (0.5, 0.5), (0.9, 1.3)] {
            let x = x1_upper_of(k, a, PayoffCurve::Linear, w10()).unwrap();
            let closed = 10.0 * (1.0 + a - k) / (1.0 + 2.0 * a - k);
            assert!((x - closed).abs() < 1e-8, "κ={k} α={a}");
        }
        // With α = κ the condition is v(w−x) ≥ α v(x), which holds past w/2.
        assert!(x1_upper_of(0.5, 0.5, PayoffCurve::ShiftedLog, w10()).unwrap() > 5.0);
    }

    #[test]
    fn equal_split_is_an_equilibrium() {
        let grid = NashGrid::default_for(w10());
        let c = verify_nash(Strategy::new(5.0, 5.0), 0.5, 0.5, PayoffCurve::ShiftedLog, w10(), &grid).unwrap();
        assert!(c.is_equilibrium, "{c:?}");
    }

    #[test]
    fn low_offer_is_upset_by_raising_the_threshold() {
        let grid = NashGrid::default_for(w10());
        let xl2 = x2_lower_of(0.3, 1.0, PayoffCurve::ShiftedLog, w10()).unwrap();
        let x = (xl2 - 0.5).max(0.0);
        let c = verify_nash(Strategy::new(x, x), 0.3, 1.0, PayoffCurve::ShiftedLog, w10(), &grid).unwrap();
        assert!(!c.is_equilibrium);
        assert!(c.best_deviation.x2 > x);
    }

    #[test]
    fn generous_offer_above_x1_upper_fails() {
        let grid = NashGrid::default_for(w10());
        let xu = x1_upper_of(0.3, 1.0, PayoffCurve::ShiftedLog, w10()).unwrap();
        let x = (xu + 0.3).min(10.0);
        let c = verify_nash(Strategy::new(x, x), 0.3, 1.0, PayoffCurve::ShiftedLog, w10(), &grid).unwrap();
        assert!(!c.is_equilibrium);
    }

    #[test]
    fn kappa_one_shrinks_to_equal_split() {
        let grid = NashGrid::default_for(w10());
        assert_eq!(rho_of_kappa(1.0, PayoffCurve::ShiftedLog, w10(), &grid).unwrap(), Some(5.0));
    }

    #[test]
    fn grid_ends_exactly_at_w() {
        let g = NashGrid::new(w10(), 0.3).unwrap();
        assert_eq!(g.point(g.len() - 1), 10.0);
    }
}
