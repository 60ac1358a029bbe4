//! Preference parameters, strategies and the utility evaluations shared by
//! the solvers, the equilibrium verifier and the estimator.

use serde::{Deserialize, Serialize};

use crate::beliefs::BeliefDistribution;
use crate::curve::PayoffCurve;
use crate::error::{Error, Result};
use crate::numeric;

/// Absolute tolerance for the responder integral.
pub const RESPONDER_QUAD_TOL: f64 = 1e-10;

/// Behavioral parameters: disadvantageous (`alpha`) and advantageous
/// (`beta`) inequality weights, morality weight `kappa` and choice noise
/// `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PreferenceParams {
    pub alpha: f64,
    pub beta: f64,
    pub kappa: f64,
    #[serde(default)]
    pub lambda: f64,
}

impl PreferenceParams {
    pub fn new(alpha: f64, beta: f64, kappa: f64, lambda: f64) -> Result<Self> {
        let p = Self { alpha, beta, kappa, lambda };
        p.validate()?;
        Ok(p)
    }

    pub fn social(alpha: f64, beta: f64, kappa: f64) -> Result<Self> {
        Self::new(alpha, beta, kappa, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.beta.is_finite()) {
            return Err(Error::domain("alpha and beta must be finite"));
        }
        if !(0.0..=1.0).contains(&self.kappa) {
            return Err(Error::domain(format!("kappa must lie in [0, 1], got {}", self.kappa)));
        }
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(Error::domain(format!("lambda must lie in [0, 1], got {}", self.lambda)));
        }
        Ok(())
    }

    /// The box used to select the individual-estimate test sample.
    pub fn in_test_box(&self) -> bool {
        (-2.0..=2.0).contains(&self.alpha) && (-2.0..=2.0).contains(&self.beta) && (0.0..=1.0).contains(&self.kappa)
    }
}

/// Pie size `w`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Endowment(f64);

impl Endowment {
    /// 58.8 points, the estimation default.
    pub const ESTIMATION: f64 = 58.8;

    pub fn new(w: f64) -> Result<Self> {
        if w > 0.0 && w.is_finite() {
            Ok(Self(w))
        } else {
            Err(Error::domain(format!("endowment must be positive, got {w}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn half(self) -> f64 {
        0.5 * self.0
    }
}

impl TryFrom<f64> for Endowment {
    type Error = Error;
    fn try_from(w: f64) -> Result<Self> {
        Endowment::new(w)
    }
}

impl From<Endowment> for f64 {
    fn from(w: Endowment) -> f64 {
        w.0
    }
}

/// Offer as proposer (`x1`) and minimal acceptable offer as responder (`x2`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Strategy {
    pub x1: f64,
    pub x2: f64,
}

impl Strategy {
    pub fn new(x1: f64, x2: f64) -> Self {
        Self { x1, x2 }
    }

    pub fn validate(&self, w: Endowment) -> Result<()> {
        let ok = |x: f64| (0.0..=w.value()).contains(&x);
        if ok(self.x1) && ok(self.x2) {
            Ok(())
        } else {
            Err(Error::domain(format!("strategy ({}, {}) outside [0, {}]", self.x1, self.x2, w.value())))
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.x1 == self.x2
    }
}

fn check_support(belief: &BeliefDistribution, w: Endowment) -> Result<()> {
    if (belief.half() - w.half()).abs() > 1e-12 * w.value() {
        return Err(Error::domain(format!("belief supported on [0, {}] but w/2 = {}", belief.half(), w.half())));
    }
    Ok(())
}

/// `(1−κ) v(w−x1) F(x1)`: own share as proposer times acceptance probability.
pub fn proposer_term(p: &PreferenceParams, curve: PayoffCurve, thresholds: &BeliefDistribution, x1: f64, w: Endowment) -> f64 {
    (1.0 - p.kappa) * curve.eval(w.value() - x1) * thresholds.cdf_unchecked(x1)
}

/// `∫_{x2}^{w/2} [(1−κ+α) v(y) − α v(w−y)] dF(y)` over offers received.
pub fn responder_term(p: &PreferenceParams, curve: PayoffCurve, offers: &BeliefDistribution, x2: f64, w: Endowment) -> f64 {
    let wv = w.value();
    let a = 1.0 - p.kappa + p.alpha;
    offers.integrate(|y| a * curve.eval(y) - p.alpha * curve.eval(wv - y), x2, w.half(), RESPONDER_QUAD_TOL)
}

/// `κ [v(w−x1) + v(x1)]` if the strategy accepts its own offer.
pub fn universalization_term(p: &PreferenceParams, curve: PayoffCurve, s: Strategy, w: Endowment) -> f64 {
    if s.x1 >= s.x2 {
        p.kappa * (curve.eval(w.value() - s.x1) + curve.eval(s.x1))
    } else {
        0.0
    }
}

/// Expected utility of a strategy under role uncertainty.
pub fn eval_expected_utility(
    p: &PreferenceParams,
    curve: PayoffCurve,
    thresholds: &BeliefDistribution,
    offers: &BeliefDistribution,
    s: Strategy,
    w: Endowment,
) -> Result<f64> {
    s.validate(w)?;
    check_support(thresholds, w)?;
    check_support(offers, w)?;
    Ok(proposer_term(p, curve, thresholds, s.x1, w) + responder_term(p, curve, offers, s.x2, w) + universalization_term(p, curve, s, w))
}

/// Ex-post proposer payoff from offering `x1` when it is accepted.
pub fn expost_proposer_payoff(p: &PreferenceParams, curve: PayoffCurve, x1: f64, w: Endowment) -> f64 {
    let own = curve.eval(w.value() - x1);
    let other = curve.eval(x1);
    (1.0 - p.kappa) * own - p.alpha * (other - own).max(0.0) - p.beta * (own - other).max(0.0)
}

/// Ex-post responder payoff from accepting an offer `y1`.
pub fn expost_responder_payoff(p: &PreferenceParams, curve: PayoffCurve, y1: f64, w: Endowment) -> f64 {
    let own = curve.eval(y1);
    let other = curve.eval(w.value() - y1);
    (1.0 - p.kappa) * own - p.alpha * (other - own).max(0.0) - p.beta * (own - other).max(0.0)
}

/// Utility of playing `own` against an opponent known to play `other`.
pub fn eval_expost_symmetric(p: &PreferenceParams, curve: PayoffCurve, own: Strategy, other: Strategy, w: Endowment) -> Result<f64> {
    own.validate(w)?;
    other.validate(w)?;
    let mut u = 0.0;
    if own.x1 >= other.x2 {
        u += expost_proposer_payoff(p, curve, own.x1, w);
    }
    if other.x1 >= own.x2 {
        u += expost_responder_payoff(p, curve, other.x1, w);
    }
    Ok(u + universalization_term(p, curve, own, w))
}

/// Dictator-game objective of transferring `x`, with the ½ role weights.
pub fn dg_objective(p: &PreferenceParams, curve: PayoffCurve, x: f64, w: Endowment) -> f64 {
    let own = curve.eval(w.value() - x);
    let other = curve.eval(x);
    0.5 * (1.0 - p.kappa) * own - 0.5 * p.alpha * (other - own).max(0.0) - 0.5 * p.beta * (own - other).max(0.0)
        + 0.5 * p.kappa * (own + other)
}

/// Optimal dictator transfer over `[0, w]`. Ties go to the smaller transfer.
pub fn dg_transfer(p: &PreferenceParams, curve: PayoffCurve, w: Endowment) -> f64 {
    let wv = w.value();
    let half = w.half();
    let mut candidates = vec![0.0, half, wv];
    match curve {
        PayoffCurve::Linear => {}
        PayoffCurve::ShiftedLog => {
            // Stationary points of (1−β)v(w−x) + (β+κ)v(x) on [0, w/2] and
            // (1+α)v(w−x) + (κ−α)v(x) on [w/2, w].
            let denom = 1.0 + p.kappa;
            let left = ((p.beta + p.kappa) * (wv + 1.0) - (1.0 - p.beta)) / denom;
            let right = ((p.kappa - p.alpha) * (wv + 1.0) - (1.0 + p.alpha)) / denom;
            if (0.0..=half).contains(&left) {
                candidates.push(left);
            }
            if (half..=wv).contains(&right) {
                candidates.push(right);
            }
        }
        PayoffCurve::Crra { .. } => {
            let f = |x| dg_objective(p, curve, x, w);
            candidates.push(numeric::scan_then_golden(f, 0.0, half, 200, 1e-10 * wv).0);
            candidates.push(numeric::scan_then_golden(f, half, wv, 200, 1e-10 * wv).0);
        }
    }
    candidates.sort_by(f64::total_cmp);
    let mut best = (candidates[0], dg_objective(p, curve, candidates[0], w));
    for &x in &candidates[1..] {
        let v = dg_objective(p, curve, x, w);
        if v > best.1 + 1e-13 {
            best = (x, v);
        }
    }
    best.0.clamp(0.0, wv)
}
