//! Two-player binary games played behind the veil of ignorance.
//!
//! A veil strategy fixes one action per role. Its utility averages the two
//! roles with weight ½, takes expectations over the opponent's action, and
//! adds the universalization term evaluated at self-play.

use serde::{Deserialize, Serialize};

use crate::curve::PayoffCurve;
use crate::error::{Error, Result};
use crate::preferences::PreferenceParams;

/// Action index within a role.
pub type Action = usize;

/// Veil strategies in the order `(0,0), (0,1), (1,0), (1,1)` of
/// `(role-A action, role-B action)`.
pub const STRATEGIES: [(Action, Action); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinaryGame {
    pub id: String,
    /// `payoffs[a][b]` is `[payoff to A, payoff to B]` after A plays `a`
    /// and B plays `b`.
    pub payoffs: [[[f64; 2]; 2]; 2],
    /// Probability that the opponent in role B plays action 0, used when
    /// deciding as A.
    #[serde(default = "half")]
    pub belief_a: f64,
    /// Probability that the opponent in role A plays action 0, used when
    /// deciding as B.
    #[serde(default = "half")]
    pub belief_b: f64,
}

fn half() -> f64 {
    0.5
}

/// Coefficients `(c0, cα, cβ, cκ)` of a utility that is affine in the
/// preference parameters.
pub type Affine = [f64; 4];

fn dot(c: &Affine, p: &PreferenceParams) -> f64 {
    c[0] + c[1] * p.alpha + c[2] * p.beta + c[3] * p.kappa
}

/// `(1−κ)v(own) − α[v(other)−v(own)]⁺ − β[v(own)−v(other)]⁺` as
/// coefficients.
fn material(curve: PayoffCurve, own: f64, other: f64) -> Affine {
    let (vo, vt) = (curve.eval(own), curve.eval(other));
    [vo, -(vt - vo).max(0.0), -(vo - vt).max(0.0), -vo]
}

fn axpy(acc: &mut Affine, a: f64, c: &Affine) {
    for (x, y) in acc.iter_mut().zip(c) {
        *x += a * y;
    }
}

impl BinaryGame {
    pub fn new(id: impl Into<String>, payoffs: [[[f64; 2]; 2]; 2]) -> Result<Self> {
        let g = Self { id: id.into(), payoffs, belief_a: 0.5, belief_b: 0.5 };
        g.validate()?;
        Ok(g)
    }

    pub fn with_beliefs(mut self, belief_a: f64, belief_b: f64) -> Result<Self> {
        self.belief_a = belief_a;
        self.belief_b = belief_b;
        self.validate()?;
        Ok(self)
    }

    /// Mini ultimatum game: A picks (50, 50) or the unequal split
    /// `(100 − share, share)`; B accepts the split or punishes to (10, 10).
    pub fn mini_ultimatum(share: f64) -> Result<Self> {
        let equal = [50.0, 50.0];
        Self::new(format!("ug_{}_{}", 100.0 - share, share), [[equal, equal], [[100.0 - share, share], [10.0, 10.0]]])
    }

    /// The six built-in mini ultimatum games, from (60, 40) to (85, 15).
    pub fn mini_ultimatum_set() -> Vec<Self> {
        [40.0, 35.0, 30.0, 25.0, 20.0, 15.0].iter().map(|&s| Self::mini_ultimatum(s).expect("valid shares")).collect()
    }

    /// A chooses between two allocations `(own, other)`; B is passive.
    pub fn dictator(id: impl Into<String>, first: [f64; 2], second: [f64; 2]) -> Result<Self> {
        Self::new(id, [[first, first], [second, second]])
    }

    pub fn validate(&self) -> Result<()> {
        if self.id.trim().is_empty() {
            return Err(Error::domain("game id must not be empty"));
        }
        if self.payoffs.iter().flatten().flatten().any(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(Error::domain(format!("game `{}` has a negative or non-finite payoff", self.id)));
        }
        for b in [self.belief_a, self.belief_b] {
            if !(0.0..=1.0).contains(&b) {
                return Err(Error::domain(format!("game `{}` has belief {b} outside [0, 1]", self.id)));
            }
        }
        Ok(())
    }

    /// True when role B's action never changes anyone's payoff.
    pub fn b_is_passive(&self) -> bool {
        (0..2).all(|a| self.payoffs[a][0] == self.payoffs[a][1])
    }

    /// Affine coefficients of the four veil-strategy utilities.
    pub fn affine_utilities(&self, curve: PayoffCurve) -> [Affine; 4] {
        let mut out = [[0.0; 4]; 4];
        for (slot, &(a, b)) in STRATEGIES.iter().enumerate() {
            let u = &mut out[slot];
            for (opp, q) in [(0, self.belief_a), (1, 1.0 - self.belief_a)] {
                let [own, other] = self.payoffs[a][opp];
                axpy(u, 0.5 * q, &material(curve, own, other));
            }
            for (opp, q) in [(0, self.belief_b), (1, 1.0 - self.belief_b)] {
                let [other, own] = self.payoffs[opp][b];
                axpy(u, 0.5 * q, &material(curve, own, other));
            }
            let [pa, pb] = self.payoffs[a][b];
            u[3] += 0.5 * (curve.eval(pa) + curve.eval(pb));
        }
        out
    }
}

/// Expected utilities of the four veil strategies, ordered as
/// [`STRATEGIES`].
pub fn strategy_utilities(p: &PreferenceParams, curve: PayoffCurve, game: &BinaryGame) -> [f64; 4] {
    game.affine_utilities(curve).map(|c| dot(&c, p))
}

/// Index into [`STRATEGIES`].
pub fn strategy_index(a: Action, b: Action) -> usize {
    2 * a + b
}

/// Evaluates precomputed affine utilities at `p`.
pub(crate) fn eval_affine(coefs: &[Affine; 4], p: &PreferenceParams) -> [f64; 4] {
    coefs.map(|c| dot(&c, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: f64, b: f64, k: f64) -> PreferenceParams {
        PreferenceParams::social(a, b, k).unwrap()
    }

    #[test]
    fn selfish_linear_proposer_compares_expected_payoffs() {
        let g = BinaryGame::mini_ultimatum(40.0).unwrap().with_beliefs(0.9, 0.5).unwrap();
        let u = strategy_utilities(&params(0.0, 0.0, 0.0), PayoffCurve::Linear, &g);
        // 0.9 × 60 + 0.1 × 10 = 55 > 50.
        assert!(u[strategy_index(1, 0)] > u[strategy_index(0, 0)]);
        let g = g.with_beliefs(0.7, 0.5).unwrap();
        let u = strategy_utilities(&params(0.0, 0.0, 0.0), PayoffCurve::Linear, &g);
        // 0.7 × 60 + 0.3 × 10 = 45 < 50.
        assert!(u[strategy_index(1, 0)] < u[strategy_index(0, 0)]);
    }

    #[test]
    fn kantian_table_for_85_15_by_hand() {
        let g = BinaryGame::mini_ultimatum(15.0).unwrap();
        let u = strategy_utilities(&params(0.0, 0.0, 1.0), PayoffCurve::ShiftedLog, &g);
        let v = |x: f64| x.ln_1p();
        // κ = 1 removes the material terms; only the self-play outcome is left.
        assert!((u[0] - v(50.0)).abs() < 1e-12);
        assert!((u[1] - v(50.0)).abs() < 1e-12);
        assert!((u[2] - 0.5 * (v(85.0) + v(15.0))).abs() < 1e-12);
        assert!((u[3] - v(10.0)).abs() < 1e-12);
    }

    #[test]
    fn strong_spite_punishes_85_15() {
        let g = BinaryGame::mini_ultimatum(15.0).unwrap();
        let p = params(2.0, 0.0, 0.0);
        let u = strategy_utilities(&p, PayoffCurve::ShiftedLog, &g);
        let v = |x: f64| x.ln_1p();
        // Accepting as B yields v(15) − α[v(85) − v(15)] < v(10).
        assert!(v(15.0) - 2.0 * (v(85.0) - v(15.0)) < v(10.0));
        // Without universalization the roles separate, so punishing wins
        // whatever the own proposer action.
        assert!(u[strategy_index(0, 1)] > u[strategy_index(0, 0)]);
        assert!(u[strategy_index(1, 1)] > u[strategy_index(1, 0)]);
    }

    #[test]
    fn hand_evaluation_of_mixed_preferences() {
        let g = BinaryGame::mini_ultimatum(30.0).unwrap().with_beliefs(0.8, 0.6).unwrap();
        let (a, b, k) = (0.3, -0.2, 0.4);
        let v = |x: f64| x.ln_1p();
        let m = |own: f64, other: f64| (1.0 - k) * v(own) - a * (v(other) - v(own)).max(0.0) - b * (v(own) - v(other)).max(0.0);
        // Strategy (unequal, accept).
        let role_a = 0.8 * m(70.0, 30.0) + 0.2 * m(10.0, 10.0);
        let role_b = 0.6 * m(50.0, 50.0) + 0.4 * m(30.0, 70.0);
        let expected = 0.5 * (role_a + role_b) + k * 0.5 * (v(70.0) + v(30.0));
        let u = strategy_utilities(&params(a, b, k), PayoffCurve::ShiftedLog, &g);
        assert!((u[strategy_index(1, 0)] - expected).abs() < 1e-12);
    }

    #[test]
    fn dictator_matches_continuous_objective() {
        let p = params(0.13, 0.22, 0.26);
        let w = crate::Endowment::new(58.8).unwrap();
        let g = BinaryGame::dictator("d", [58.8, 0.0], [36.8, 22.0]).unwrap();
        let u = strategy_utilities(&p, PayoffCurve::ShiftedLog, &g);
        let d0 = crate::preferences::dg_objective(&p, PayoffCurve::ShiftedLog, 0.0, w);
        let d1 = crate::preferences::dg_objective(&p, PayoffCurve::ShiftedLog, 22.0, w);
        // Role B's term does not depend on A's own action and cancels.
        assert!(((u[2] - u[0]) - (d1 - d0)).abs() < 1e-12);
        assert!(g.b_is_passive());
    }

    #[test]
    fn rejects_bad_games() {
        assert!(BinaryGame::new("x", [[[-1.0, 0.0]; 2]; 2]).is_err());
        assert!(BinaryGame::mini_ultimatum(40.0).unwrap().with_beliefs(1.2, 0.5).is_err());
        assert!(BinaryGame::new(" ", [[[1.0, 1.0]; 2]; 2]).is_err());
    }

    #[test]
    fn serde_defaults_beliefs() {
        let g: BinaryGame = serde_json::from_str(r#"{"id":"g","payoffs":[[[50,50],[50,50]],[[60,40],[10,10]]]}"#).unwrap();
        assert_eq!(g.belief_a, 0.5);
        assert_eq!(g, BinaryGame::mini_ultimatum(40.0).unwrap().clone_with_id("g"));
    }

    impl BinaryGame {
        fn clone_with_id(mut self, id: &str) -> Self {
            self.id = id.into();
            self
        }
    }
}
