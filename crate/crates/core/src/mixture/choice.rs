//! Probabilistic choice between two actions.

use serde::{Deserialize, Serialize};

/// How `lambda` turns utilities into choice probabilities.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChoiceModel {
    /// With probability `lambda` the choice is a coin flip, otherwise the
    /// better action is taken.
    #[default]
    ConstantError,
    /// Logistic choice with noise scale `lambda`.
    Logit,
}

impl ChoiceModel {
    pub fn as_str(self) -> &'static str {
        match self {
            ChoiceModel::ConstantError => "constant_error",
            ChoiceModel::Logit => "logit",
        }
    }

    pub fn prob(self, lambda: f64, u_chosen: f64, u_other: f64) -> f64 {
        match self {
            ChoiceModel::ConstantError => choice_prob(lambda, u_chosen, u_other),
            ChoiceModel::Logit => logit_prob(lambda, u_chosen, u_other),
        }
    }
}

/// Constant-error probability `(1−λ)·1{u_chosen > u_other} + λ/2`. Exact
/// ties give ½.
pub fn choice_prob(lambda: f64, u_chosen: f64, u_other: f64) -> f64 {
    if u_chosen == u_other {
        0.5
    } else if u_chosen > u_other {
        1.0 - 0.5 * lambda
    } else {
        0.5 * lambda
    }
}

/// `1 / (1 + exp(−(u_chosen − u_other)/λ))`, with `λ = 0` read as the
/// noiseless limit.
pub fn logit_prob(lambda: f64, u_chosen: f64, u_other: f64) -> f64 {
    let d = u_chosen - u_other;
    if lambda <= 0.0 {
        return choice_prob(0.0, u_chosen, u_other);
    }
    let z = d / lambda;
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}
