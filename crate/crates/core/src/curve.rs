//! Monetary-evaluation curves `v`.
//!
//! Every curve is normalized so that `v(0) = 0` and is strictly increasing on
//! the non-negative reals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PayoffCurve {
    /// `v(x) = x`.
    Linear,
    /// `v(x) = x^(1-ρ) / (1-ρ)` with `ρ ∈ (0, 1)`.
    Crra {
        #[serde(rename = "crra_rho")]
        rho: f64,
    },
    /// `v(x) = ln(x + 1)`.
    #[default]
    ShiftedLog,
}

impl PayoffCurve {
    pub fn crra(rho: f64) -> Result<Self> {
        let curve = PayoffCurve::Crra { rho };
        curve.validate()?;
        Ok(curve)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PayoffCurve::Crra { rho } if !(rho > 0.0 && rho < 1.0) => {
                Err(Error::domain(format!("CRRA coefficient must lie in (0, 1), got {rho}")))
            }
            _ => Ok(()),
        }
    }

    /// Checked evaluation of `v(x)`.
    pub fn value(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::domain(format!("payoff curve evaluated at negative amount {x}")));
        }
        Ok(self.eval(x))
    }

    /// `v(x)` without the domain check. Callers guarantee `x >= 0`.
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            PayoffCurve::Linear => x,
            PayoffCurve::Crra { rho } => x.powf(1.0 - rho) / (1.0 - rho),
            PayoffCurve::ShiftedLog => x.ln_1p(),
        }
    }

    /// `v'(x)`; infinite at 0 for CRRA.
    #[inline]
    pub fn derivative(&self, x: f64) -> f64 {
        match *self {
            PayoffCurve::Linear => 1.0,
            PayoffCurve::Crra { rho } => x.powf(-rho),
            PayoffCurve::ShiftedLog => 1.0 / (1.0 + x),
        }
    }

    #[inline]
    pub fn second_derivative(&self, x: f64) -> f64 {
        match *self {
            PayoffCurve::Linear => 0.0,
            PayoffCurve::Crra { rho } => -rho * x.powf(-rho - 1.0),
            PayoffCurve::ShiftedLog => -1.0 / ((1.0 + x) * (1.0 + x)),
        }
    }

    pub fn is_strictly_concave(&self) -> bool {
        !matches!(self, PayoffCurve::Linear)
    }
}
