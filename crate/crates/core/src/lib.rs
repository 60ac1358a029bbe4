//! Ultimatum and dictator game models for agents who combine inequity
//! aversion with a Kantian universalization motive, together with a
//! finite-mixture estimator of preference types from binary choices.
//!
//! The crate is organized bottom-up: payoff curves and beliefs, utility
//! evaluations, the analytic ultimatum solver, the equilibrium-set tools, a
//! brute-force oracle, and the estimation pipeline with its file formats.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod beliefs;
pub mod curve;
pub mod error;
pub mod io;
pub mod mixture;
pub mod nash;
pub mod numeric;
pub mod oracle;
pub mod preferences;
pub mod solver;

pub use beliefs::BeliefDistribution;
pub use curve::PayoffCurve;
pub use error::{Error, Result};
pub use preferences::{Endowment, PreferenceParams, Strategy};
pub use solver::{Region, UgSetting};
