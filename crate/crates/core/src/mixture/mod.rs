//! Finite-mixture estimation of preference types from binary choices.

pub mod bootstrap;
pub mod choice;
pub mod criteria;
pub mod data;
pub mod em;
pub mod games;
pub mod predict;
pub mod synth;

pub use bootstrap::{bootstrap_se, BootstrapSe};
pub use choice::{choice_prob, ChoiceModel};
pub use criteria::{entropy, icl, nec};
pub use data::{ChoiceData, ChoiceRecord, Role};
pub use em::{em_fit, em_fit_from, mixture_loglik, EmConfig, MixtureFit};
pub use games::{strategy_utilities, BinaryGame};
pub use predict::{implicit_rejection_threshold, predict_behavior, PredictedBehavior};
