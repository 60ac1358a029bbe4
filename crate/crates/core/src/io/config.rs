//! Run configuration as TOML. Every section has defaults; the defaults
//! reproduce the `w = 10`, CRRA 0.05, Beta(2, 4) setting for the analytic
//! commands and `w = 58.8` with `ln(x+1)` for estimation.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::beliefs::BeliefDistribution;
use crate::curve::PayoffCurve;
use crate::error::{Error, Result};
use crate::mixture::{ChoiceModel, EmConfig};
use crate::nash::NashGrid;
use crate::preferences::Endowment;
use crate::solver::{RegionMapSpec, UgSetting};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BeliefSpec {
    ScaledBeta { a: f64, b: f64 },
    Uniform,
    AlwaysAccept,
    Empirical { samples: Vec<f64>, bin_width: Option<f64> },
}

impl BeliefSpec {
    pub fn build(&self, half: f64) -> Result<BeliefDistribution> {
        match self {
            BeliefSpec::ScaledBeta { a, b } => BeliefDistribution::scaled_beta(*a, *b, half),
            BeliefSpec::Uniform => BeliefDistribution::uniform(half),
            BeliefSpec::AlwaysAccept => BeliefDistribution::always_accept(half),
            BeliefSpec::Empirical { samples, bin_width: None } => BeliefDistribution::empirical(samples.clone(), half),
            BeliefSpec::Empirical { samples, bin_width: Some(h) } => BeliefDistribution::empirical_with_bins(samples.clone(), half, *h),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BeliefsConfig {
    pub thresholds: BeliefSpec,
    /// Defaults to the threshold belief.
    pub offers: Option<BeliefSpec>,
}

impl Default for BeliefsConfig {
    fn default() -> Self {
        Self { thresholds: BeliefSpec::ScaledBeta { a: 2.0, b: 4.0 }, offers: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StaticsConfig {
    pub kappa_min: f64,
    pub kappa_max: f64,
    pub points: usize,
}

impl Default for StaticsConfig {
    fn default() -> Self {
        Self { kappa_min: 0.0, kappa_max: 0.95, points: 96 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NashConfig {
    /// Deviation grid step; `w/400` when absent.
    pub step: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleConfig {
    pub draws: usize,
    /// Brute-force grid step; `w/400` when absent.
    pub step: Option<f64>,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub kappa_max: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { draws: 300, step: None, alpha_min: -1.0, alpha_max: 3.0, kappa_max: 0.95 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EstimationConfig {
    pub endowment: f64,
    pub curve: PayoffCurve,
    pub k: usize,
    pub restarts: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub model: ChoiceModel,
    /// 0 disables the bootstrap.
    pub bootstrap_replicates: usize,
    /// Game battery JSON; the built-in mini ultimatum games when absent.
    pub games: Option<PathBuf>,
}

impl Default for EstimationConfig {
    fn default() -> Self {
        let em = EmConfig::default();
        Self {
            endowment: Endowment::ESTIMATION,
            curve: PayoffCurve::ShiftedLog,
            k: 2,
            restarts: em.restarts,
            tol: em.tol,
            max_iter: em.max_iter,
            model: em.model,
            bootstrap_replicates: 0,
            games: None,
        }
    }
}

impl EstimationConfig {
    pub fn em_config(&self, seed: u64) -> EmConfig {
        EmConfig { k: self.k, restarts: self.restarts, tol: self.tol, max_iter: self.max_iter, seed, model: self.model }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub endowment: f64,
    pub curve: PayoffCurve,
    pub beliefs: BeliefsConfig,
    pub region_map: RegionMapSpec,
    pub statics: StaticsConfig,
    pub nash: NashConfig,
    pub oracle: OracleConfig,
    pub estimation: EstimationConfig,
    pub seed: u64,
    /// Directory for command outputs; standard output when absent.
    pub output_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            endowment: 10.0,
            curve: PayoffCurve::Crra { rho: 0.05 },
            beliefs: BeliefsConfig::default(),
            region_map: RegionMapSpec::default(),
            statics: StaticsConfig::default(),
            nash: NashConfig::default(),
            oracle: OracleConfig::default(),
            estimation: EstimationConfig::default(),
            seed: 0,
            output_dir: None,
        }
    }
}

impl RunConfig {
    /// Parses and validates; any invalid field is a `Config` error.
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn endowment(&self) -> Result<Endowment> {
        Endowment::new(self.endowment)
    }

    pub fn setting(&self) -> Result<UgSetting> {
        let w = self.endowment()?;
        let thresholds = self.beliefs.thresholds.build(w.half())?;
        let offers = match &self.beliefs.offers {
            Some(spec) => spec.build(w.half())?,
            None => thresholds.clone(),
        };
        UgSetting::new(self.curve, thresholds, offers, w)
    }

    pub fn nash_grid(&self) -> Result<NashGrid> {
        let w = self.endowment()?;
        match self.nash.step {
            Some(step) => NashGrid::new(w, step),
            None => Ok(NashGrid::default_for(w)),
        }
    }

    pub fn oracle_step(&self) -> f64 {
        self.oracle.step.unwrap_or(self.endowment / 400.0)
    }

    pub fn validate(&self) -> Result<()> {
        let wrap = |e: Error| match e {
            Error::Config(_) => e,
            other => Error::Config(other.to_string()),
        };
        self.setting().map_err(wrap)?;
        self.region_map.validate().map_err(wrap)?;
        self.nash_grid().map_err(wrap)?;
        let s = &self.statics;
        if s.points < 2 || !(0.0 <= s.kappa_min && s.kappa_min < s.kappa_max && s.kappa_max < 1.0) {
            return Err(Error::Config("statics needs at least 2 points and 0 <= kappa_min < kappa_max < 1".into()));
        }
        let o = &self.oracle;
        let step_ok = o.step.is_none_or(|h| h > 0.0 && h <= self.endowment);
        if o.draws == 0 || !step_ok || !(o.alpha_min <= o.alpha_max) || !(0.0..1.0).contains(&o.kappa_max) {
            return Err(Error::Config("oracle needs positive draws, a step in (0, w] and kappa_max in [0, 1)".into()));
        }
        let e = &self.estimation;
        Endowment::new(e.endowment).map_err(wrap)?;
        e.curve.validate().map_err(wrap)?;
        e.em_config(self.seed).validate().map_err(wrap)?;
        if e.bootstrap_replicates == 1 {
            return Err(Error::Config("bootstrap needs at least 2 replicates (0 disables it)".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_reference_setting() {
        let cfg = RunConfig::from_toml("").unwrap();
        let s = cfg.setting().unwrap();
        let base = UgSetting::baseline();
        assert_eq!(s.selfish_offer(), base.selfish_offer());
        assert_eq!(cfg.estimation.endowment, 58.8);
        assert_eq!(RunConfig::from_toml(&cfg.to_toml()).unwrap(), cfg);
    }

    #[test]
    fn sections_parse() {
        let text = r#"
endowment = 20.0
seed = 7
[curve]
kind = "crra"
crra_rho = 0.3
[beliefs.thresholds]
kind = "uniform"
[beliefs.offers]
kind = "scaled_beta"
a = 2.0
b = 2.0
[estimation]
k = 3
model = "logit"
bootstrap_replicates = 50
"#;
        let cfg = RunConfig::from_toml(text).unwrap();
        assert_eq!(cfg.curve, PayoffCurve::Crra { rho: 0.3 });
        assert_eq!(cfg.estimation.em_config(cfg.seed).k, 3);
        assert_eq!(cfg.estimation.model, ChoiceModel::Logit);
        assert_eq!(cfg.setting().unwrap().endowment().value(), 20.0);
    }

    #[test]
    fn invalid_fields_are_config_errors() {
        for bad in [
            "endowment = -1.0",
            "[curve]\nkind = \"crra\"\ncrra_rho = 1.5",
            "[beliefs.thresholds]\nkind = \"scaled_beta\"\na = 0.0\nb = 1.0",
            "[statics]\npoints = 1",
            "[estimation]\nk = 0",
            "[estimation]\nbootstrap_replicates = 1",
            "[nash]\nstep = 0.0",
            "unknown = 1",
            "endowment = \"ten\"",
        ] {
            assert!(matches!(RunConfig::from_toml(bad), Err(Error::Config(_))), "{bad}");
        }
    }
}
