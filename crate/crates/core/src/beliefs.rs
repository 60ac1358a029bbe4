//! Beliefs over an opponent's offer or rejection threshold, supported on
//! `[0, w/2]`.

use statrs::distribution::{Beta, Continuous, ContinuousCDF};

use crate::error::{Error, Result};
use crate::numeric;

#[derive(Debug, Clone)]
pub enum BeliefKind {
    /// Beta(a, b) rescaled from `[0, 1]` to `[0, w/2]`.
    ScaledBeta {
        a: f64,
        b: f64,
        dist: Beta,
    },
    UniformOnHalf,
    /// Point mass at 0: every offer is accepted.
    AlwaysAccept,
    /// Step CDF of a sorted sample; densities come from a histogram.
    Empirical {
        samples: Vec<f64>,
        bin_width: f64,
        counts: Vec<usize>,
    },
}

#[derive(Debug, Clone)]
pub struct BeliefDistribution {
    kind: BeliefKind,
    half: f64,
}

fn check_half(half: f64) -> Result<()> {
    if half > 0.0 && half.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("belief support bound must be positive, got {half}")))
    }
}

fn bin_of(x: f64, bin_width: f64, bins: usize) -> usize {
    ((x / bin_width) as usize).min(bins - 1)
}

impl BeliefDistribution {
    pub fn scaled_beta(a: f64, b: f64, half: f64) -> Result<Self> {
        check_half(half)?;
        let dist = Beta::new(a, b).map_err(|e| Error::domain(format!("Beta({a}, {b}): {e}")))?;
        Ok(Self { kind: BeliefKind::ScaledBeta { a, b, dist }, half })
    }

    pub fn uniform(half: f64) -> Result<Self> {
        check_half(half)?;
        Ok(Self { kind: BeliefKind::UniformOnHalf, half })
    }

    pub fn always_accept(half: f64) -> Result<Self> {
        check_half(half)?;
        Ok(Self { kind: BeliefKind::AlwaysAccept, half })
    }

    /// Empirical belief with the default histogram bin width `half / 50`,
    /// i.e. `w / 100`.
    pub fn empirical(samples: Vec<f64>, half: f64) -> Result<Self> {
        Self::empirical_with_bins(samples, half, half / 50.0)
    }

    pub fn empirical_with_bins(mut samples: Vec<f64>, half: f64, bin_width: f64) -> Result<Self> {
        check_half(half)?;
        if samples.is_empty() {
            return Err(Error::Empty("empirical belief needs at least one sample".into()));
        }
        if let Some(bad) = samples.iter().find(|s| !(**s >= 0.0 && **s <= half)) {
            return Err(Error::domain(format!("empirical sample {bad} outside [0, {half}]")));
        }
        if !(bin_width > 0.0) {
            return Err(Error::domain("histogram bin width must be positive"));
        }
        samples.sort_by(f64::total_cmp);
        let bins = (half / bin_width).ceil().max(1.0) as usize;
        let mut counts = vec![0; bins];
        for s in &samples {
            counts[bin_of(*s, bin_width, bins)] += 1;
        }
        Ok(Self { kind: BeliefKind::Empirical { samples, bin_width, counts }, half })
    }

    pub fn kind(&self) -> &BeliefKind {
        &self.kind
    }

    /// Upper end of the support, `w/2`.
    pub fn half(&self) -> f64 {
        self.half
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self.kind, BeliefKind::AlwaysAccept)
    }

    pub fn is_continuous(&self) -> bool {
        matches!(self.kind, BeliefKind::ScaledBeta { .. } | BeliefKind::UniformOnHalf)
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::domain(format!("belief CDF evaluated at negative amount {x}")));
        }
        Ok(self.cdf_unchecked(x))
    }

    pub(crate) fn cdf_unchecked(&self, x: f64) -> f64 {
        if x >= self.half {
            return 1.0;
        }
        match &self.kind {
            BeliefKind::ScaledBeta { dist, .. } => dist.cdf(x / self.half),
            BeliefKind::UniformOnHalf => x / self.half,
            BeliefKind::AlwaysAccept => 1.0,
            BeliefKind::Empirical { samples, .. } => samples.partition_point(|s| *s <= x) as f64 / samples.len() as f64,
        }
    }

    /// Density; zero outside the support and for the point-mass belief.
    pub fn pdf(&self, x: f64) -> f64 {
        if !(x >= 0.0 && x <= self.half) {
            return 0.0;
        }
        match &self.kind {
            BeliefKind::ScaledBeta { dist, .. } => dist.pdf(x / self.half) / self.half,
            BeliefKind::UniformOnHalf => 1.0 / self.half,
            BeliefKind::AlwaysAccept => 0.0,
            BeliefKind::Empirical { samples, bin_width, counts } => {
                let bin = bin_of(x, *bin_width, counts.len());
                let width = (self.half - bin as f64 * bin_width).min(*bin_width);
                counts[bin] as f64 / (samples.len() as f64 * width)
            }
        }
    }

    /// `∫_{[lo, hi]} g dF`, exact for discrete kinds.
    pub fn integrate<G: FnMut(f64) -> f64>(&self, mut g: G, lo: f64, hi: f64, abs_tol: f64) -> f64 {
        let lo = lo.max(0.0);
        let hi = hi.min(self.half);
        if hi < lo {
            return 0.0;
        }
        match &self.kind {
            BeliefKind::AlwaysAccept => {
                if lo <= 0.0 {
                    g(0.0)
                } else {
                    0.0
                }
            }
            BeliefKind::Empirical { samples, .. } => {
                let n = samples.len() as f64;
                samples.iter().filter(|s| **s >= lo && **s <= hi).map(|s| g(*s)).sum::<f64>() / n
            }
            _ => numeric::integrate(|t| g(t) * self.pdf(t), lo, hi, abs_tol),
        }
    }
}
