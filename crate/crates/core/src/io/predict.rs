//! Per-subject predictions for a sample of individual estimates, with the
//! distribution summaries and histogram counts used for plotting.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::statistics::{Data, Median, OrderStatistics, Statistics};

use super::estimates::EstimateRecord;
use super::SCHEMA_VERSION;
use crate::curve::PayoffCurve;
use crate::error::{Error, Result};
use crate::preferences::{dg_transfer, Endowment};
use crate::solver::constrained_threshold;

pub const HISTOGRAM_BINS: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubjectPrediction {
    pub id: String,
    pub alpha: f64,
    pub beta: f64,
    pub kappa: f64,
    pub dg_transfer: f64,
    /// `None` at `κ = 1`, where the threshold is indeterminate.
    pub ug_threshold: Option<f64>,
}

/// Order statistics of a predicted quantity, in points and as shares of
/// the endowment. Quartiles use the median-unbiased (type 8) estimator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistributionSummary {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
    pub obs: usize,
    /// `[min, q1, median, q3, max, mean] / w`.
    pub shares: [f64; 6],
}

impl DistributionSummary {
    pub fn of(xs: &[f64], w: Endowment) -> Option<Self> {
        if xs.is_empty() {
            return None;
        }
        let mut d = Data::new(xs.to_vec());
        let (min, max, mean) = (xs.min(), xs.max(), xs.mean());
        let (q1, median, q3) = (d.lower_quartile(), d.median(), d.upper_quartile());
        let shares = [min, q1, median, q3, max, mean].map(|v| v / w.value());
        Some(Self { min, q1, median, q3, max, mean, obs: xs.len(), shares })
    }
}

/// Equal-width bins on `[lo, hi]`; the last bin is closed. Values above
/// `hi` are counted separately.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<usize>,
    pub above: usize,
}

impl Histogram {
    pub fn new(xs: &[f64], lo: f64, hi: f64, bins: usize) -> Self {
        let mut counts = vec![0; bins];
        let mut above = 0;
        let width = (hi - lo) / bins as f64;
        for &x in xs {
            if x > hi {
                above += 1;
            } else {
                counts[(((x - lo) / width) as usize).min(bins - 1)] += 1;
            }
        }
        Self { lo, hi, counts, above }
    }

    pub fn edges(&self) -> Vec<f64> {
        let n = self.counts.len();
        (0..=n).map(|i| self.lo + (self.hi - self.lo) * i as f64 / n as f64).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionSet {
    pub schema_version: u32,
    pub endowment: f64,
    pub curve: PayoffCurve,
    /// Predictions computed with `κ` set to 0 for every subject.
    pub kappa_suppressed: bool,
    pub subjects: Vec<SubjectPrediction>,
    pub dg: DistributionSummary,
    /// Over subjects with a determinate threshold.
    pub ug: Option<DistributionSummary>,
    pub dg_histogram: Histogram,
    pub ug_histogram: Histogram,
}

impl PredictionSet {
    pub fn thresholds(&self) -> Vec<f64> {
        self.subjects.iter().filter_map(|s| s.ug_threshold).collect()
    }
}

/// DG transfers from `(α, β, κ)` and UG thresholds from `(α, κ)` for every
/// subject, in input order. Subjects are evaluated in parallel.
pub fn predict_all(records: &[EstimateRecord], w: Endowment, curve: PayoffCurve, suppress_kappa: bool) -> Result<PredictionSet> {
    if records.is_empty() {
        return Err(Error::Empty("no estimates to predict from".into()));
    }
    curve.validate()?;
    let subjects = records
        .par_iter()
        .map(|r| {
            let mut p = r.params();
            if suppress_kappa {
                p.kappa = 0.0;
            }
            p.validate()?;
            let ug_threshold = match constrained_threshold(p.kappa, p.alpha, curve, w) {
                Ok(t) => Some(t),
                Err(Error::ThresholdIndeterminate) => None,
                Err(e) => return Err(e),
            };
            Ok(SubjectPrediction {
                id: r.id.clone(),
                alpha: p.alpha,
                beta: p.beta,
                kappa: p.kappa,
                dg_transfer: dg_transfer(&p, curve, w),
                ug_threshold,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let dg_values: Vec<f64> = subjects.iter().map(|s| s.dg_transfer).collect();
    let ug_values: Vec<f64> = subjects.iter().filter_map(|s| s.ug_threshold).collect();
    Ok(PredictionSet {
        schema_version: SCHEMA_VERSION,
        endowment: w.value(),
        curve,
        kappa_suppressed: suppress_kappa,
        dg: DistributionSummary::of(&dg_values, w).expect("non-empty"),
        ug: DistributionSummary::of(&ug_values, w),
        dg_histogram: Histogram::new(&dg_values, 0.0, w.half(), HISTOGRAM_BINS),
        ug_histogram: Histogram::new(&ug_values, 0.0, w.half(), HISTOGRAM_BINS),
        subjects,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(id: &str, alpha: f64, beta: f64, kappa: f64) -> EstimateRecord {
        EstimateRecord { id: id.into(), alpha, beta, kappa }
    }

    #[test]
    fn histogram_edges_and_overflow() {
        let h = Histogram::new(&[0.0, 0.49, 0.5, 5.0, 7.0], 0.0, 5.0, 10);
        assert_eq!(h.counts[0], 2);
        assert_eq!(h.counts[1], 1);
        assert_eq!(h.counts[9], 1);
        assert_eq!(h.above, 1);
        assert_eq!(h.edges().len(), 11);
    }

    #[test]
    fn spite_free_subjects_accept_everything() {
        let w = Endowment::new(Endowment::ESTIMATION).unwrap();
        let set = predict_all(
            &[rec("a", -0.3, 0.2, 0.4), rec("b", 0.28, -0.3, 0.19), rec("c", 0.5, 0.0, 1.0)],
            w,
            PayoffCurve::ShiftedLog,
            false,
        )
        .unwrap();
        assert_eq!(set.subjects[0].ug_threshold, Some(0.0));
        assert!((set.subjects[1].ug_threshold.unwrap() - 1.83).abs() < 0.01);
        assert_eq!(set.subjects[1].dg_transfer, 0.0);
        assert_eq!(set.subjects[2].ug_threshold, None);
        assert_eq!(set.ug.unwrap().obs, 2);
        assert_eq!(set.dg_histogram.counts.len(), HISTOGRAM_BINS);
        assert_eq!(set.dg_histogram.counts.iter().sum::<usize>() + set.dg_histogram.above, 3);
    }

    #[test]
    fn suppressing_kappa_lowers_thresholds() {
        let w = Endowment::new(Endowment::ESTIMATION).unwrap();
        let recs = [rec("a", 0.5, 0.0, 0.6), rec("b", 1.0, 0.1, 0.3)];
        let full = predict_all(&recs, w, PayoffCurve::ShiftedLog, false).unwrap();
        let social = predict_all(&recs, w, PayoffCurve::ShiftedLog, true).unwrap();
        for (f, s) in full.subjects.iter().zip(&social.subjects) {
            assert!(s.ug_threshold.unwrap() < f.ug_threshold.unwrap());
            assert_eq!(s.kappa, 0.0);
        }
    }

    #[test]
    fn summary_shares_divide_by_endowment() {
        let w = Endowment::new(10.0).unwrap();
        let s = DistributionSummary::of(&[0.0, 1.0, 2.0, 3.0, 4.0], w).unwrap();
        assert_eq!((s.min, s.median, s.max, s.mean), (0.0, 2.0, 4.0, 2.0));
        assert!(s.q1 <= s.median && s.median <= s.q3);
        assert_eq!(s.shares[5], 0.2);
    }
}
