//! Fit reports: the full mixture fit as JSON and a per-type CSV table with
//! one column per type.

use serde::{Deserialize, Serialize};

use super::SCHEMA_VERSION;
use crate::curve::PayoffCurve;
use crate::error::{Error, Result};
use crate::mixture::{predict_behavior, BootstrapSe, MixtureFit, PredictedBehavior};
use crate::preferences::{dg_transfer, Endowment, PreferenceParams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypeReport {
    pub params: PreferenceParams,
    pub share: f64,
    pub dg_transfer: f64,
    /// `None` at `κ = 1`.
    pub ug_threshold: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub schema_version: u32,
    pub curve: PayoffCurve,
    pub endowment: f64,
    pub fit: MixtureFit,
    /// Needs the one-type log-likelihood; absent for `K = 1`.
    pub nec: Option<f64>,
    pub types: Vec<TypeReport>,
    pub bootstrap: Option<BootstrapSe>,
}

fn behavior(p: &PreferenceParams, w: Endowment, curve: PayoffCurve) -> Result<(f64, Option<f64>)> {
    match predict_behavior(p, w, curve) {
        Ok(PredictedBehavior { dg_transfer, ug_threshold }) => Ok((dg_transfer, Some(ug_threshold))),
        Err(Error::ThresholdIndeterminate) => Ok((dg_transfer(p, curve, w), None)),
        Err(e) => Err(e),
    }
}

impl FitReport {
    pub fn new(fit: MixtureFit, lnl_one: Option<f64>, w: Endowment, curve: PayoffCurve, bootstrap: Option<BootstrapSe>) -> Result<Self> {
        let nec = match lnl_one {
            Some(l1) if fit.k > 1 => Some(fit.nec(l1)?),
            _ => None,
        };
        let types = fit
            .types
            .iter()
            .zip(&fit.shares)
            .map(|(p, &share)| {
                let (dg, ug) = behavior(p, w, curve)?;
                Ok(TypeReport { params: *p, share, dg_transfer: dg, ug_threshold: ug })
            })
            .collect::<Result<_>>()?;
        Ok(Self { schema_version: SCHEMA_VERSION, curve, endowment: w.value(), fit, nec, types, bootstrap })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Rows `alpha, beta, kappa, lambda, share, dg_transfer, ug_threshold`
    /// with a value and a bootstrap SE column per type, followed by the
    /// fit criteria in the first value column.
    pub fn to_csv(&self) -> String {
        let k = self.types.len();
        let mut out = String::from("row");
        for j in 1..=k {
            out.push_str(&format!(",type_{j},type_{j}_se"));
        }
        out.push('\n');
        let se = |j: usize, c: usize| -> String {
            self.bootstrap.as_ref().map_or(String::new(), |b| match c {
                0..=3 => format!("{:.4}", b.params[j][c]),
                4 => format!("{:.4}", b.shares[j]),
                _ => String::new(),
            })
        };
        let fmt_opt = |x: Option<f64>| x.map_or(String::new(), |v| format!("{v:.4}"));
        type Row = (&'static str, fn(&TypeReport) -> Option<f64>);
        let rows: [Row; 7] = [
            ("alpha", |t| Some(t.params.alpha)),
            ("beta", |t| Some(t.params.beta)),
            ("kappa", |t| Some(t.params.kappa)),
            ("lambda", |t| Some(t.params.lambda)),
            ("share", |t| Some(t.share)),
            ("dg_transfer", |t| Some(t.dg_transfer)),
            ("ug_threshold", |t| t.ug_threshold),
        ];
        for (c, (name, get)) in rows.iter().enumerate() {
            out.push_str(name);
            for (j, t) in self.types.iter().enumerate() {
                out.push_str(&format!(",{},{}", fmt_opt(get(t)), se(j, c)));
            }
            out.push('\n');
        }
        let pad = ",".repeat(2 * k - 1);
        for (name, v) in [
            ("log_likelihood", Some(self.fit.log_likelihood)),
            ("entropy", Some(self.fit.entropy)),
            ("icl", Some(self.fit.icl)),
            ("nec", self.nec),
            ("n", Some(self.fit.n_subjects as f64)),
        ] {
            out.push_str(&format!("{name},{}{pad}\n", fmt_opt(v)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixture::synth::{simulate_choices, standard_battery};
    use crate::mixture::{em_fit, ChoiceData, ChoiceModel, EmConfig};

    #[test]
    fn report_layout() {
        let games = standard_battery();
        let p = PreferenceParams::new(0.28, -0.3, 0.19, 0.1).unwrap();
        let s = simulate_choices(&[p], &[1.0], 30, &games, PayoffCurve::ShiftedLog, ChoiceModel::ConstantError, 1).unwrap();
        let data = ChoiceData::new(games, &s.records).unwrap();
        let fit = em_fit(&data, PayoffCurve::ShiftedLog, &EmConfig { restarts: 1, ..EmConfig::with_k(1) }).unwrap();
        let w = Endowment::new(Endowment::ESTIMATION).unwrap();
        let r = FitReport::new(fit, None, w, PayoffCurve::ShiftedLog, None).unwrap();
        assert_eq!(r.nec, None);
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "row,type_1,type_1_se");
        assert_eq!(lines.len(), 13);
        assert!(lines.iter().all(|l| l.split(',').count() == 3));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["schema_version"], 1);
        assert_eq!(json["fit"]["k"], 1);
    }
}
