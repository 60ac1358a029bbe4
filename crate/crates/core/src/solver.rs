//! Optimal ultimatum-game strategies behind the veil of ignorance.
//!
//! A [`UgSetting`] fixes the payoff curve, the beliefs about opponents'
//! thresholds and offers, and the pie. The selfish offer is computed once at
//! construction; everything else depends on `(α, κ)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::beliefs::BeliefDistribution;
use crate::curve::PayoffCurve;
use crate::error::{Error, Result};
use crate::numeric;
use crate::preferences::{proposer_term, responder_term, Endowment, PreferenceParams, Strategy};

const SCAN_POINTS: usize = 200;
const ROOT_TOL: f64 = 1e-10;
const KAPPA_TILDE_TOL: f64 = 1e-8;
const KAPPA_GRID: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    /// Offer weakly above own threshold: `(x̃₁, x̲₂)`.
    R1,
    /// Symmetric strategy `(x̂, x̂)`.
    R2,
    /// Selfish offer strictly below own threshold: `(x_s, x̲₂)`.
    R3,
}

impl Region {
    pub fn as_str(self) -> &'static str {
        match self {
            Region::R1 => "R1",
            Region::R2 => "R2",
            Region::R3 => "R3",
        }
    }
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverFlag {
    ThresholdIndeterminate,
    DegenerateBelief,
    IndifferenceNeverReached,
    AlphaBarInfinite,
    AlphaTildeInfinite,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    pub strategy: Strategy,
    pub region: Region,
    pub flags: Vec<SolverFlag>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KappaTilde {
    pub value: f64,
    /// False when no sign change of the indifference gap was found.
    pub reached: bool,
}

/// Every solver object for one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverOutputs {
    pub x_s: f64,
    pub x_tilde1: f64,
    pub x_lower2: Option<f64>,
    pub x_hat: Option<f64>,
    pub alpha_bar: Option<f64>,
    pub alpha_tilde_of_kappa: Option<f64>,
    pub kappa_tilde_of_alpha: Option<KappaTilde>,
    pub region: Region,
    pub optimal: Strategy,
    pub flags: Vec<SolverFlag>,
}

/// Belief-independent rejection threshold: the root of
/// `(1+α−κ) v(x) = α v(w−x)` on `(0, w/2)`, or 0 when `α ≤ 0`.
pub fn constrained_threshold(kappa: f64, alpha: f64, curve: PayoffCurve, w: Endowment) -> Result<f64> {
    if !(0.0..=1.0).contains(&kappa) {
        return Err(Error::domain(format!("kappa must lie in [0, 1], got {kappa}")));
    }
    if kappa == 1.0 {
        return Err(Error::ThresholdIndeterminate);
    }
    if alpha <= 0.0 {
        return Ok(0.0);
    }
    let wv = w.value();
    let h = |x: f64| (1.0 + alpha - kappa) * curve.eval(x) - alpha * curve.eval(wv - x);
    numeric::bisect(h, 0.0, w.half(), ROOT_TOL)
}

#[derive(Debug, Clone)]
pub struct UgSetting {
    curve: PayoffCurve,
    thresholds: BeliefDistribution,
    offers: BeliefDistribution,
    w: Endowment,
    x_s: f64,
}

impl UgSetting {
    pub fn new(curve: PayoffCurve, thresholds: BeliefDistribution, offers: BeliefDistribution, w: Endowment) -> Result<Self> {
        curve.validate()?;
        for b in [&thresholds, &offers] {
            if (b.half() - w.half()).abs() > 1e-12 * w.value() {
                return Err(Error::domain(format!("belief support [0, {}] does not match w/2 = {}", b.half(), w.half())));
            }
        }
        let mut s = Self { curve, thresholds, offers, w, x_s: 0.0 };
        s.x_s = s.search_offer(0.0);
        Ok(s)
    }

    /// The same belief for thresholds and offers.
    pub fn symmetric(curve: PayoffCurve, belief: BeliefDistribution, w: Endowment) -> Result<Self> {
        Self::new(curve, belief.clone(), belief, w)
    }

    /// `w = 10`, CRRA with coefficient 0.05 and Beta(2, 4) beliefs on `[0, 5]`.
    pub fn baseline() -> Self {
        let w = Endowment::new(10.0).expect("positive");
        let b = BeliefDistribution::scaled_beta(2.0, 4.0, 5.0).expect("valid beta");
        Self::symmetric(PayoffCurve::Crra { rho: 0.05 }, b, w).expect("valid setting")
    }

    pub fn curve(&self) -> PayoffCurve {
        self.curve
    }

    pub fn endowment(&self) -> Endowment {
        self.w
    }

    pub fn thresholds(&self) -> &BeliefDistribution {
        &self.thresholds
    }

    pub fn offers(&self) -> &BeliefDistribution {
        &self.offers
    }

    fn degenerate(&self) -> bool {
        self.thresholds.is_degenerate() || self.offers.is_degenerate()
    }

    fn offer_objective(&self, kappa: f64, x: f64) -> f64 {
        let wv = self.w.value();
        let p = PreferenceParams { alpha: 0.0, beta: 0.0, kappa, lambda: 0.0 };
        proposer_term(&p, self.curve, &self.thresholds, x, self.w) + kappa * (self.curve.eval(wv - x) + self.curve.eval(x))
    }

    fn search_offer(&self, kappa: f64) -> f64 {
        let tol = 1e-10 * self.w.value();
        numeric::scan_then_golden(|x| self.offer_objective(kappa, x), 0.0, self.w.half(), SCAN_POINTS, tol).0
    }

    /// Expected ultimatum utility without bounds checks.
    pub fn utility(&self, alpha: f64, kappa: f64, s: Strategy) -> f64 {
        let p = PreferenceParams { alpha, beta: 0.0, kappa, lambda: 0.0 };
        let wv = self.w.value();
        let univ = if s.x1 >= s.x2 { kappa * (self.curve.eval(wv - s.x1) + self.curve.eval(s.x1)) } else { 0.0 };
        proposer_term(&p, self.curve, &self.thresholds, s.x1, self.w) + responder_term(&p, self.curve, &self.offers, s.x2, self.w) + univ
    }

    /// Maximizer of `v(w−x) F(x)`.
    pub fn selfish_offer(&self) -> f64 {
        self.x_s
    }

    /// Maximizer of `(1−κ) v(w−x) F(x) + κ [v(w−x) + v(x)]`.
    pub fn constrained_offer(&self, kappa: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&kappa) {
            return Err(Error::domain(format!("kappa must lie in [0, 1], got {kappa}")));
        }
        Ok(if kappa == 0.0 {
            self.x_s
        } else if kappa == 1.0 {
            self.w.half()
        } else {
            self.search_offer(kappa)
        })
    }

    pub fn constrained_threshold(&self, kappa: f64, alpha: f64) -> Result<f64> {
        constrained_threshold(kappa, alpha, self.curve, self.w)
    }

    /// Best symmetric strategy `y` on `[lo, hi]`.
    pub fn symmetric_optimum(&self, kappa: f64, alpha: f64, lo: f64, hi: f64) -> Result<f64> {
        if lo > hi {
            return Err(Error::NotSymmetricRegime { lo, hi });
        }
        if lo == hi {
            return Ok(lo);
        }
        let f = |y| self.utility(alpha, kappa, Strategy::new(y, y));
        Ok(numeric::scan_then_golden(f, lo, hi, 16, 1e-7).0)
    }

    pub fn alpha_bar(&self) -> Result<f64> {
        let xs = self.x_s;
        let denom = self.curve.eval(self.w.value() - xs) - self.curve.eval(xs);
        if denom <= 1e-12 {
            return Err(Error::InfiniteAlphaBar);
        }
        Ok(self.curve.eval(xs) / denom)
    }

    /// Spite level at which the constrained offer and threshold coincide.
    pub fn alpha_tilde(&self, kappa: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&kappa) {
            return Err(Error::domain(format!("alpha_tilde needs kappa in [0, 1), got {kappa}")));
        }
        let x = self.constrained_offer(kappa)?;
        let denom = self.curve.eval(self.w.value() - x) - self.curve.eval(x);
        if denom <= 1e-12 {
            return Err(Error::InfiniteAlphaTilde { kappa });
        }
        Ok((1.0 - kappa) * self.curve.eval(x) / denom)
    }

    /// `u(x_s, x̲₂) − u(x̂, x̂)`: positive where the asymmetric strategy wins.
    pub fn indifference_gap(&self, alpha: f64, kappa: f64) -> Result<f64> {
        let xt1 = self.constrained_offer(kappa)?;
        let xl2 = self.constrained_threshold(kappa, alpha)?;
        let xh = self.symmetric_optimum(kappa, alpha, xt1.min(xl2), xt1.max(xl2))?;
        Ok(self.utility(alpha, kappa, Strategy::new(self.x_s, xl2)) - self.utility(alpha, kappa, Strategy::new(xh, xh)))
    }

    /// Morality level below which the asymmetric strategy is optimal, for
    /// `α > ᾱ`; `None` otherwise.
    pub fn kappa_tilde(&self, alpha: f64) -> Result<Option<KappaTilde>> {
        let abar = match self.alpha_bar() {
            Ok(a) => a,
            Err(Error::InfiniteAlphaBar) => return Ok(None),
            Err(e) => return Err(e),
        };
        if alpha <= abar {
            return Ok(None);
        }
        let g = |k: f64| self.indifference_gap(alpha, k);
        let mut prev_k = 0.0;
        let mut prev_g = g(0.0)?;
        if prev_g < 0.0 {
            return Ok(Some(KappaTilde { value: 0.0, reached: false }));
        }
        for j in 1..KAPPA_GRID {
            let k = j as f64 / KAPPA_GRID as f64;
            let gk = g(k)?;
            if gk < 0.0 {
                let root = bisect_fallible(&g, prev_k, k, prev_g)?;
                return Ok(Some(KappaTilde { value: root, reached: true }));
            }
            prev_k = k;
            prev_g = gk;
        }
        let _ = prev_g;
        Ok(Some(KappaTilde { value: 0.0, reached: false }))
    }

    /// Optimal strategy and its region.
    pub fn optimal_strategy(&self, p: &PreferenceParams) -> Result<Optimum> {
        p.validate()?;
        let mut flags = Vec::new();
        if self.degenerate() {
            flags.push(SolverFlag::DegenerateBelief);
        }
        if p.kappa == 1.0 {
            flags.push(SolverFlag::ThresholdIndeterminate);
            return Ok(Optimum { strategy: Strategy::new(self.w.half(), 0.0), region: Region::R1, flags });
        }
        let xt1 = self.constrained_offer(p.kappa)?;
        let xl2 = self.constrained_threshold(p.kappa, p.alpha)?;
        if xt1 >= xl2 {
            return Ok(Optimum { strategy: Strategy::new(xt1, xl2), region: Region::R1, flags });
        }
        let xh = self.symmetric_optimum(p.kappa, p.alpha, xt1, xl2)?;
        let u_sym = self.utility(p.alpha, p.kappa, Strategy::new(xh, xh));
        let u_asym = self.utility(p.alpha, p.kappa, Strategy::new(self.x_s, xl2));
        if u_asym >= u_sym {
            Ok(Optimum { strategy: Strategy::new(self.x_s, xl2), region: Region::R3, flags })
        } else {
            Ok(Optimum { strategy: Strategy::new(xh, xh), region: Region::R2, flags })
        }
    }

    /// Every solver object for one parameter point.
    pub fn solve(&self, p: &PreferenceParams) -> Result<SolverOutputs> {
        let opt = self.optimal_strategy(p)?;
        let mut flags = opt.flags.clone();
        let x_tilde1 = self.constrained_offer(p.kappa)?;
        let x_lower2 = match self.constrained_threshold(p.kappa, p.alpha) {
            Ok(x) => Some(x),
            Err(Error::ThresholdIndeterminate) => None,
            Err(e) => return Err(e),
        };
        let x_hat = match x_lower2 {
            Some(xl2) if x_tilde1 <= xl2 => Some(self.symmetric_optimum(p.kappa, p.alpha, x_tilde1, xl2)?),
            _ => None,
        };
        let alpha_bar = match self.alpha_bar() {
            Ok(a) => Some(a),
            Err(Error::InfiniteAlphaBar) => {
                flags.push(SolverFlag::AlphaBarInfinite);
                None
            }
            Err(e) => return Err(e),
        };
        let alpha_tilde_of_kappa = if p.kappa < 1.0 {
            match self.alpha_tilde(p.kappa) {
                Ok(a) => Some(a),
                Err(Error::InfiniteAlphaTilde { .. }) => {
                    flags.push(SolverFlag::AlphaTildeInfinite);
                    None
                }
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        let kappa_tilde_of_alpha = self.kappa_tilde(p.alpha)?;
        if matches!(kappa_tilde_of_alpha, Some(KappaTilde { reached: false, .. })) {
            flags.push(SolverFlag::IndifferenceNeverReached);
        }
        Ok(SolverOutputs {
            x_s: self.x_s,
            x_tilde1,
            x_lower2,
            x_hat,
            alpha_bar,
            alpha_tilde_of_kappa,
            kappa_tilde_of_alpha,
            region: opt.region,
            optimal: opt.strategy,
            flags,
        })
    }

    /// Region labels on an `(α, κ)` grid plus the boundary curves.
    pub fn region_map(&self, spec: &RegionMapSpec) -> Result<RegionMap> {
        spec.validate()?;
        let alphas = linspace(spec.alpha_min, spec.alpha_max, spec.alpha_points);
        let kappas = linspace(spec.kappa_min, spec.kappa_max, spec.kappa_points);
        let pairs: Vec<(f64, f64)> = alphas.iter().flat_map(|&a| kappas.iter().map(move |&k| (a, k))).collect();
        let cells = pairs
            .par_iter()
            .map(|&(alpha, kappa)| {
                let p = PreferenceParams { alpha, beta: 0.0, kappa, lambda: 0.0 };
                let opt = self.optimal_strategy(&p)?;
                Ok(RegionCell { alpha, kappa, region: opt.region, x1_star: opt.strategy.x1, x2_star: opt.strategy.x2 })
            })
            .collect::<Result<Vec<_>>>()?;
        let alpha_bar = self.alpha_bar().ok();
        let alpha_tilde_curve = kappas.par_iter().filter(|k| **k < 1.0).filter_map(|&k| self.alpha_tilde(k).ok().map(|a| (k, a))).collect();
        let kappa_tilde_curve = alphas
            .par_iter()
            .map(|&a| Ok(self.kappa_tilde(a)?.filter(|kt| kt.reached).map(|kt| (a, kt.value))))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        Ok(RegionMap { cells, alpha_bar, alpha_tilde_curve, kappa_tilde_curve })
    }

    /// Optimal strategies along a κ grid with region switches located by
    /// bisection on the region label.
    pub fn comparative_statics(&self, alpha: f64, kappa_grid: &[f64]) -> Result<Statics> {
        if let Some(k) = kappa_grid.iter().find(|k| !(0.0..1.0).contains(*k)) {
            return Err(Error::domain(format!("statics grid needs kappa in [0, 1), got {k}")));
        }
        let opt_at = |k: f64| self.optimal_strategy(&PreferenceParams { alpha, beta: 0.0, kappa: k, lambda: 0.0 });
        let points = kappa_grid
            .par_iter()
            .map(|&kappa| {
                let o = opt_at(kappa)?;
                Ok(StaticsPoint { kappa, x1_star: o.strategy.x1, x2_star: o.strategy.x2, region: o.region })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut switches = Vec::new();
        for pair in points.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if a.region == b.region {
                continue;
            }
            let (mut lo, mut hi) = (a.kappa, b.kappa);
            let (mut o_lo, mut o_hi) = (opt_at(lo)?, opt_at(hi)?);
            for _ in 0..40 {
                let mid = 0.5 * (lo + hi);
                let o = opt_at(mid)?;
                if o.region == a.region {
                    lo = mid;
                    o_lo = o;
                } else {
                    hi = mid;
                    o_hi = o;
                }
            }
            switches.push(RegionSwitch {
                kappa: 0.5 * (lo + hi),
                from: a.region,
                to: o_hi.region,
                x1_before: o_lo.strategy.x1,
                x1_after: o_hi.strategy.x1,
                x2_before: o_lo.strategy.x2,
                x2_after: o_hi.strategy.x2,
            });
        }
        Ok(Statics { alpha, points, switches })
    }
}

fn bisect_fallible<G: Fn(f64) -> Result<f64>>(g: &G, mut lo: f64, mut hi: f64, g_lo: f64) -> Result<f64> {
    let sign_lo = g_lo.signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid)?;
        if gm.abs() < KAPPA_TILDE_TOL || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if gm.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionMapSpec {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_points: usize,
    pub kappa_min: f64,
    pub kappa_max: f64,
    pub kappa_points: usize,
}

impl Default for RegionMapSpec {
    fn default() -> Self {
        Self { alpha_min: 0.0, alpha_max: 3.0, alpha_points: 31, kappa_min: 0.0, kappa_max: 0.95, kappa_points: 20 }
    }
}

impl RegionMapSpec {
    pub fn validate(&self) -> Result<()> {
        if self.alpha_points == 0 || self.kappa_points == 0 {
            return Err(Error::domain("region map needs positive grid counts"));
        }
        if !(self.alpha_min <= self.alpha_max && self.kappa_min <= self.kappa_max) {
            return Err(Error::domain("region map ranges must be ordered"));
        }
        if !(self.kappa_min >= 0.0 && self.kappa_max <= 1.0) {
            return Err(Error::domain("region map kappa range must lie in [0, 1]"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionCell {
    pub alpha: f64,
    pub kappa: f64,
    pub region: Region,
    pub x1_star: f64,
    pub x2_star: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionMap {
    pub cells: Vec<RegionCell>,
    pub alpha_bar: Option<f64>,
    /// `(κ, α̃(κ))` pairs.
    pub alpha_tilde_curve: Vec<(f64, f64)>,
    /// `(α, κ̃(α))` pairs for `α > ᾱ`.
    pub kappa_tilde_curve: Vec<(f64, f64)>,
}

impl RegionMap {
    pub fn counts(&self) -> [usize; 3] {
        let mut c = [0; 3];
        for cell in &self.cells {
            c[cell.region as usize] += 1;
        }
        c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StaticsPoint {
    pub kappa: f64,
    pub x1_star: f64,
    pub x2_star: f64,
    pub region: Region,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionSwitch {
    pub kappa: f64,
    pub from: Region,
    pub to: Region,
    pub x1_before: f64,
    pub x1_after: f64,
    pub x2_before: f64,
    pub x2_after: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Statics {
    pub alpha: f64,
    pub points: Vec<StaticsPoint>,
    pub switches: Vec<RegionSwitch>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(alpha: f64, kappa: f64) -> PreferenceParams {
        PreferenceParams::social(alpha, 0.0, kappa).unwrap()
    }

    #[test]
    fn trivial_offers() {
        let w = Endowment::new(10.0).unwrap();
        let aa = UgSetting::symmetric(PayoffCurve::ShiftedLog, BeliefDistribution::always_accept(5.0).unwrap(), w).unwrap();
        assert_eq!(aa.selfish_offer(), 0.0);
        assert_eq!(aa.alpha_bar().unwrap(), 0.0);
        let uni = UgSetting::symmetric(PayoffCurve::Linear, BeliefDistribution::uniform(5.0).unwrap(), w).unwrap();
        assert_eq!(uni.selfish_offer(), 5.0);
        assert!(matches!(uni.alpha_bar(), Err(Error::InfiniteAlphaBar)));
        let base = UgSetting::baseline();
        assert_eq!(base.constrained_offer(0.0).unwrap(), base.selfish_offer());
        assert_eq!(base.constrained_offer(1.0).unwrap(), 5.0);
    }

    #[test]
    fn threshold_closed_forms() {
        let w = Endowment::new(10.0).unwrap();
        assert_eq!(constrained_threshold(0.4, 0.0, PayoffCurve::ShiftedLog, w).unwrap(), 0.0);
        assert_eq!(constrained_threshold(0.4, -1.0, PayoffCurve::ShiftedLog, w).unwrap(), 0.0);
        let x = constrained_threshold(0.0, 1.0, PayoffCurve::Linear, w).unwrap();
        assert!((x - 10.0 / 3.0).abs() < 1e-9);
        assert!(matches!(constrained_threshold(1.0, 1.0, PayoffCurve::Linear, w), Err(Error::ThresholdIndeterminate)));
        let x = constrained_threshold(0.19, 0.28, PayoffCurve::ShiftedLog, Endowment::new(58.8).unwrap()).unwrap();
        assert!((x - 1.81).abs() < 0.05);
    }

    #[test]
    fn selfish_benchmark_is_r1() {
        let base = UgSetting::baseline();
        let o = base.optimal_strategy(&params(0.0, 0.0)).unwrap();
        assert_eq!(o.region, Region::R1);
        assert_eq!(o.strategy, Strategy::new(base.selfish_offer(), 0.0));
    }

    #[test]
    fn kappa_one_edge_case() {
        let base = UgSetting::baseline();
        let o = base.optimal_strategy(&params(0.8, 1.0)).unwrap();
        assert_eq!(o.strategy, Strategy::new(5.0, 0.0));
        assert!(o.flags.contains(&SolverFlag::ThresholdIndeterminate));
    }

    #[test]
    fn degenerate_belief_is_flagged() {
        let w = Endowment::new(10.0).unwrap();
        let aa = UgSetting::symmetric(PayoffCurve::ShiftedLog, BeliefDistribution::always_accept(5.0).unwrap(), w).unwrap();
        let o = aa.optimal_strategy(&params(0.5, 0.2)).unwrap();
        assert!(o.flags.contains(&SolverFlag::DegenerateBelief));
    }

    #[test]
    fn empty_symmetric_bracket_is_signalled() {
        let base = UgSetting::baseline();
        assert!(matches!(base.symmetric_optimum(0.5, 0.5, 4.0, 3.0), Err(Error::NotSymmetricRegime { .. })));
        assert_eq!(base.symmetric_optimum(0.5, 0.5, 3.0, 3.0).unwrap(), 3.0);
    }

    #[test]
    fn alpha_tilde_at_zero_is_alpha_bar() {
        let base = UgSetting::baseline();
        assert!((base.alpha_tilde(0.0).unwrap() - base.alpha_bar().unwrap()).abs() < 1e-9);
    }

    #[test]
    fn linspace_hits_both_ends() {
        let v = linspace(0.0, 0.95, 20);
        assert_eq!(v.len(), 20);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[19], 0.95);
        assert_eq!(linspace(1.0, 2.0, 1), vec![1.0]);
    }
}
