//! Model-selection criteria for mixtures: classification entropy, ICL and
//! NEC. Lower ICL and NEC values indicate a better fit.

use crate::error::{Error, Result};

/// `−Σ_i Σ_k τ_ik ln τ_ik` with `0 ln 0 = 0`.
pub fn entropy(posteriors: &[Vec<f64>]) -> f64 {
    -posteriors.iter().flatten().filter(|&&t| t > 0.0).map(|&t| t * t.ln()).sum::<f64>()
}

/// Free parameters of a `k`-type model: four per type plus `k − 1` shares.
pub fn n_params(k: usize) -> usize {
    5 * k - 1
}

/// `−2 lnL + (5K − 1) ln N + EN`.
pub fn icl(lnl: f64, k: usize, n: usize, en: f64) -> f64 {
    -2.0 * lnl + n_params(k) as f64 * (n as f64).ln() + en
}

/// `EN_K / (lnL_K − lnL_1)`. Undefined when the two log-likelihoods
/// coincide.
pub fn nec(en_k: f64, lnl_k: f64, lnl_1: f64) -> Result<f64> {
    let gain = lnl_k - lnl_1;
    if gain == 0.0 || !gain.is_finite() {
        return Err(Error::NecUndefined);
    }
    Ok(en_k / gain)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_edge_cases() {
        assert_eq!(entropy(&[vec![1.0], vec![1.0]]), 0.0);
        let uniform = vec![vec![0.5, 0.5]; 7];
        assert!((entropy(&uniform) - 7.0 * 2f64.ln()).abs() < 1e-12);
        assert_eq!(entropy(&[vec![1.0, 0.0]]), 0.0);
    }

    #[test]
    fn reported_information_criteria() {
        assert!((icl(-2063.28, 1, 96, 0.0) - 4144.82).abs() < 0.02);
        assert!((icl(-1902.76, 2, 96, 4.00) - 3850.59).abs() < 0.02);
        assert!((icl(-1865.90, 3, 96, 13.50) - 3809.21).abs() < 0.02);
        assert!((nec(4.00, -1902.76, -2063.28).unwrap() - 0.02).abs() < 0.005);
        assert!((nec(13.50, -1865.90, -2063.28).unwrap() - 0.07).abs() < 0.005);
    }

    #[test]
    fn nec_undefined_for_equal_likelihoods() {
        assert!(matches!(nec(1.0, -10.0, -10.0), Err(Error::NecUndefined)));
    }
}
