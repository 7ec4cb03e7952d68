//! Empirical convergence-rate estimation and bound-versus-empirical
//! comparison.

use crate::engine::EnsembleStats;
use crate::error::Error;
use crate::math;
use crate::Result;
use alloc::format;
use alloc::vec::Vec;

/// Ordinary-least-squares fit of log mse against log k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// fitted index range (k_lo, k_hi)
    pub window: (u64, u64),
    pub n_points: usize,
}

/// OLS on (ln k, ln mse[k]) over k >= burn_in_frac * k_max (and k >= 1).
pub fn loglog_slope(stats: &EnsembleStats, burn_in_frac: f64) -> Result<RateFit> {
    let k_max = *stats.ks.last().ok_or_else(|| Error::Domain("empty stats".into()))?;
    let k_lo = (burn_in_frac * k_max as f64) as u64;
    loglog_slope_points(&stats.ks, &stats.mse, k_lo)
}

/// The same fit on raw (k, mse) points, keeping k >= max(burn_in_k, 1).
pub fn loglog_slope_points(ks: &[u64], mse: &[f64], burn_in_k: u64) -> Result<RateFit> {
    if !(0.0..).contains(&(burn_in_k as f64)) || ks.len() != mse.len() {
        return Err(Error::Domain("mismatched rate-fit inputs".into()));
    }
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    let mut window = (u64::MAX, 0u64);
    for (&k, &m) in ks.iter().zip(mse) {
        if k < 1 || k < burn_in_k {
            continue;
        }
        if !(m > 0.0) {
            return Err(Error::Domain(format!(
                "mse must be positive on the fit window, got {m} at k = {k}"
            )));
        }
        xs.push(math::ln(k as f64));
        ys.push(math::ln(m));
        window.0 = window.0.min(k);
        window.1 = window.1.max(k);
    }
    let n = xs.len();
    if n < 3 {
        return Err(Error::Domain(format!(
            "rate fit needs at least 3 points, got {n}"
        )));
    }
    let nf = n as f64;
    let mean_x = xs.iter().sum::<f64>() / nf;
    let mean_y = ys.iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::Domain("degenerate fit window (single k)".into()));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res = syy - slope * sxy;
    let r_squared = if syy > 0.0 {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(RateFit {
        slope,
        intercept,
        r_squared,
        window,
        n_points: n,
    })
}

/// Outcome of comparing an empirical curve against a theoretical bound with
/// a 3-stderr allowance.
#[derive(Debug, Clone, PartialEq)]
pub struct DominanceReport {
    /// fraction of indices with mse[k] <= bound[k] + 3 stderr[k]
    pub fraction: f64,
    /// (k, mse, allowance) for each violated index
    pub violations: Vec<(u64, f64, f64)>,
}

impl DominanceReport {
    pub fn passed(&self) -> bool {
        self.fraction == 1.0
    }
}

pub fn compare_to_bound(stats: &EnsembleStats, bound: &[f64]) -> Result<DominanceReport> {
    if bound.len() != stats.ks.len() {
        return Err(Error::Domain("bound curve length mismatch".into()));
    }
    let mut violations = Vec::new();
    for i in 0..bound.len() {
        let allowance = bound[i] + 3.0 * stats.stderr[i];
        if !(stats.mse[i] <= allowance) {
            violations.push((stats.ks[i], stats.mse[i], allowance));
        }
    }
    let n = bound.len().max(1);
    Ok(DominanceReport {
        fraction: (n - violations.len()) as f64 / n as f64,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn synthetic(ks: &[u64], f: impl Fn(f64) -> f64) -> EnsembleStats {
        EnsembleStats {
            ks: ks.to_vec(),
            mse: ks.iter().map(|&k| f(k as f64)).collect(),
            stderr: vec![0.0; ks.len()],
            n_reps: 1,
            base_seed: 0,
            stride: 1,
        }
    }

    #[test]
    fn exact_power_laws() {
        let ks: Vec<u64> = (1..=1000).collect();
        let s = synthetic(&ks, |k| 7.0 / k);
        let fit = loglog_slope(&s, 0.0).unwrap();
        assert!((fit.slope + 1.0).abs() < 1e-9, "slope {}", fit.slope);
        assert!(fit.r_squared > 1.0 - 1e-12);

        let s = synthetic(&ks, |k| 3.0 / k.powf(0.2));
        let fit = loglog_slope(&s, 0.0).unwrap();
        assert!((fit.slope + 0.2).abs() < 1e-9);
    }

    #[test]
    fn burn_in_window_is_respected() {
        let ks: Vec<u64> = (0..=100).collect();
        let s = synthetic(&ks, |k| if k < 10.0 { 100.0 } else { 1.0 / k });
        let fit = loglog_slope(&s, 0.1).unwrap();
        assert_eq!(fit.window.0, 10);
        assert_eq!(fit.window.1, 100);
        assert!((fit.slope + 1.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_nonpositive_mse_and_short_windows() {
        let ks: Vec<u64> = (1..=10).collect();
        let mut s = synthetic(&ks, |k| 1.0 / k);
        s.mse[5] = 0.0;
        assert!(loglog_slope(&s, 0.0).is_err());
        let s = synthetic(&[1, 2], |k| 1.0 / k);
        assert!(loglog_slope(&s, 0.0).is_err());
    }

    #[test]
    fn dominance_report_cases() {
        let ks: Vec<u64> = (1..=50).collect();
        let s = synthetic(&ks, |k| 1.0 / k);
        // +inf sentinel passes trivially.
        let inf = vec![f64::INFINITY; ks.len()];
        assert!(compare_to_bound(&s, &inf).unwrap().passed());
        // A bound that everywhere dominates passes.
        let b: Vec<f64> = s.mse.iter().map(|m| 2.0 * m).collect();
        assert!(compare_to_bound(&s, &b).unwrap().passed());
        // Halving the bound produces reported violations.
        let b: Vec<f64> = s.mse.iter().map(|m| 0.5 * m).collect();
        let rep = compare_to_bound(&s, &b).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.violations.len(), ks.len());
    }

    proptest! {
        #[test]
        fn slope_invariant_under_positive_rescaling(
            scale in 0.1f64..100.0,
            expo in 0.05f64..2.0,
        ) {
            let ks: Vec<u64> = (1..=200).collect();
            let s = synthetic(&ks, |k| 5.0 / k.powf(expo));
            let scaled = synthetic(&ks, |k| scale * 5.0 / k.powf(expo));
            let f1 = loglog_slope(&s, 0.0).unwrap();
            let f2 = loglog_slope(&scaled, 0.0).unwrap();
            prop_assert!((f1.slope - f2.slope).abs() <= 1e-12);
            prop_assert!((f1.slope + expo).abs() <= 1e-9);
        }
    }
}
