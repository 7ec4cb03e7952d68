//! Power-law step-size and smoothing schedules and their admissibility checks.

use crate::error::Error;
use crate::math;
use crate::Result;
use alloc::format;

/// Step sizes alpha_k = alpha / (k + K)^xi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepSchedule {
    pub alpha: f64,
    pub xi: f64,
    pub k_big: f64,
}

impl StepSchedule {
    pub fn new(alpha: f64, xi: f64, k_big: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::Domain(format!("alpha must be positive, got {alpha}")));
        }
        if !(0.0..=1.0).contains(&xi) {
            return Err(Error::Domain(format!("xi must lie in [0, 1], got {xi}")));
        }
        if !(k_big >= 1.0) {
            return Err(Error::Domain(format!("K must be >= 1, got {k_big}")));
        }
        Ok(Self { alpha, xi, k_big })
    }

    #[inline]
    pub fn step_size(&self, k: u64) -> f64 {
        self.alpha / math::powf(k as f64 + self.k_big, self.xi)
    }
}

/// Smoothing parameters mu_k = mu / (k + K)^(xi / 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothingSchedule {
    pub mu: f64,
    pub xi: f64,
    pub k_big: f64,
}

impl SmoothingSchedule {
    pub fn new(mu: f64, xi: f64, k_big: f64) -> Result<Self> {
        if !(mu > 0.0) {
            return Err(Error::Domain(format!("mu must be positive, got {mu}")));
        }
        if !(0.0..=1.0).contains(&xi) {
            return Err(Error::Domain(format!("xi must lie in [0, 1], got {xi}")));
        }
        if !(k_big >= 1.0) {
            return Err(Error::Domain(format!("K must be >= 1, got {k_big}")));
        }
        Ok(Self { mu, xi, k_big })
    }

    #[inline]
    pub fn smoothing_param(&self, k: u64) -> f64 {
        self.mu / math::powf(k as f64 + self.k_big, 0.5 * self.xi)
    }
}

/// The offset K that keeps the initial step below gamma_eff / (4 C^2 + 8 B).
///
/// Branches: xi = 0 gives K = 1; xi = 1 gives max{1, alpha (4C^2 + 8B) / gamma};
/// xi in (0, 1) adds the (2 xi / (alpha gamma))^(1/(1-xi)) term.
pub fn compute_k(alpha: f64, xi: f64, lipschitz_c: f64, noise_b: f64, gamma_eff: f64) -> Result<f64> {
    if !(gamma_eff > 0.0) {
        return Err(Error::Domain(format!(
            "gamma_eff must be positive, got {gamma_eff}"
        )));
    }
    if !(0.0..=1.0).contains(&xi) {
        return Err(Error::Domain(format!("xi must lie in [0, 1], got {xi}")));
    }
    let base = alpha * (4.0 * lipschitz_c * lipschitz_c + 8.0 * noise_b) / gamma_eff;
    let k = if xi == 0.0 {
        1.0
    } else if xi == 1.0 {
        base.max(1.0)
    } else {
        let t1 = math::powf(base, 1.0 / xi);
        let t2 = math::powf(2.0 * xi / (alpha * gamma_eff), 1.0 / (1.0 - xi));
        t1.max(t2).max(1.0)
    };
    Ok(k)
}

/// Analytic admissibility of a power-law schedule, decided by p-series
/// exponents (sum k^-p diverges iff p <= 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionReport {
    /// sum alpha_k = +inf
    pub sum_alpha_diverges: bool,
    /// sum alpha_k^2 < +inf
    pub sum_alpha_sq_converges: bool,
    /// sum alpha_k^(2 - 1/c) = +inf
    pub subexp_condition: bool,
    /// xi in (2/3, 2d/3] with d = 3 d_ac / (3 d_ac - 1), d_ac = a(c-1)/2 + 1
    pub nonsmooth_subexp_window: bool,
}

pub fn validate_step_conditions(s: &StepSchedule, c: f64, a: f64) -> ConditionReport {
    let xi = s.xi;
    let d_ac = a * (c - 1.0) / 2.0 + 1.0;
    let d = 3.0 * d_ac / (3.0 * d_ac - 1.0);
    ConditionReport {
        sum_alpha_diverges: xi <= 1.0,
        sum_alpha_sq_converges: 2.0 * xi > 1.0,
        subexp_condition: xi * (2.0 - 1.0 / c) <= 1.0,
        nonsmooth_subexp_window: xi > 2.0 / 3.0 && xi <= 2.0 * d / 3.0,
    }
}
