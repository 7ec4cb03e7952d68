//! Closed-form finite-time mean-square-error bounds for the four stability
//! regimes, with every constant spelled out (the fully explicit appendix-style
//! forms, not big-O shorthands).

use crate::error::Error;
use crate::math;
use crate::problem::Regime;
use crate::Result;
use alloc::format;

/// Everything the bound evaluators need: schedule, smoothing, Lyapunov and
/// problem constants, and the initial squared error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    pub regime: Regime,
    pub alpha: f64,
    pub xi: f64,
    pub k_big: f64,
    /// envelope smoothing scale; constant for NonsmoothExp, the scale of
    /// mu_k = mu / (k+K)^(xi/2) for NonsmoothSubexp
    pub mu: Option<f64>,
    /// envelope drift constant for NonsmoothExp (see [`gamma_m`])
    pub gamma_m: Option<f64>,
    /// polynomial growth exponent of V
    pub a: f64,
    /// stability exponent
    pub c: f64,
    /// drift constant of V
    pub gamma: f64,
    pub c1a: f64,
    pub c2a: f64,
    /// gradient growth constant G
    pub grad_growth: f64,
    /// gradient-Lipschitz constant L (smooth regimes)
    pub grad_lipschitz: Option<f64>,
    /// Lipschitz constant C of the dynamics
    pub lipschitz_c: f64,
    pub noise_a: f64,
    pub noise_b: f64,
    pub x_star_norm: f64,
    /// |x0 - x*|^2
    pub e0: f64,
}

const BRANCH_EPS: f64 = 1e-12;

impl BoundParams {
    /// A + 2 B |x*|^2, the equilibrium noise level.
    pub fn noise_level(&self) -> f64 {
        self.noise_a + 2.0 * self.noise_b * self.x_star_norm * self.x_star_norm
    }

    /// d_ac = a (c - 1) / 2 + 1.
    pub fn d_ac(&self) -> f64 {
        self.a * (self.c - 1.0) / 2.0 + 1.0
    }

    /// d = 3 d_ac / (3 d_ac - 1).
    pub fn d(&self) -> f64 {
        let dac = self.d_ac();
        3.0 * dac / (3.0 * dac - 1.0)
    }

    /// Sub-exponential step threshold
    /// tau = (1 / ((2c - 1) A^(1-1/c) gamma^(1/c)))^(c/(2c-1)).
    pub fn tau(&self) -> f64 {
        let c = self.c;
        let denom = (2.0 * c - 1.0)
            * math::powf(self.noise_a, 1.0 - 1.0 / c)
            * math::powf(self.gamma, 1.0 / c);
        math::powf(1.0 / denom, c / (2.0 * c - 1.0))
    }

    /// phi = alpha^(2-1/c) A^(1-1/c) gamma^(1/c) (smooth sub-exponential decay).
    pub fn phi_smooth(&self) -> f64 {
        math::powf(self.alpha, 2.0 - 1.0 / self.c)
            * math::powf(self.noise_a, 1.0 - 1.0 / self.c)
            * math::powf(self.gamma, 1.0 / self.c)
    }

    /// G_M = (2/a) G C2a^(2/a - 1).
    pub fn g_m(&self) -> f64 {
        (2.0 / self.a) * self.grad_growth * math::powf(self.c2a, 2.0 / self.a - 1.0)
    }

    /// N_C = (C^2 + 1)(A + 2 B |x*|^2).
    pub fn n_c(&self) -> f64 {
        (self.lipschitz_c * self.lipschitz_c + 1.0) * self.noise_level()
    }

    /// mu_0 = mu / K^(xi/2), the initial smoothing parameter.
    pub fn mu0(&self) -> Result<f64> {
        let mu = self
            .mu
            .ok_or_else(|| Error::Domain("mu is required for envelope bounds".into()))?;
        Ok(mu / math::powf(self.k_big, 0.5 * self.xi))
    }

    pub fn nu1(&self) -> Result<f64> {
        let mu0 = self.mu0()?;
        let e = 2.0 / self.a;
        let c1r = math::powf(self.c1a, e);
        let c2r = math::powf(self.c2a, e);
        Ok(self.lipschitz_c * self.g_m() * (c2r / c1r + 2.0 * c2r * mu0))
    }

    pub fn nu2(&self) -> Result<f64> {
        let mu0 = self.mu0()?;
        let c1r = math::powf(self.c1a, 2.0 / self.a);
        let gm = self.g_m();
        Ok(gm * gm * (1.0 / c1r + 2.0 * mu0))
    }

    pub fn nu3(&self) -> Result<f64> {
        let mu0 = self.mu0()?;
        let c1r = math::powf(self.c1a, 2.0 / self.a);
        let gm = self.g_m();
        Ok((self.lipschitz_c * self.lipschitz_c + 1.0)
            * (2.0 * self.noise_b + 1.0)
            * (mu0 * mu0 * gm * gm + 1.0)
            * (0.5 / c1r + mu0))
    }

    /// nu4 = 2 gamma (C1a/C2a)^(c-1+2/a) / (a (1 + mu0 G_M)^2).
    pub fn nu4(&self) -> Result<f64> {
        let mu0 = self.mu0()?;
        let gm = self.g_m();
        Ok(2.0 * self.gamma * math::powf(self.c1a / self.c2a, self.c - 1.0 + 2.0 / self.a)
            / (self.a * (1.0 + mu0 * gm) * (1.0 + mu0 * gm)))
    }

    /// phi = 0.5 d_ac alpha^(2-1/d_ac) nu4^(1/d_ac)
    ///       ((mu0^2 G_M^2 + 1) N_C / (2 mu))^(1 - 1/d_ac).
    pub fn phi_nonsmooth(&self) -> Result<f64> {
        let dac = self.d_ac();
        let mu = self.mu.unwrap_or(f64::NAN);
        let mu0 = self.mu0()?;
        let gm = self.g_m();
        let load = (mu0 * mu0 * gm * gm + 1.0) * self.n_c() / (2.0 * mu);
        Ok(0.5
            * dac
            * math::powf(self.alpha, 2.0 - 1.0 / dac)
            * math::powf(self.nu4()?, 1.0 / dac)
            * math::powf(load, 1.0 - 1.0 / dac))
    }

    /// omega = d_ac alpha^2 (mu0^2 G_M^2 + 1) N_C / (2 mu).
    pub fn omega(&self) -> Result<f64> {
        let dac = self.d_ac();
        let mu = self.mu.unwrap_or(f64::NAN);
        let mu0 = self.mu0()?;
        let gm = self.g_m();
        Ok(dac * self.alpha * self.alpha * (mu0 * mu0 * gm * gm + 1.0) * self.n_c() / (2.0 * mu))
    }
}

/// Envelope drift constant of the exponential nonsmooth case:
/// gamma_M = [2 gamma C1a^(2/a) / (a (1 + mu G_M)^2) - mu C G_M^2] C2a^(-2/a).
/// May be negative for large mu.
pub fn gamma_m(
    mu: f64,
    a: f64,
    gamma: f64,
    lipschitz_c: f64,
    c1a: f64,
    c2a: f64,
    grad_growth: f64,
) -> f64 {
    let e = 2.0 / a;
    let g_m = e * grad_growth * math::powf(c2a, e - 1.0);
    let pos = 2.0 * gamma * math::powf(c1a, e) / (a * (1.0 + mu * g_m) * (1.0 + mu * g_m));
    let neg = mu * lipschitz_c * g_m * g_m;
    (pos - neg) / math::powf(c2a, e)
}

/// Picks mu maximizing gamma_M over (0, 1] by golden-section search.
/// gamma_M is decreasing in mu, so the search settles at the lower edge of
/// the bracket (1e-6); kept as a search so a different shape still works.
pub fn choose_mu_exp(
    a: f64,
    gamma: f64,
    lipschitz_c: f64,
    c1a: f64,
    c2a: f64,
    grad_growth: f64,
) -> Result<(f64, f64)> {
    const MU_LO: f64 = 1e-6;
    const MU_CAP: f64 = 1.0;
    let f = |mu: f64| gamma_m(mu, a, gamma, lipschitz_c, c1a, c2a, grad_growth);
    let inv_phi = 0.618_033_988_749_894_9;
    let (mut lo, mut hi) = (MU_LO, MU_CAP);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..120 {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    let (mu, g) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    let (mu, g) = if f(MU_LO) > g { (MU_LO, f(MU_LO)) } else { (mu, g) };
    if g > 0.0 {
        Ok((mu, g))
    } else {
        Err(Error::Search(format!(
            "no positive gamma_M below mu = {MU_CAP} (best {g:.3e} at mu = {mu:.3e})"
        )))
    }
}

fn check_xi(xi: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&xi) {
        return Err(Error::Domain(format!("xi must lie in [0, 1], got {xi}")));
    }
    Ok(())
}

/// Shared three-branch noise tail for the exponential-style bounds at xi = 1:
/// rate is alpha * gamma_drift; returns the factor multiplying the noise
/// prefactor.
fn exp_noise_tail_xi1(alpha: f64, rate: f64, kk: f64) -> f64 {
    if rate < 2.0 - BRANCH_EPS {
        8.0 * alpha * alpha / (2.0 - rate) / math::powf(kk, 0.5 * rate)
    } else if rate > 2.0 + BRANCH_EPS {
        8.0 * core::f64::consts::E * alpha * alpha / (rate - 2.0) / kk
    } else {
        4.0 * alpha * alpha * math::ln(kk) / kk
    }
}

/// Theorem-style bound for smooth exponentially stable systems.
pub fn bound_smooth_exp(p: &BoundParams, k: u64) -> Result<f64> {
    check_xi(p.xi)?;
    let l = p
        .grad_lipschitz
        .ok_or_else(|| Error::Domain("smooth bound requires the gradient-Lipschitz constant".into()))?;
    let (alpha, xi, kb) = (p.alpha, p.xi, p.k_big);
    let kk = k as f64 + kb;
    let pref_t = (p.c2a / p.c1a) * p.e0;
    let noise_pref = l * p.noise_level() / p.c1a;
    let rate = alpha * p.gamma;
    let bound = if xi == 1.0 {
        pref_t * math::powf(kb / kk, 0.5 * rate) + noise_pref * exp_noise_tail_xi1(alpha, rate, kk)
    } else if xi == 0.0 {
        let base = (1.0 - 0.5 * rate).max(0.0);
        pref_t * math::powf(base, k as f64) + 2.0 * alpha * noise_pref / p.gamma
    } else {
        let decay = 0.5 * rate * (math::powf(kk, 1.0 - xi) - math::powf(kb, 1.0 - xi)) / (1.0 - xi);
        pref_t * math::exp(-decay) + 4.0 * alpha * noise_pref / (p.gamma * math::powf(kk, xi))
    };
    Ok(bound)
}

/// Theorem-style bound for nonsmooth exponentially stable systems
/// (Moreau-envelope Lyapunov function with constant mu).
pub fn bound_nonsmooth_exp(p: &BoundParams, k: u64) -> Result<f64> {
    check_xi(p.xi)?;
    let gm = p
        .gamma_m
        .ok_or_else(|| Error::Domain("nonsmooth exponential bound requires gamma_M".into()))?;
    if !(gm > 0.0) {
        return Err(Error::Domain(format!(
            "gamma_M must be positive, got {gm}"
        )));
    }
    let mu = p
        .mu
        .ok_or_else(|| Error::Domain("nonsmooth exponential bound requires mu".into()))?;
    let (alpha, xi, kb) = (p.alpha, p.xi, p.k_big);
    let kk = k as f64 + kb;
    let c1r = math::powf(p.c1a, 2.0 / p.a);
    let c2r = math::powf(p.c2a, 2.0 / p.a);
    let growth = 1.0 / c1r + 2.0 * mu;
    let pref_t = c2r * growth * p.e0;
    let noise_pref = growth * p.noise_level() / mu;
    let rate = alpha * gm;
    let bound = if xi == 1.0 {
        pref_t * math::powf(kb / kk, 0.5 * rate) + noise_pref * exp_noise_tail_xi1(alpha, rate, kk)
    } else if xi == 0.0 {
        let base = (1.0 - 0.5 * rate).max(0.0);
        pref_t * math::powf(base, k as f64) + 2.0 * alpha * noise_pref / gm
    } else {
        let decay = 0.5 * rate * (math::powf(kk, 1.0 - xi) - math::powf(kb, 1.0 - xi)) / (1.0 - xi);
        pref_t * math::exp(-decay) + 4.0 * alpha * noise_pref / (gm * math::powf(kk, xi))
    };
    Ok(bound)
}

/// Theorem-style bound for smooth sub-exponentially stable systems. For
/// c = 1 this is exactly the smooth exponential bound.
pub fn bound_smooth_subexp(p: &BoundParams, k: u64) -> Result<f64> {
    check_xi(p.xi)?;
    if p.c == 1.0 {
        return bound_smooth_exp(p, k);
    }
    let l = p
        .grad_lipschitz
        .ok_or_else(|| Error::Domain("smooth bound requires the gradient-Lipschitz constant".into()))?;
    let c = p.c;
    let xi_max = c / (2.0 * c - 1.0);
    if p.xi > xi_max + BRANCH_EPS {
        return Err(Error::Domain(format!(
            "xi = {} exceeds the sub-exponential window c/(2c-1) = {xi_max}",
            p.xi
        )));
    }
    // Initial-step smallness that lets the drift absorb the quadratic term.
    let alpha0 = p.alpha / math::powf(p.k_big, p.xi);
    let cb = p.lipschitz_c * p.lipschitz_c + 2.0 * p.noise_b;
    let alpha_cap = math::powf(p.c1a, c) * math::powf(c - 1.0, c) * math::powf(p.noise_a, c - 1.0)
        * p.gamma
        / (math::powf(l, c) * math::powf(cb, c));
    if alpha0 > alpha_cap {
        return Err(Error::Domain(format!(
            "initial step {alpha0:.3e} violates the smallness condition {alpha_cap:.3e}"
        )));
    }
    let (alpha, xi, kb) = (p.alpha, p.xi, p.k_big);
    let kk = k as f64 + kb;
    let phi = p.phi_smooth();
    let d = 2.0 * c / (2.0 * c - 1.0);
    let pref_t = (p.c2a / p.c1a) * p.e0;
    let noise_scale = l * (c * p.noise_a + 2.0 * p.noise_b * p.x_star_norm * p.x_star_norm) / p.c1a;
    let bound = if (xi - xi_max).abs() <= BRANCH_EPS {
        let trans = pref_t * math::powf(kb / kk, phi);
        let tail = if phi < d - 1.0 - BRANCH_EPS {
            math::powf(2.0, d) * alpha * alpha / ((d - 1.0 - phi) * math::powf(kk, phi))
        } else if phi > d - 1.0 + BRANCH_EPS {
            core::f64::consts::E * math::powf(2.0, d) * alpha * alpha
                / ((phi - (d - 1.0)) * math::powf(kk, d - 1.0))
        } else {
            math::powf(2.0, d) * alpha * alpha * math::ln(kk) / math::powf(kk, d - 1.0)
        };
        trans + noise_scale * tail
    } else if xi == 0.0 {
        let base = (1.0 - phi).max(0.0);
        pref_t * math::powf(base, k as f64) + noise_scale * alpha * alpha / phi
    } else {
        let xi_eff = (2.0 * c - 1.0) * xi / c;
        let decay = phi * (math::powf(kk, 1.0 - xi_eff) - math::powf(kb, 1.0 - xi_eff)) / (1.0 - xi_eff);
        pref_t * math::exp(-decay) + 2.0 * alpha * alpha / (p.c1a * phi * math::powf(kk, xi / c))
    };
    Ok(bound)
}

/// Theorem-style bound for nonsmooth sub-exponentially stable systems
/// (time-varying Moreau envelope mu_k = mu / (k+K)^(xi/2)).
pub fn bound_nonsmooth_subexp(p: &BoundParams, k: u64) -> Result<f64> {
    check_xi(p.xi)?;
    let d = p.d();
    let xi_max = 2.0 * d / 3.0;
    if p.xi > xi_max + BRANCH_EPS {
        return Err(Error::Domain(format!(
            "xi = {} exceeds the window 2d/3 = {xi_max}",
            p.xi
        )));
    }
    let (alpha, xi, kb) = (p.alpha, p.xi, p.k_big);
    let kk = k as f64 + kb;
    let dac = p.d_ac();
    let mu0 = p.mu0()?;
    let phi = p.phi_nonsmooth()?;
    let omega = p.omega()?;
    let c1r = math::powf(p.c1a, 2.0 / p.a);
    let c2r = math::powf(p.c2a, 2.0 / p.a);
    let growth = 1.0 / c1r + 2.0 * mu0;
    let pref_t = c2r * growth * p.e0;
    let bound = if (xi - xi_max).abs() <= BRANCH_EPS {
        let trans = pref_t * math::powf(kb / kk, phi);
        let a32 = math::powf(alpha, 1.5);
        let tail = if phi < d - 1.0 - BRANCH_EPS {
            math::powf(2.0, d) * a32 * omega / ((d - 1.0 - phi) * math::powf(kk, phi))
        } else if phi > d - 1.0 + BRANCH_EPS {
            core::f64::consts::E * math::powf(2.0, d) * a32 * omega
                / ((phi - (d - 1.0)) * math::powf(kk, d - 1.0))
        } else {
            math::powf(2.0, d) * a32 * omega * math::ln(kk) / math::powf(kk, d - 1.0)
        };
        trans + growth * tail
    } else if xi == 0.0 {
        let base = (1.0 - phi).max(0.0);
        pref_t * math::powf(base, k as f64) + omega * growth / phi
    } else {
        let xi_eff = (3.0 * dac - 1.0) * xi / (2.0 * dac);
        let decay = phi * (math::powf(kk, 1.0 - xi_eff) - math::powf(kb, 1.0 - xi_eff)) / (1.0 - xi_eff);
        pref_t * math::exp(-decay)
            + 2.0 * math::powf(alpha, 1.5) * omega * growth
                / (phi * math::powf(kk, xi / (2.0 * dac)))
    };
    Ok(bound)
}

/// Dispatches to the regime's evaluator.
pub fn evaluate(p: &BoundParams, k: u64) -> Result<f64> {
    match p.regime {
        Regime::SmoothExp => bound_smooth_exp(p, k),
        Regime::NonsmoothExp => bound_nonsmooth_exp(p, k),
        Regime::SmoothSubexp => bound_smooth_subexp(p, k),
        Regime::NonsmoothSubexp => bound_nonsmooth_subexp(p, k),
    }
}
