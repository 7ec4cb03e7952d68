//! Numerical proximal operator, Moreau envelopes of the rescaled Lyapunov
//! function R = V^(2/a), and checkers for the envelope inequalities used by
//! the finite-time analysis.

use crate::error::Error;
use crate::linalg;
use crate::math;
use crate::problem::LyapunovSpec;
use crate::rng::GaussianSource;
use crate::Result;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// Objective the prox minimizes over u: a value and a (sub)gradient selector.
pub trait ProxTarget: Sync {
    fn value(&self, x: &[f64]) -> f64;
    fn grad_into(&self, x: &[f64], out: &mut [f64]);

    fn grad_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; x.len()];
        self.grad_into(x, &mut g);
        g
    }
}

/// Quadratic-growth constants of a rescaled Lyapunov function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeConstants {
    /// lower quadratic constant C1a^(2/a)
    pub c1r: f64,
    /// upper quadratic constant C2a^(2/a)
    pub c2r: f64,
    /// envelope-gradient growth G_M = (2/a) G C2a^(2/a - 1)
    pub g_m: f64,
}

/// R = V^(2/a): quadratically bounded rescale of a Lyapunov function.
pub struct RescaledLyapunov<'a> {
    spec: &'a LyapunovSpec,
    constants: EnvelopeConstants,
}

/// Builds R = V^(2/a) with constants (C1a^(2/a), C2a^(2/a), G_M).
pub fn rescale_lyapunov(spec: &LyapunovSpec) -> Result<RescaledLyapunov<'_>> {
    if !(spec.a > 0.0) {
        return Err(Error::Domain(format!(
            "growth exponent must be positive, got {}",
            spec.a
        )));
    }
    let e = 2.0 / spec.a;
    Ok(RescaledLyapunov {
        spec,
        constants: EnvelopeConstants {
            c1r: math::powf(spec.c1a, e),
            c2r: math::powf(spec.c2a, e),
            g_m: e * spec.grad_growth * math::powf(spec.c2a, e - 1.0),
        },
    })
}

impl RescaledLyapunov<'_> {
    pub fn constants(&self) -> EnvelopeConstants {
        self.constants
    }
}

impl ProxTarget for RescaledLyapunov<'_> {
    fn value(&self, x: &[f64]) -> f64 {
        math::powf(self.spec.value(x), 2.0 / self.spec.a)
    }

    fn grad_into(&self, x: &[f64], out: &mut [f64]) {
        // Chain rule: grad R = (2/a) V^(2/a - 1) g_x; the limit at V = 0 is 0.
        let v = self.spec.value(x);
        if v <= 0.0 {
            out.fill(0.0);
            return;
        }
        self.spec.grad_select(x, out);
        let scale = (2.0 / self.spec.a) * math::powf(v, 2.0 / self.spec.a - 1.0);
        for o in out.iter_mut() {
            *o *= scale;
        }
    }
}

/// Prox solver settings. `tol` is on the norm of the objective gradient at
/// the returned minimizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProxSolverConfig {
    pub max_iters: usize,
    pub tol: f64,
    pub multistart_count: usize,
    pub multistart_radius: f64,
    pub seed: u64,
}

impl Default for ProxSolverConfig {
    fn default() -> Self {
        Self {
            max_iters: 10_000,
            tol: 1e-8,
            multistart_count: 4,
            multistart_radius: 0.5,
            seed: 0x5a1a_b00c,
        }
    }
}

impl ProxSolverConfig {
    pub fn validated(self) -> Result<Self> {
        if !(self.tol > 0.0) {
            return Err(Error::Domain("prox tolerance must be positive".into()));
        }
        if self.multistart_count < 1 {
            return Err(Error::Domain("need at least one start".into()));
        }
        Ok(self)
    }
}

/// prox_{mu R}(x) together with the envelope value and gradient.
#[derive(Debug, Clone, PartialEq)]
pub struct ProxResult {
    pub minimizer_u: Vec<f64>,
    pub envelope_value: f64,
    pub grad: Vec<f64>,
    pub solver_iters: usize,
    pub residual: f64,
}

/// Minimizes R(u) + |x - u|^2 / (2 mu) by projected gradient descent with an
/// Armijo backtracking line search, multistarted from x and perturbations of
/// it. grad = (x - u)/mu by the envelope theorem.
pub fn prox(r: &dyn ProxTarget, mu: f64, x: &[f64], cfg: &ProxSolverConfig) -> Result<ProxResult> {
    if !(mu > 0.0) {
        return Err(Error::Domain(format!("mu must be positive, got {mu}")));
    }
    let dim = x.len();
    let objective = |u: &[f64]| r.value(u) + linalg::sq_dist(x, u) / (2.0 * mu);

    // Local curvature probe for the initial step length 1/(L_local + 1/mu).
    let delta = 1e-4 * (1.0 + linalg::norm(x));
    let g0 = r.grad_vec(x);
    let mut l_local: f64 = 0.0;
    let mut probe = x.to_vec();
    for i in 0..dim {
        probe[i] += delta;
        let gi = r.grad_vec(&probe);
        probe[i] = x[i];
        l_local = l_local.max(linalg::dist(&gi, &g0) / delta);
    }
    let step0 = 1.0 / (l_local + 1.0 / mu);

    let mut starts: Vec<Vec<f64>> = Vec::with_capacity(cfg.multistart_count);
    starts.push(x.to_vec());
    let mut rng = GaussianSource::new(cfg.seed);
    for _ in 1..cfg.multistart_count {
        starts.push(crate::rng::uniform_in_ball(&mut rng, x, cfg.multistart_radius));
    }

    let mut best: Option<(f64, Vec<f64>, f64)> = None; // (objective, u, residual)
    let mut total_iters = 0usize;
    let mut grad_obj = vec![0.0; dim];
    let mut candidate = vec![0.0; dim];

    for start in starts {
        let mut u = start;
        let mut obj = objective(&u);
        let mut residual = f64::INFINITY;
        let mut step = step0;
        for _ in 0..cfg.max_iters {
            total_iters += 1;
            r.grad_into(&u, &mut grad_obj);
            for (g, (ui, xi)) in grad_obj.iter_mut().zip(u.iter().zip(x)) {
                *g += (ui - xi) / mu;
            }
            residual = linalg::norm(&grad_obj);
            if residual <= cfg.tol {
                break;
            }
            linalg::axpy_into(&u, -step, &grad_obj, &mut candidate);
            let cand_obj = objective(&candidate);
            // Measured decreases shrink below f64 resolution near the
            // minimum, so accept anything within float noise of non-increase
            // and let the step adapt around the curvature estimate.
            if cand_obj <= obj + 1e-14 * (1.0 + math::fabs(obj)) {
                u.copy_from_slice(&candidate);
                obj = cand_obj.min(obj);
                step = (step * 1.5).min(step0);
            } else {
                step *= 0.5;
                if step < 1e-18 {
                    break;
                }
            }
        }
        let replace = match &best {
            None => true,
            Some((b_obj, _, _)) => obj < *b_obj,
        };
        if replace {
            best = Some((obj, u, residual));
        }
    }

    let (envelope_value, minimizer_u, residual) = best.expect("at least one start");
    if residual > cfg.tol {
        return Err(Error::Convergence {
            residual,
            iters: total_iters,
            best_value: envelope_value,
            best_u: minimizer_u,
        });
    }
    let mut grad = vec![0.0; dim];
    for (g, (xi, ui)) in grad.iter_mut().zip(x.iter().zip(&minimizer_u)) {
        *g = (xi - ui) / mu;
    }
    Ok(ProxResult {
        minimizer_u,
        envelope_value,
        grad,
        solver_iters: total_iters,
        residual,
    })
}

/// M_mu(x): attained value of the prox objective.
pub fn envelope_value(r: &dyn ProxTarget, mu: f64, x: &[f64], cfg: &ProxSolverConfig) -> Result<f64> {
    Ok(prox(r, mu, x, cfg)?.envelope_value)
}

/// grad M_mu(x) = (x - u)/mu.
pub fn envelope_grad(
    r: &dyn ProxTarget,
    mu: f64,
    x: &[f64],
    cfg: &ProxSolverConfig,
) -> Result<Vec<f64>> {
    Ok(prox(r, mu, x, cfg)?.grad)
}

/// Envelope sandwich: returns the slacks of
/// M_mu(x) <= R(x)  and  R(x) <= (C2r/C1r + 2 C2r mu) M_mu(x).
pub fn check_sandwich(
    r: &dyn ProxTarget,
    k: &EnvelopeConstants,
    mu: f64,
    x: &[f64],
    cfg: &ProxSolverConfig,
) -> Result<(f64, f64)> {
    let m = envelope_value(r, mu, x, cfg)?;
    let rx = r.value(x);
    let upper_factor = k.c2r / k.c1r + 2.0 * k.c2r * mu;
    Ok((rx - m, upper_factor * m - rx))
}

/// Slack of the smoothing-parameter sensitivity bound
/// M_mu(x) - M_mu'(x) <= (mu' - mu) G_M^2 |x - x*|^2, for mu <= mu'.
pub fn envelope_mu_sensitivity(
    r: &dyn ProxTarget,
    k: &EnvelopeConstants,
    mu: f64,
    mu_prime: f64,
    x: &[f64],
    x_star: &[f64],
    cfg: &ProxSolverConfig,
) -> Result<f64> {
    if mu > mu_prime {
        return Err(Error::Domain(format!(
            "need mu <= mu_prime, got mu = {mu}, mu_prime = {mu_prime}"
        )));
    }
    if mu == mu_prime {
        return Ok(0.0);
    }
    let m_lo = envelope_value(r, mu, x, cfg)?;
    let m_hi = envelope_value(r, mu_prime, x, cfg)?;
    let bound = (mu_prime - mu) * k.g_m * k.g_m * linalg::sq_dist(x, x_star);
    Ok(bound - (m_lo - m_hi))
}

/// Slack of |u - x*| >= |x - x*| / (1 + mu G_M) with u = prox_{mu R}(x).
pub fn check_u_lower_bound(
    r: &dyn ProxTarget,
    k: &EnvelopeConstants,
    mu: f64,
    x: &[f64],
    x_star: &[f64],
    cfg: &ProxSolverConfig,
) -> Result<f64> {
    let res = prox(r, mu, x, cfg)?;
    let lhs = linalg::dist(&res.minimizer_u, x_star);
    let rhs = linalg::dist(x, x_star) / (1.0 + mu * k.g_m);
    Ok(lhs - rhs)
}

/// Slack of the exponential-case envelope drift
/// <grad M_mu(x), F(x)> <= -gamma_M M_mu(x).
pub fn check_drift_exp(
    r: &dyn ProxTarget,
    dynamics: &dyn Fn(&[f64], &mut [f64]),
    gamma_m: f64,
    mu: f64,
    x: &[f64],
    cfg: &ProxSolverConfig,
) -> Result<f64> {
    let res = prox(r, mu, x, cfg)?;
    let mut fx = vec![0.0; x.len()];
    dynamics(x, &mut fx);
    let lhs = linalg::dot(&res.grad, &fx);
    Ok(-gamma_m * res.envelope_value - lhs)
}

/// Drift constants of the sub-exponential envelope bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubexpDrift {
    pub a: f64,
    pub c: f64,
    pub gamma: f64,
    pub c1a: f64,
    pub c2a: f64,
    pub lipschitz_c: f64,
}

/// Slack of the sub-exponential envelope drift
/// <grad M_mu(x), F(x)> <=
///   -[2 gamma (C1a/C2a)^(c-1+2/a) / (a (1 + mu G_M)^2)] M_mu(x)^(a(c-1)/2 + 1)
///   + mu C G_M (C2r/C1r + 2 C2r mu) M_mu(x).
pub fn check_drift_subexp(
    r: &dyn ProxTarget,
    k: &EnvelopeConstants,
    d: &SubexpDrift,
    dynamics: &dyn Fn(&[f64], &mut [f64]),
    mu: f64,
    x: &[f64],
    cfg: &ProxSolverConfig,
) -> Result<f64> {
    let res = prox(r, mu, x, cfg)?;
    let mut fx = vec![0.0; x.len()];
    dynamics(x, &mut fx);
    let lhs = linalg::dot(&res.grad, &fx);
    let m = res.envelope_value;
    let d_ac = d.a * (d.c - 1.0) / 2.0 + 1.0;
    let neg = 2.0 * d.gamma * math::powf(d.c1a / d.c2a, d.c - 1.0 + 2.0 / d.a)
        / (d.a * (1.0 + mu * k.g_m) * (1.0 + mu * k.g_m));
    let pos = mu * d.lipschitz_c * k.g_m * (k.c2r / k.c1r + 2.0 * k.c2r * mu);
    let rhs = -neg * math::powf(m, d_ac) + pos * m;
    Ok(rhs - lhs)
}
