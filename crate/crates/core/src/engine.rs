//! The noisy recursion x_{k+1} = x_k + alpha_k (F(x_k) + w_k), the radial
//! projection safeguard, trajectory recording, and Monte-Carlo estimation of
//! the mean squared error E|x_k - x*|^2.

use crate::error::Error;
use crate::linalg;
use crate::math;
use crate::problem::ProblemSpec;
use crate::rng::{derive_rep_seed, GaussianSource};
use crate::schedule::StepSchedule;
use crate::Result;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// Any |component| beyond this aborts a trajectory as diverged.
pub const DIVERGENCE_GUARD: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseKind {
    Gaussian,
}

/// Per-component i.i.d. noise; E|w|^2 = dim * sigma^2, so Assumption-style
/// constants are A = dim * sigma^2, B = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub kind: NoiseKind,
    pub sigma: f64,
    pub seed: u64,
}

impl NoiseModel {
    pub fn gaussian(sigma: f64, seed: u64) -> Result<Self> {
        if sigma < 0.0 {
            return Err(Error::Domain(format!("sigma must be nonnegative, got {sigma}")));
        }
        Ok(Self {
            kind: NoiseKind::Gaussian,
            sigma,
            seed,
        })
    }
}

/// Radial projection safeguard. The trigger is the deterministic surrogate
/// |x + alpha F(x)| + alpha * noise_envelope > r; a triggered iterate is
/// reset to the sphere of radius r/4 and that reset is the whole step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionConfig {
    pub enabled: bool,
    pub r: f64,
    pub noise_envelope: f64,
}

impl ProjectionConfig {
    pub fn disabled() -> Self {
        Self {
            enabled: false,
            r: f64::INFINITY,
            noise_envelope: 0.0,
        }
    }

    pub fn enabled(r: f64, noise_envelope: f64) -> Self {
        Self {
            enabled: true,
            r,
            noise_envelope,
        }
    }

    /// Default envelope for per-component Gaussian noise: 6 sigma sqrt(dim).
    pub fn default_envelope(sigma: f64, dim: usize) -> f64 {
        6.0 * sigma * math::sqrt(dim as f64)
    }

    /// Requires r > 6 |x*| when enabled.
    pub fn validate(&self, x_star: &[f64]) -> Result<()> {
        if self.enabled {
            let need = 6.0 * linalg::norm(x_star);
            if !(self.r > need) {
                return Err(Error::Domain(format!(
                    "projection radius must exceed 6 |x*| = {need}, got {}",
                    self.r
                )));
            }
            if self.noise_envelope < 0.0 {
                return Err(Error::Domain("noise envelope must be nonnegative".into()));
            }
        }
        Ok(())
    }
}

/// One recorded sample path (possibly decimated by `stride`).
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// recorded iteration indices (0, stride, 2*stride, ..., k_max)
    pub ks: Vec<u64>,
    pub states: Vec<Vec<f64>>,
    pub sq_errors: Vec<f64>,
    pub projections_applied: Vec<u64>,
    pub seed: u64,
}

/// Per-iteration Monte-Carlo estimate of E|x_k - x*|^2.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleStats {
    pub ks: Vec<u64>,
    pub mse: Vec<f64>,
    pub stderr: Vec<f64>,
    pub n_reps: usize,
    pub base_seed: u64,
    pub stride: u64,
}

/// One update x + alpha (F(x) + w); errors out on non-finite or diverging
/// components.
pub fn sa_step(p: &ProblemSpec, x: &[f64], alpha: f64, w: &[f64], k: u64) -> Result<Vec<f64>> {
    let mut fx = vec![0.0; p.dim];
    p.dynamics(x, &mut fx);
    let mut next = vec![0.0; p.dim];
    for i in 0..p.dim {
        next[i] = x[i] + alpha * (fx[i] + w[i]);
        if !next[i].is_finite() || math::fabs(next[i]) > DIVERGENCE_GUARD {
            return Err(Error::NonFinite { k, rep: None });
        }
    }
    Ok(next)
}

/// Projection decision for the pre-noise step from `x_cur`. `x_next_mean`
/// must equal x_cur + alpha F(x_cur). Returns the projected iterate when the
/// trigger fires, None to proceed with the unmodified noisy step.
pub fn project_if_needed(
    x_next_mean: &[f64],
    x_cur: &[f64],
    alpha: f64,
    cfg: &ProjectionConfig,
) -> Option<Vec<f64>> {
    if !cfg.enabled {
        return None;
    }
    if linalg::norm(x_next_mean) + alpha * cfg.noise_envelope <= cfg.r {
        return None;
    }
    let n = linalg::norm(x_cur);
    if n == 0.0 {
        return Some(vec![0.0; x_cur.len()]);
    }
    let scale = cfg.r / (4.0 * n);
    Some(x_cur.iter().map(|xi| xi * scale).collect())
}

/// Runs the recursion for `k_max` iterations, recording every `stride`-th
/// state (plus the final one). Deterministic given the seed and configs.
pub fn run_trajectory(
    p: &ProblemSpec,
    s: &StepSchedule,
    proj: &ProjectionConfig,
    noise: &NoiseModel,
    x0: &[f64],
    k_max: u64,
    stride: u64,
) -> Result<Trajectory> {
    if k_max < 1 {
        return Err(Error::Domain("k_max must be at least 1".into()));
    }
    let stride = stride.max(1);
    if x0.len() != p.dim {
        return Err(Error::Domain("x0 dimension mismatch".into()));
    }
    proj.validate(&p.x_star)?;

    let mut gauss = GaussianSource::new(noise.seed);
    let mut x = x0.to_vec();
    let mut fx = vec![0.0; p.dim];
    let mut mean_next = vec![0.0; p.dim];
    let mut w = vec![0.0; p.dim];

    let n_rec = (k_max / stride + 2) as usize;
    let mut traj = Trajectory {
        ks: Vec::with_capacity(n_rec),
        states: Vec::with_capacity(n_rec),
        sq_errors: Vec::with_capacity(n_rec),
        projections_applied: Vec::new(),
        seed: noise.seed,
    };
    let record = |k: u64, x: &[f64], t: &mut Trajectory| {
        t.ks.push(k);
        t.states.push(x.to_vec());
        t.sq_errors.push(linalg::sq_dist(x, &p.x_star));
    };
    record(0, &x, &mut traj);

    for k in 0..k_max {
        let alpha = s.step_size(k);
        p.dynamics(&x, &mut fx);
        linalg::axpy_into(&x, alpha, &fx, &mut mean_next);
        if let Some(projected) = project_if_needed(&mean_next, &x, alpha, proj) {
            traj.projections_applied.push(k);
            x = projected;
        } else {
            gauss.fill_scaled(noise.sigma, &mut w);
            for i in 0..p.dim {
                x[i] = mean_next[i] + alpha * w[i];
                if !x[i].is_finite() || math::fabs(x[i]) > DIVERGENCE_GUARD {
                    return Err(Error::NonFinite { k, rep: None });
                }
            }
        }
        let next_k = k + 1;
        if next_k % stride == 0 || next_k == k_max {
            record(next_k, &x, &mut traj);
        }
    }
    Ok(traj)
}

/// Order-fixed Welford accumulator over replications; pushing the same
/// per-replication curves in the same order always reproduces the same
/// statistics bit for bit, regardless of how the curves were computed.
#[derive(Debug, Clone)]
pub struct EnsembleAccumulator {
    ks: Vec<u64>,
    mean: Vec<f64>,
    m2: Vec<f64>,
    count: usize,
    base_seed: u64,
    stride: u64,
}

impl EnsembleAccumulator {
    pub fn new(ks: Vec<u64>, base_seed: u64, stride: u64) -> Self {
        let n = ks.len();
        Self {
            ks,
            mean: vec![0.0; n],
            m2: vec![0.0; n],
            count: 0,
            base_seed,
            stride,
        }
    }

    pub fn push(&mut self, sq_errors: &[f64]) -> Result<()> {
        if sq_errors.len() != self.ks.len() {
            return Err(Error::Domain("replication length mismatch".into()));
        }
        self.count += 1;
        let n = self.count as f64;
        for (i, &e) in sq_errors.iter().enumerate() {
            let delta = e - self.mean[i];
            self.mean[i] += delta / n;
            self.m2[i] += delta * (e - self.mean[i]);
        }
        Ok(())
    }

    pub fn finish(self) -> EnsembleStats {
        let n = self.count;
        let stderr = if n >= 2 {
            self.m2
                .iter()
                .map(|&m2| math::sqrt(m2.max(0.0) / ((n - 1) as f64 * n as f64)))
                .collect()
        } else {
            vec![0.0; self.m2.len()]
        };
        EnsembleStats {
            ks: self.ks,
            mse: self.mean,
            stderr,
            n_reps: n,
            base_seed: self.base_seed,
            stride: self.stride,
        }
    }
}

/// Runs `n_reps` independent replications (replication i draws from the
/// stream derived from (noise.seed, i)) and reduces them in replication
/// order.
pub fn run_ensemble(
    p: &ProblemSpec,
    s: &StepSchedule,
    proj: &ProjectionConfig,
    noise: &NoiseModel,
    x0: &[f64],
    k_max: u64,
    n_reps: usize,
    stride: u64,
) -> Result<EnsembleStats> {
    if n_reps < 1 {
        return Err(Error::Domain("need at least one replication".into()));
    }
    let mut acc: Option<EnsembleAccumulator> = None;
    for rep in 0..n_reps {
        let rep_noise = NoiseModel {
            seed: derive_rep_seed(noise.seed, rep as u64),
            ..*noise
        };
        let traj = run_trajectory(p, s, proj, &rep_noise, x0, k_max, stride).map_err(|e| {
            match e {
                Error::NonFinite { k, .. } => Error::NonFinite {
                    k,
                    rep: Some(rep as u64),
                },
                other => other,
            }
        })?;
        let acc = acc.get_or_insert_with(|| {
            EnsembleAccumulator::new(traj.ks.clone(), noise.seed, stride.max(1))
        });
        acc.push(&traj.sq_errors)?;
    }
    Ok(acc.expect("n_reps >= 1").finish())
}
