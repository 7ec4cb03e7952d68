//! Problem and Lyapunov specifications with sampled assumption checks.
//!
//! Checks are Monte-Carlo over a configured test ball, not symbolic; the
//! default tolerance on inequalities is 1e-9 absolute.

use crate::error::Error;
use crate::linalg;
use crate::math;
use crate::rng::{uniform_in_ball, GaussianSource};
use crate::Result;
use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

pub const CHECK_TOL: f64 = 1e-9;

/// Closed-loop vector field oracle: writes F(x) into `out`.
pub type VectorFn = Box<dyn Fn(&[f64], &mut [f64]) + Send + Sync>;
/// Scalar oracle, e.g. a Lyapunov value.
pub type ScalarFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Stability regime tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    SmoothExp,
    NonsmoothExp,
    SmoothSubexp,
    NonsmoothSubexp,
}

impl Regime {
    pub fn is_smooth(self) -> bool {
        matches!(self, Regime::SmoothExp | Regime::SmoothSubexp)
    }

    pub fn is_exponential(self) -> bool {
        matches!(self, Regime::SmoothExp | Regime::NonsmoothExp)
    }
}

/// The noisy recursion's problem data: dimension, equilibrium, closed-loop
/// dynamics (feedback folded in), Lipschitz constant, and the noise
/// second-moment constants A, B.
pub struct ProblemSpec {
    pub dim: usize,
    pub x_star: Vec<f64>,
    pub dynamics: VectorFn,
    pub lipschitz_c: f64,
    pub noise_a: f64,
    pub noise_b: f64,
}

impl ProblemSpec {
    /// Validates field domains and stationarity of `x_star`.
    pub fn validated(self) -> Result<Self> {
        if self.dim == 0 || self.x_star.len() != self.dim {
            return Err(Error::Domain(format!(
                "x_star must have length dim = {}",
                self.dim
            )));
        }
        if !(self.lipschitz_c > 0.0) || self.noise_a < 0.0 || self.noise_b < 0.0 {
            return Err(Error::Domain(
                "lipschitz_c must be positive; noise constants nonnegative".into(),
            ));
        }
        let f_star = self.dynamics_vec(&self.x_star);
        let n = linalg::norm(&f_star);
        if n > CHECK_TOL {
            return Err(Error::Verification(format!(
                "x_star is not stationary: |F(x_star)| = {n:.3e}"
            )));
        }
        Ok(self)
    }

    #[inline]
    pub fn dynamics(&self, x: &[f64], out: &mut [f64]) {
        (self.dynamics)(x, out)
    }

    pub fn dynamics_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.dynamics(x, &mut out);
        out
    }

    /// Sampled Lipschitz check |F(x) - F(y)| <= C |x - y| + tol over random
    /// pairs in the test ball. `region_of` restricts pairs to a common region
    /// (the Lipschitz assumption fixes the control input, so systems with
    /// discontinuous feedback compare points under the same control).
    pub fn check_lipschitz(
        &self,
        ball: &SampleBall,
        region_of: Option<&(dyn Fn(&[f64]) -> i8 + Sync)>,
    ) -> SlackReport {
        let mut rng = GaussianSource::new(ball.seed);
        let mut report = SlackReport::new(ball.tol);
        let mut fx = vec![0.0; self.dim];
        let mut fy = vec![0.0; self.dim];
        for _ in 0..ball.n {
            let x = uniform_in_ball(&mut rng, &ball.center, ball.radius);
            let y = match region_of {
                None => uniform_in_ball(&mut rng, &ball.center, ball.radius),
                Some(region) => {
                    let rx = region(&x);
                    let mut y = uniform_in_ball(&mut rng, &ball.center, ball.radius);
                    let mut tries = 0;
                    while region(&y) != rx && tries < 64 {
                        y = uniform_in_ball(&mut rng, &ball.center, ball.radius);
                        tries += 1;
                    }
                    if region(&y) != rx {
                        continue;
                    }
                    y
                }
            };
            self.dynamics(&x, &mut fx);
            self.dynamics(&y, &mut fy);
            let slack = self.lipschitz_c * linalg::dist(&x, &y) - linalg::dist(&fx, &fy);
            report.record(slack, &x);
        }
        report
    }
}

/// Lyapunov function with a generalized-gradient selector and the growth,
/// gradient-growth, and drift constants of its stability certificate.
pub struct LyapunovSpec {
    pub value: ScalarFn,
    pub grad_select: VectorFn,
    /// polynomial growth exponent (>= 1)
    pub a: f64,
    /// stability exponent (>= 1; 1 for exponential regimes)
    pub c: f64,
    /// drift constant: <g, F> <= -gamma V^c
    pub gamma: f64,
    pub c1a: f64,
    pub c2a: f64,
    /// gradient growth: |g_x| <= G |x - x*|^(a-1)
    pub grad_growth: f64,
    /// gradient-Lipschitz constant; present exactly in smooth regimes
    pub grad_lipschitz: Option<f64>,
    pub regime: Regime,
}

impl LyapunovSpec {
    pub fn validated(self) -> Result<Self> {
        if !(self.a >= 1.0) || !(self.c >= 1.0) {
            return Err(Error::Domain(format!(
                "exponents must satisfy a >= 1, c >= 1 (a = {}, c = {})",
                self.a, self.c
            )));
        }
        if !(self.gamma > 0.0) || !(self.c1a > 0.0) || !(self.c2a >= self.c1a) {
            return Err(Error::Domain(
                "need gamma > 0 and 0 < C1a <= C2a".into(),
            ));
        }
        if !(self.grad_growth > 0.0) {
            return Err(Error::Domain("gradient growth constant must be positive".into()));
        }
        if self.regime.is_exponential() && self.c != 1.0 {
            return Err(Error::Domain(format!(
                "exponential regimes require c = 1, got c = {}",
                self.c
            )));
        }
        if !self.regime.is_exponential() && self.c <= 1.0 {
            return Err(Error::Domain("sub-exponential regimes require c > 1".into()));
        }
        if self.regime.is_smooth() != self.grad_lipschitz.is_some() {
            return Err(Error::Domain(
                "gradient-Lipschitz constant present iff the regime is smooth".into(),
            ));
        }
        if let Some(l) = self.grad_lipschitz {
            if !(l > 0.0) {
                return Err(Error::Domain("gradient-Lipschitz constant must be positive".into()));
            }
        }
        Ok(self)
    }

    #[inline]
    pub fn value(&self, x: &[f64]) -> f64 {
        (self.value)(x)
    }

    #[inline]
    pub fn grad_select(&self, x: &[f64], out: &mut [f64]) {
        (self.grad_select)(x, out)
    }

    pub fn grad_select_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; x.len()];
        self.grad_select(x, &mut g);
        g
    }

    /// Sampled polynomial growth: C1a |x-x*|^a <= V(x) <= C2a |x-x*|^a, and
    /// V(x*) = 0.
    pub fn check_growth(&self, x_star: &[f64], ball: &SampleBall) -> SlackReport {
        let mut rng = GaussianSource::new(ball.seed);
        let mut report = SlackReport::new(ball.tol);
        report.record(-math::fabs(self.value(x_star)), x_star);
        for _ in 0..ball.n {
            let x = uniform_in_ball(&mut rng, &ball.center, ball.radius);
            let v = self.value(&x);
            let pow = math::powf(linalg::dist(&x, x_star), self.a);
            report.record(v - self.c1a * pow, &x);
            report.record(self.c2a * pow - v, &x);
        }
        report
    }

    /// Sampled gradient growth: |grad_select(x)| <= G |x-x*|^(a-1).
    pub fn check_gradient_growth(&self, x_star: &[f64], ball: &SampleBall) -> SlackReport {
        let mut rng = GaussianSource::new(ball.seed);
        let mut report = SlackReport::new(ball.tol);
        for _ in 0..ball.n {
            let x = uniform_in_ball(&mut rng, &ball.center, ball.radius);
            let g = self.grad_select_vec(&x);
            let cap = self.grad_growth * math::powf(linalg::dist(&x, x_star), self.a - 1.0);
            report.record(cap - linalg::norm(&g), &x);
        }
        report
    }

    /// Sampled drift: <grad_select(x), F(x)> <= -gamma V(x)^c.
    pub fn check_drift(&self, problem: &ProblemSpec, ball: &SampleBall) -> SlackReport {
        let mut rng = GaussianSource::new(ball.seed);
        let mut report = SlackReport::new(ball.tol);
        let mut fx = vec![0.0; problem.dim];
        for _ in 0..ball.n {
            let x = uniform_in_ball(&mut rng, &ball.center, ball.radius);
            problem.dynamics(&x, &mut fx);
            let g = self.grad_select_vec(&x);
            let lhs = linalg::dot(&g, &fx);
            let rhs = -self.gamma * math::powf(self.value(&x), self.c);
            report.record(rhs - lhs, &x);
        }
        report
    }
}

/// Sampling region and budget for the Monte-Carlo assumption checks.
#[derive(Debug, Clone)]
pub struct SampleBall {
    pub center: Vec<f64>,
    pub radius: f64,
    pub n: usize,
    pub seed: u64,
    pub tol: f64,
}

impl SampleBall {
    pub fn new(center: Vec<f64>, radius: f64, n: usize, seed: u64) -> Self {
        Self {
            center,
            radius,
            n,
            seed,
            tol: CHECK_TOL,
        }
    }
}

/// Minimum slack seen by a sampled inequality check; negative slack below
/// -tol is a violation.
#[derive(Debug, Clone, PartialEq)]
pub struct SlackReport {
    pub min_slack: f64,
    pub worst_x: Vec<f64>,
    pub n_checked: usize,
    pub n_violations: usize,
    pub tol: f64,
}

impl SlackReport {
    pub fn new(tol: f64) -> Self {
        Self {
            min_slack: f64::INFINITY,
            worst_x: Vec::new(),
            n_checked: 0,
            n_violations: 0,
            tol,
        }
    }

    pub fn record(&mut self, slack: f64, x: &[f64]) {
        self.n_checked += 1;
        if slack < self.min_slack {
            self.min_slack = slack;
            self.worst_x = x.to_vec();
        }
        if slack < -self.tol {
            self.n_violations += 1;
        }
    }

    pub fn passed(&self) -> bool {
        self.n_violations == 0
    }
}
