//! The three benchmark control systems: a piecewise-linear min-selector loop,
//! a smooth cubic nonlinearity, and Artstein's circle with discontinuous
//! feedback. Each carries its Lyapunov certificate and a run configuration
//! that reproduces the reference convergence slopes.

use crate::engine::ProjectionConfig;
use crate::error::Error;
use crate::linalg::{self, Mat2};
use crate::math;
use crate::problem::{LyapunovSpec, ProblemSpec, Regime, SampleBall, SlackReport};
use crate::rng::GaussianSource;
use crate::schedule::{compute_k, SmoothingSchedule, StepSchedule};
use crate::Result;
use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// Closed-loop branch matrix A1 of the selector system.
pub const SELECTOR_A1: Mat2 = Mat2([[-5.0, -4.0], [-1.0, -2.0]]);
/// Input vector of the selector loop.
pub const SELECTOR_B: [f64; 2] = [3.0, 21.0];
/// Selector direction k = k2 - k1.
pub const SELECTOR_K: [f64; 2] = [1.0, 0.0];
/// Quadratic Lyapunov block on {k^T x >= 0}.
pub const SELECTOR_P: Mat2 = Mat2([[1.0, 0.0], [0.0, 3.0]]);
/// Rank-one correction weight eta of the second block.
pub const SELECTOR_ETA: f64 = 9.0;

/// Bound on |grad V| for the Artstein Lyapunov function: the supremum over
/// the unit sphere is 2 (attained in the limit x1 -> 0), inflated by 5%.
/// Re-derived numerically in `artstein_gradient_bound_derivation`.
pub const ARTSTEIN_GRAD_BOUND: f64 = 2.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemName {
    Selector,
    Khalil,
    Artstein,
}

/// Schedule, smoothing, projection, start point, and noise level that
/// reproduce the reference experiment for a benchmark.
pub struct RecommendedConfig {
    pub schedule: StepSchedule,
    pub smoothing: Option<SmoothingSchedule>,
    pub projection: ProjectionConfig,
    pub x0: Vec<f64>,
    pub sigma: f64,
}

pub struct BenchmarkSystem {
    pub name: SystemName,
    pub problem: ProblemSpec,
    pub lyapunov: LyapunovSpec,
    pub recommended: RecommendedConfig,
    /// Classifier of the control region, for Lipschitz checks of systems with
    /// discontinuous feedback (pairs are compared under the same control).
    pub same_control_region: Option<Box<dyn Fn(&[f64]) -> i8 + Send + Sync>>,
}

fn selector_p2() -> Mat2 {
    // P + eta k k^T
    Mat2([
        [SELECTOR_P.0[0][0] + SELECTOR_ETA, 0.0],
        [0.0, SELECTOR_P.0[1][1]],
    ])
}

fn selector_dynamics(x: &[f64], out: &mut [f64]) {
    let v = SELECTOR_A1.mul_vec([x[0], x[1]]);
    let sel = (SELECTOR_K[0] * x[0] + SELECTOR_K[1] * x[1]).min(0.0);
    out[0] = v[0] + SELECTOR_B[0] * sel;
    out[1] = v[1] + SELECTOR_B[1] * sel;
}

/// Min-selector control loop: F(x) = A1 x + B min{0, k^T x}, with the
/// piecewise-quadratic Lyapunov function x^T P x on {k^T x >= 0} and
/// x^T (P + eta k k^T) x on {k^T x < 0}.
pub fn selector_system() -> BenchmarkSystem {
    let p2 = selector_p2();
    let lmi = verify_selector_lmis().expect("selector LMIs verify");
    let (p_lo, p_hi) = linalg::sym2_eigenvalues(&SELECTOR_P);
    let (q_lo, q_hi) = linalg::sym2_eigenvalues(&p2);
    let c1a = p_lo.min(q_lo);
    let c2a = p_hi.max(q_hi);
    let grad_growth = 2.0 * c2a;
    let lipschitz_c = linalg::op_norm2(&SELECTOR_A1)
        + math::sqrt(SELECTOR_B[0] * SELECTOR_B[0] + SELECTOR_B[1] * SELECTOR_B[1]);
    let sigma = 1.0;

    let problem = ProblemSpec {
        dim: 2,
        x_star: vec![0.0, 0.0],
        dynamics: Box::new(selector_dynamics),
        lipschitz_c,
        noise_a: 2.0 * sigma * sigma,
        noise_b: 0.0,
    }
    .validated()
    .expect("selector problem is well formed");

    let lyapunov = LyapunovSpec {
        value: Box::new(move |x| {
            let m = if SELECTOR_K[0] * x[0] + SELECTOR_K[1] * x[1] >= 0.0 {
                &SELECTOR_P
            } else {
                &p2
            };
            let mx = m.mul_vec([x[0], x[1]]);
            x[0] * mx[0] + x[1] * mx[1]
        }),
        // One-sided limit from {k^T x < 0} on the kink; both blocks agree
        // there, so the selector is continuous across k^T x = 0.
        grad_select: Box::new(move |x, out| {
            let m = if SELECTOR_K[0] * x[0] + SELECTOR_K[1] * x[1] > 0.0 {
                &SELECTOR_P
            } else {
                &p2
            };
            let mx = m.mul_vec([x[0], x[1]]);
            out[0] = 2.0 * mx[0];
            out[1] = 2.0 * mx[1];
        }),
        a: 2.0,
        c: 1.0,
        gamma: lmi.gamma,
        c1a,
        c2a,
        grad_growth,
        grad_lipschitz: None,
        regime: Regime::NonsmoothExp,
    }
    .validated()
    .expect("selector Lyapunov spec is well formed");

    let (mu, _gamma_m) = crate::bounds::choose_mu_exp(
        2.0,
        lmi.gamma,
        lipschitz_c,
        c1a,
        c2a,
        grad_growth,
    )
    .expect("selector admits a positive envelope drift");

    BenchmarkSystem {
        name: SystemName::Selector,
        problem,
        lyapunov,
        recommended: RecommendedConfig {
            schedule: StepSchedule::new(2.0, 1.0, 50.0).unwrap(),
            smoothing: Some(SmoothingSchedule::new(mu, 0.0, 1.0).unwrap()),
            projection: ProjectionConfig::disabled(),
            x0: vec![1.0, 0.0],
            sigma,
        },
        same_control_region: None,
    }
}

fn khalil_dynamics(x: &[f64], out: &mut [f64]) {
    out[0] = -x[1] - x[0] * x[0] * x[0];
    out[1] = x[0] - x[1] * x[1] * x[1];
}

/// Smooth cubic system xdot = (-x2 - x1^3, x1 - x2^3) with V = |x|^2 / 2 and
/// drift Vdot = -(x1^4 + x2^4) <= -2 V^2, on the default projection ball.
pub fn khalil_system() -> BenchmarkSystem {
    khalil_system_with_radius(0.6)
}

/// Same system with an explicit projection radius; the Lipschitz constant on
/// the ball is 1 + 3 r^2 (rotation part plus the cubic Jacobian).
pub fn khalil_system_with_radius(r: f64) -> BenchmarkSystem {
    let sigma = 1.0;
    let lipschitz_c = 1.0 + 3.0 * r * r;
    let alpha = 0.05;
    let xi = 0.4;
    let k_big = compute_k(alpha, xi, lipschitz_c, 0.0, 2.0).expect("gamma > 0");

    let problem = ProblemSpec {
        dim: 2,
        x_star: vec![0.0, 0.0],
        dynamics: Box::new(khalil_dynamics),
        lipschitz_c,
        noise_a: 2.0 * sigma * sigma,
        noise_b: 0.0,
    }
    .validated()
    .expect("khalil problem is well formed");

    let lyapunov = LyapunovSpec {
        value: Box::new(|x| 0.5 * (x[0] * x[0] + x[1] * x[1])),
        grad_select: Box::new(|x, out| {
            out[0] = x[0];
            out[1] = x[1];
        }),
        a: 2.0,
        c: 2.0,
        gamma: 2.0,
        c1a: 0.5,
        c2a: 0.5,
        grad_growth: 1.0,
        grad_lipschitz: Some(1.0),
        regime: Regime::SmoothSubexp,
    }
    .validated()
    .expect("khalil Lyapunov spec is well formed");

    BenchmarkSystem {
        name: SystemName::Khalil,
        problem,
        lyapunov,
        recommended: RecommendedConfig {
            schedule: StepSchedule::new(alpha, xi, k_big).unwrap(),
            smoothing: None,
            projection: ProjectionConfig::enabled(r, ProjectionConfig::default_envelope(sigma, 2)),
            x0: vec![0.15, 0.15],
            sigma,
        },
        same_control_region: None,
    }
}

fn artstein_feedback(x1: f64) -> f64 {
    if x1 >= 0.0 {
        -1.0
    } else {
        1.0
    }
}

fn artstein_dynamics(x: &[f64], out: &mut [f64]) {
    let u = artstein_feedback(x[0]);
    out[0] = (x[0] * x[0] - x[1] * x[1]) * u;
    out[1] = 2.0 * x[0] * x[1] * u;
}

/// Gradient of V = sqrt(4 x1^2 + 3 x2^2) - |x1|; the kink line x1 = 0 takes
/// the one-sided limit from {x1 > 0}, and the origin maps to 0.
pub fn artstein_grad(x: &[f64], out: &mut [f64]) {
    let n = math::sqrt(4.0 * x[0] * x[0] + 3.0 * x[1] * x[1]);
    if n == 0.0 {
        out[0] = 0.0;
        out[1] = 0.0;
        return;
    }
    let sign = if x[0] >= 0.0 { 1.0 } else { -1.0 };
    out[0] = 4.0 * x[0] / n - sign;
    out[1] = 3.0 * x[1] / n;
}

pub fn artstein_value(x: &[f64]) -> f64 {
    math::sqrt(4.0 * x[0] * x[0] + 3.0 * x[1] * x[1]) - math::fabs(x[0])
}

/// Artstein's circle with the discontinuous stabilizing feedback u = -sign(x1)
/// and the nonsmooth Lyapunov function V = sqrt(4 x1^2 + 3 x2^2) - |x1|.
pub fn artstein_system() -> BenchmarkSystem {
    artstein_system_with_radius(10.0)
}

pub fn artstein_system_with_radius(d: f64) -> BenchmarkSystem {
    let sigma = 1.0;
    // Per fixed control the Jacobian is a scaled rotation of norm 2 |x|.
    let lipschitz_c = 2.0 * d;

    let problem = ProblemSpec {
        dim: 2,
        x_star: vec![0.0, 0.0],
        dynamics: Box::new(artstein_dynamics),
        lipschitz_c,
        noise_a: 2.0 * sigma * sigma,
        noise_b: 0.0,
    }
    .validated()
    .expect("artstein problem is well formed");

    let lyapunov = LyapunovSpec {
        value: Box::new(artstein_value),
        grad_select: Box::new(artstein_grad),
        a: 1.0,
        c: 2.0,
        gamma: 1.0 / 15.0,
        c1a: math::sqrt(3.0) - 1.0,
        c2a: 2.0,
        grad_growth: ARTSTEIN_GRAD_BOUND,
        grad_lipschitz: None,
        regime: Regime::NonsmoothSubexp,
    }
    .validated()
    .expect("artstein Lyapunov spec is well formed");

    let xi = 0.8;
    let k_big = 2.0;
    BenchmarkSystem {
        name: SystemName::Artstein,
        problem,
        lyapunov,
        recommended: RecommendedConfig {
            schedule: StepSchedule::new(0.04, xi, k_big).unwrap(),
            smoothing: Some(SmoothingSchedule::new(0.05, xi, k_big).unwrap()),
            projection: ProjectionConfig::enabled(d, ProjectionConfig::default_envelope(sigma, 2)),
            x0: vec![1.0, 1.0],
            sigma,
        },
        same_control_region: Some(Box::new(|x| if x[0] >= 0.0 { 1 } else { -1 })),
    }
}

/// Largest eigenvalues of the two region LMIs and the induced drift constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LmiReport {
    /// lambda_max(A1^T P + P A1), the {k^T x >= 0} region
    pub lmi1_max_eig: f64,
    /// lambda_max(A2^T P2 + P2 A2) with A2 = A1 + B k^T, the {k^T x < 0} region
    pub lmi2_max_eig: f64,
    /// gamma' = min_i -lambda_max(S_i): Vdot <= -gamma' |x|^2
    pub gamma_prime: f64,
    /// gamma = min_i -lambda_max(S_i)/lambda_max(P_i): Vdot <= -gamma V
    pub gamma: f64,
}

/// Verifies both selector LMIs A^T P + P A < 0 region by region and derives
/// the usable drift constant gamma.
pub fn verify_selector_lmis() -> Result<LmiReport> {
    let p2 = selector_p2();
    let a2 = SELECTOR_A1.add(&Mat2([
        [SELECTOR_B[0] * SELECTOR_K[0], SELECTOR_B[0] * SELECTOR_K[1]],
        [SELECTOR_B[1] * SELECTOR_K[0], SELECTOR_B[1] * SELECTOR_K[1]],
    ]));
    let s1 = SELECTOR_A1
        .transpose()
        .mul(&SELECTOR_P)
        .add(&SELECTOR_P.mul(&SELECTOR_A1));
    let s2 = a2.transpose().mul(&p2).add(&p2.mul(&a2));
    let (_, l1) = linalg::sym2_eigenvalues(&s1);
    let (_, l2) = linalg::sym2_eigenvalues(&s2);
    if l1 >= 0.0 || l2 >= 0.0 {
        return Err(Error::Verification(format!(
            "selector LMI not negative definite: lambda_max = ({l1:.6}, {l2:.6})"
        )));
    }
    let (_, p_hi) = linalg::sym2_eigenvalues(&SELECTOR_P);
    let (_, q_hi) = linalg::sym2_eigenvalues(&p2);
    Ok(LmiReport {
        lmi1_max_eig: l1,
        lmi2_max_eig: l2,
        gamma_prime: (-l1).min(-l2),
        gamma: (-l1 / p_hi).min(-l2 / q_hi),
    })
}

/// Largest LMI eigenvalue of the second region when the rank-one correction
/// is switched off (eta = 0). Positive: the single quadratic form P fails as
/// a common Lyapunov function, which is why the correction exists.
pub fn selector_lmi2_eig_without_eta() -> f64 {
    let a2 = SELECTOR_A1.add(&Mat2([
        [SELECTOR_B[0] * SELECTOR_K[0], SELECTOR_B[0] * SELECTOR_K[1]],
        [SELECTOR_B[1] * SELECTOR_K[0], SELECTOR_B[1] * SELECTOR_K[1]],
    ]));
    let s = a2
        .transpose()
        .mul(&SELECTOR_P)
        .add(&SELECTOR_P.mul(&a2));
    linalg::sym2_eigenvalues(&s).1
}

/// Report of the Artstein drift verification: the direct-slack form and the
/// equivalent polynomial form are evaluated at the same points.
#[derive(Debug, Clone, PartialEq)]
pub struct ArtsteinDriftReport {
    pub min_slack: f64,
    pub worst_x: Vec<f64>,
    pub min_poly_slack: f64,
    pub n_samples: usize,
    /// max |15 * drift_slack - 4 * poly_slack| over the samples (the two
    /// forms are algebraically proportional)
    pub max_form_mismatch: f64,
}

/// Samples the drift inequality Vdot <= -V^2/15 for the Artstein system and
/// cross-checks it against the polynomial form
/// 9 x1^2 <= |x1|(17 x1^2 + 9 x2^2)/sqrt(4 x1^2 + 3 x2^2) + (4 x1^2 + 3 x2^2).
pub fn verify_drift_artstein(
    n_samples: usize,
    ball_radius: f64,
    seed: u64,
) -> Result<ArtsteinDriftReport> {
    let mut rng = GaussianSource::new(seed);
    let mut report = ArtsteinDriftReport {
        min_slack: f64::INFINITY,
        worst_x: Vec::new(),
        min_poly_slack: f64::INFINITY,
        n_samples: 0,
        max_form_mismatch: 0.0,
    };
    let mut g = [0.0; 2];
    let mut f = [0.0; 2];
    while report.n_samples < n_samples {
        let x = crate::rng::uniform_in_ball(&mut rng, &[0.0, 0.0], ball_radius);
        if x[0] == 0.0 {
            continue;
        }
        artstein_grad(&x, &mut g);
        artstein_dynamics(&x, &mut f);
        let vdot = g[0] * f[0] + g[1] * f[1];
        let v = artstein_value(&x);
        let slack = -v * v / 15.0 - vdot;

        let n = math::sqrt(4.0 * x[0] * x[0] + 3.0 * x[1] * x[1]);
        let poly = math::fabs(x[0]) * (17.0 * x[0] * x[0] + 9.0 * x[1] * x[1]) / n
            + (4.0 * x[0] * x[0] + 3.0 * x[1] * x[1])
            - 9.0 * x[0] * x[0];
        report.max_form_mismatch = report
            .max_form_mismatch
            .max(math::fabs(15.0 * slack - 4.0 * poly));
        if slack < report.min_slack {
            report.min_slack = slack;
            report.worst_x = x.clone();
        }
        report.min_poly_slack = report.min_poly_slack.min(poly);
        report.n_samples += 1;
    }
    if report.min_slack < -1e-9 {
        return Err(Error::Verification(format!(
            "artstein drift violated: slack {} at {:?}",
            report.min_slack, report.worst_x
        )));
    }
    Ok(report)
}

/// All sampled assumption checks for one benchmark on a common test ball.
pub fn assumption_reports(sys: &BenchmarkSystem, ball: &SampleBall) -> Vec<(&'static str, SlackReport)> {
    let region = sys
        .same_control_region
        .as_ref()
        .map(|f| f.as_ref() as &(dyn Fn(&[f64]) -> i8 + Sync));
    vec![
        ("lipschitz", sys.problem.check_lipschitz(ball, region)),
        ("growth", sys.lyapunov.check_growth(&sys.problem.x_star, ball)),
        (
            "gradient_growth",
            sys.lyapunov.check_gradient_growth(&sys.problem.x_star, ball),
        ),
        ("drift", sys.lyapunov.check_drift(&sys.problem, ball)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selector_dynamics_examples() {
        let mut out = [0.0; 2];
        // k^T x = 1 > 0: selector inactive, F = A1 x.
        selector_dynamics(&[1.0, 0.0], &mut out);
        assert_eq!(out, [-5.0, -1.0]);
        // k^T x = -1: F = A1 x + B * (-1) = (5, 1) - (3, 21) = (2, -20).
        selector_dynamics(&[-1.0, 0.0], &mut out);
        assert_eq!(out, [2.0, -20.0]);
    }

    #[test]
    fn selector_lyapunov_continuous_at_kink() {
        let sys = selector_system();
        // k-component zero: both quadratic blocks agree (value 3 at (0, 1)).
        assert_eq!(sys.lyapunov.value(&[0.0, 1.0]), 3.0);
        let left = sys.lyapunov.value(&[-1e-12, 1.0]);
        let right = sys.lyapunov.value(&[1e-12, 1.0]);
        assert!((left - right).abs() < 1e-10);
        // The gradient selector is continuous across the kink too.
        let g_kink = sys.lyapunov.grad_select_vec(&[0.0, 2.0]);
        assert!((g_kink[0] - 0.0).abs() < 1e-15 && (g_kink[1] - 12.0).abs() < 1e-15);
    }

    #[test]
    fn selector_lmis_are_negative_definite() {
        let r = verify_selector_lmis().unwrap();
        // Closed forms: lambda_max(S1) = -11 + sqrt(50),
        // lambda_max(S2) = (-52 + sqrt(2384)) / 2.
        assert!((r.lmi1_max_eig - (-11.0 + 50f64.sqrt())).abs() < 1e-12);
        assert!((r.lmi2_max_eig - (-52.0 + 2384f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!(r.lmi1_max_eig < 0.0 && r.lmi2_max_eig < 0.0);
        assert!(r.gamma > 0.0 && r.gamma_prime > 0.0);
        let expect_gamma = (-r.lmi1_max_eig / 3.0).min(-r.lmi2_max_eig / 10.0);
        assert!((r.gamma - expect_gamma).abs() < 1e-15);
    }

    #[test]
    fn selector_without_eta_fails_second_lmi() {
        // Negative-test fixture: eta = 0 breaks the second region's LMI,
        // which is why the piecewise (non-smooth) Lyapunov function is needed.
        assert!(selector_lmi2_eig_without_eta() > 0.0);
    }

    #[test]
    fn khalil_examples() {
        let mut out = [0.0; 2];
        khalil_dynamics(&[1.0, 1.0], &mut out);
        assert_eq!(out, [-2.0, 0.0]);
        khalil_dynamics(&[0.0, 0.0], &mut out);
        assert_eq!(out, [0.0, 0.0]);
        // Drift equality point: V = 1, <grad V, F> = -2 = -2 V^2 at (1, 1).
        let sys = khalil_system();
        khalil_dynamics(&[1.0, 1.0], &mut out);
        let g = sys.lyapunov.grad_select_vec(&[1.0, 1.0]);
        let vdot = g[0] * out[0] + g[1] * out[1];
        assert_eq!(sys.lyapunov.value(&[1.0, 1.0]), 1.0);
        assert!((vdot + 2.0).abs() < 1e-15);
    }

    #[test]
    fn artstein_examples() {
        assert_eq!(artstein_value(&[1.0, 0.0]), 1.0);
        let mut f = [0.0; 2];
        artstein_dynamics(&[1.0, 0.0], &mut f);
        assert_eq!(f, [-1.0, 0.0]);
        // V on the x2 axis is sqrt(3) |x2|; sandwich ratio at (1, 0) is 1.
        assert!((artstein_value(&[0.0, 2.0]) - 2.0 * 3f64.sqrt()).abs() < 1e-15);
        let ratio = artstein_value(&[1.0, 0.0]) / 1.0;
        assert!(ratio >= 3f64.sqrt() - 1.0 && ratio <= 2.0);
    }

    #[test]
    fn artstein_drift_hand_example_and_samples() {
        // At (1, 0): Vdot = -2*2/2 + 1 = -1 <= -V^2/15 = -1/15.
        let mut g = [0.0; 2];
        let mut f = [0.0; 2];
        artstein_grad(&[1.0, 0.0], &mut g);
        artstein_dynamics(&[1.0, 0.0], &mut f);
        let vdot = g[0] * f[0] + g[1] * f[1];
        assert!((vdot + 1.0).abs() < 1e-15);

        let rep = verify_drift_artstein(10_000, 5.0, 321).unwrap();
        assert!(rep.min_slack >= -1e-9);
        assert!(rep.min_poly_slack >= 0.0);
        assert!(rep.max_form_mismatch < 1e-9 * (1.0 + rep.min_poly_slack.abs()) * 1e3);
    }

    #[test]
    fn artstein_drift_on_kink_neighbourhood_sweep() {
        let mut g = [0.0; 2];
        let mut f = [0.0; 2];
        for i in 0..2000 {
            let x2 = -5.0 + 10.0 * (i as f64 + 0.5) / 2000.0;
            for x1 in [1e-8, -1e-8] {
                let x = [x1, x2];
                artstein_grad(&x, &mut g);
                artstein_dynamics(&x, &mut f);
                let vdot = g[0] * f[0] + g[1] * f[1];
                let v = artstein_value(&x);
                assert!(
                    vdot <= -v * v / 15.0 + 1e-9,
                    "drift violated at ({x1}, {x2})"
                );
            }
        }
    }

    #[test]
    fn artstein_gradient_bound_derivation() {
        // Deterministic sphere sweep; the supremum of |grad V| is 2 and the
        // stored constant is that supremum inflated by 5%.
        let n = 100_000;
        let mut sup: f64 = 0.0;
        let mut g = [0.0; 2];
        for i in 0..n {
            let t = 2.0 * core::f64::consts::PI * (i as f64 + 0.5) / n as f64;
            let x = [t.cos(), t.sin()];
            artstein_grad(&x, &mut g);
            sup = sup.max((g[0] * g[0] + g[1] * g[1]).sqrt());
        }
        assert!(sup <= 2.0 + 1e-9, "sup = {sup}");
        assert!(sup > 1.99, "sweep should approach the limit value 2");
        assert!(ARTSTEIN_GRAD_BOUND >= 1.05 * sup - 1e-6);
        assert!(ARTSTEIN_GRAD_BOUND <= 1.05 * 2.0 + 1e-12);
    }

    #[test]
    fn all_benchmarks_pass_sampled_assumption_checks() {
        for sys in [selector_system(), khalil_system(), artstein_system()] {
            let radius = match sys.name {
                SystemName::Khalil => sys.recommended.projection.r,
                _ => 5.0,
            };
            let ball = SampleBall::new(sys.problem.x_star.clone(), radius, 1000, 2718);
            for (name, rep) in assumption_reports(&sys, &ball) {
                assert!(
                    rep.passed(),
                    "{:?}/{name}: min slack {} at {:?}",
                    sys.name,
                    rep.min_slack,
                    rep.worst_x
                );
            }
        }
    }

    #[test]
    fn selector_lipschitz_constant_is_operator_norm_sum() {
        let sys = selector_system();
        let expect = linalg::op_norm2(&SELECTOR_A1) + 450f64.sqrt();
        assert!((sys.problem.lipschitz_c - expect).abs() < 1e-12);
    }

    #[test]
    fn khalil_lipschitz_on_ball() {
        // C = 1 + 3 r^2 on the recommended ball.
        let sys = khalil_system_with_radius(0.6);
        assert!((sys.problem.lipschitz_c - 2.08).abs() < 1e-12);
    }
}
