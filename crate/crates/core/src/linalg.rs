//! Small dense helpers: vector ops and closed-form 2x2 spectral quantities.

use crate::math;
use alloc::vec::Vec;

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    math::sqrt(dot(a, a))
}

#[inline]
pub fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    math::sqrt(sq_dist(a, b))
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// out = x + s * y
pub fn axpy_into(x: &[f64], s: f64, y: &[f64], out: &mut [f64]) {
    for ((o, xi), yi) in out.iter_mut().zip(x).zip(y) {
        *o = xi + s * yi;
    }
}

/// Row-major 2x2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub fn mul_vec(&self, x: [f64; 2]) -> [f64; 2] {
        [
            self.0[0][0] * x[0] + self.0[0][1] * x[1],
            self.0[1][0] * x[0] + self.0[1][1] * x[1],
        ]
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2([
            [self.0[0][0], self.0[1][0]],
            [self.0[0][1], self.0[1][1]],
        ])
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &o.0;
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        Mat2([
            [self.0[0][0] + o.0[0][0], self.0[0][1] + o.0[0][1]],
            [self.0[1][0] + o.0[1][0], self.0[1][1] + o.0[1][1]],
        ])
    }
}

/// Eigenvalues (min, max) of a symmetric 2x2 matrix via trace/determinant.
pub fn sym2_eigenvalues(s: &Mat2) -> (f64, f64) {
    let p = s.0[0][0];
    let q = 0.5 * (s.0[0][1] + s.0[1][0]);
    let r = s.0[1][1];
    let mid = 0.5 * (p + r);
    let rad = math::sqrt(0.25 * (p - r) * (p - r) + q * q);
    (mid - rad, mid + rad)
}

/// Spectral norm of a 2x2 matrix: sqrt(lambda_max(M^T M)).
pub fn op_norm2(m: &Mat2) -> f64 {
    let mtm = m.transpose().mul(m);
    let (_, lmax) = sym2_eigenvalues(&mtm);
    math::sqrt(lmax.max(0.0))
}
