//! Core library of the stochastic-approximation lab.
//!
//! Everything here is pure and deterministic: the noisy recursion
//! `x_{k+1} = x_k + alpha_k (F(x_k) + w_k)`, step-size and smoothing
//! schedules, Moreau-envelope machinery for nonsmooth Lyapunov functions,
//! closed-form finite-time bound evaluators, the three benchmark control
//! systems, and log-log rate fitting. IO, CLI, and file formats live in the
//! companion `salab` crate.
//!
//! The crate is `no_std`-compatible (`--no-default-features --features libm`);
//! it only needs `alloc`.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

#[cfg(not(any(feature = "std", feature = "libm")))]
compile_error!("salab-core needs either the `std` feature or the `libm` feature");

extern crate alloc;

pub mod analysis;
pub mod bounds;
pub mod engine;
pub mod error;
pub mod linalg;
pub(crate) mod math;
pub mod moreau;
pub mod problem;
pub mod rng;
pub mod schedule;
pub mod systems;

pub use error::Error;

pub type Result<T> = core::result::Result<T, Error>;
