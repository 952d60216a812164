//! Smoothed quantile estimators.
//!
//! The estimator `q̂(z, h)` minimizes the empirical objective
//!
//! ```text
//! M(q; z, h) = (1/n) Σ [ |Yᵢ − q| − z (Yᵢ − q) + (h/2) (Yᵢ − q)² ]
//! ```
//!
//! With `h = 0` and `z ∈ (−1, 1)` this is the empirical quantile of order
//! `(1 − z)/2`; as `h → ∞` it converges to the sample mean. Along the line
//! `z(τ, h) = 1 − 2τ + h (m − F⁻¹(τ))` every member targets the same
//! population quantile, and the asymptotic variance `v(τ, h)` decides how
//! much smoothing helps.
//!
//! The crate is split the same way:
//!
//! - [`distributions`]: analytic Normal, Laplace and asymmetric Laplace
//!   models plus inverse-transform sampling.
//! - [`estimator`]: exact computation of `q̂(z, h)` from a [`Sample`].
//! - [`asymptotics`]: population minimizer, CLT variance, variance
//!   coefficients, case classification and optimal smoothing.
//! - [`simulation`]: seeded Monte Carlo checks of the variance formulas.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod asymptotics;
pub mod distributions;
pub mod error;
pub mod estimator;
pub mod rng;
pub mod simulation;

mod special;

pub use asymptotics::{
    EfficiencyCase, EfficiencyCondition, EfficiencyReport, SmoothingOptimum, VarianceCoefficients,
};
pub use distributions::{Distribution, Family};
pub use error::{Error, Result};
pub use estimator::{Sample, SmoothingParams};
pub use simulation::{SimulationConfig, SimulationReport, Target};
