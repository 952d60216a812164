//! Analytic probability models.
//!
//! Each model exposes the population quantities the variance calculus needs:
//! density, cdf, quantile, mean, variance and `E|Y − q|`. Sampling is by
//! inverse transform of one seeded uniform stream, so the same seed drives
//! every family through the same uniforms.
//!
//! The asymmetric Laplace `AL(μ, b, κ)` uses the parameterization with
//!
//! ```text
//! f(y) = κ / (b (1 + κ²)) · exp(−(κ/b)(y − μ))     y ≥ μ
//!        κ / (b (1 + κ²)) · exp( (y − μ)/(b κ))    y < μ
//! ```
//!
//! for which `E[Y] = μ + b (1/κ − κ)`, `Var(Y) = b² (1 + κ⁴)/κ²` and
//! `F(μ) = κ²/(1 + κ²)`. With `κ = 1` it is `Laplace(μ, b)`.

use alloc::vec::Vec;

use libm::{exp, expm1, log, log1p};
use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::estimator::Sample;
use crate::rng;
use crate::special::{std_normal_cdf, std_normal_pdf, std_normal_quantile};

/// Parametric family with its raw parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Normal { mu: f64, sigma: f64 },
    Laplace { mu: f64, b: f64 },
    AsymmetricLaplace { mu: f64, b: f64, kappa: f64 },
}

/// A validated distribution model. Scale and shape parameters are finite
/// and strictly positive, locations finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Distribution {
    family: Family,
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Parameter { name, value })
    }
}

fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Parameter { name, value })
    }
}

fn check_level(p: f64) -> Result<f64> {
    if p > 0.0 && p < 1.0 {
        Ok(p)
    } else {
        Err(Error::Probability(p))
    }
}

impl Distribution {
    pub fn new(family: Family) -> Result<Self> {
        match family {
            Family::Normal { mu, sigma } => {
                finite("mu", mu)?;
                positive("sigma", sigma)?;
            }
            Family::Laplace { mu, b } => {
                finite("mu", mu)?;
                positive("b", b)?;
            }
            Family::AsymmetricLaplace { mu, b, kappa } => {
                finite("mu", mu)?;
                positive("b", b)?;
                positive("kappa", kappa)?;
            }
        }
        Ok(Distribution { family })
    }

    pub fn normal(mu: f64, sigma: f64) -> Result<Self> {
        Self::new(Family::Normal { mu, sigma })
    }

    pub fn laplace(mu: f64, b: f64) -> Result<Self> {
        Self::new(Family::Laplace { mu, b })
    }

    pub fn asymmetric_laplace(mu: f64, b: f64, kappa: f64) -> Result<Self> {
        Self::new(Family::AsymmetricLaplace { mu, b, kappa })
    }

    pub fn standard_normal() -> Self {
        Distribution {
            family: Family::Normal { mu: 0.0, sigma: 1.0 },
        }
    }

    pub fn standard_laplace() -> Self {
        Distribution {
            family: Family::Laplace { mu: 0.0, b: 1.0 },
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn pdf(&self, x: f64) -> f64 {
        match self.family {
            Family::Normal { mu, sigma } => std_normal_pdf((x - mu) / sigma) / sigma,
            Family::Laplace { mu, b } => 0.5 * exp(-(x - mu).abs() / b) / b,
            Family::AsymmetricLaplace { mu, b, kappa } => {
                let norm = kappa / (b * (1.0 + kappa * kappa));
                if x >= mu {
                    norm * exp(-kappa * (x - mu) / b)
                } else {
                    norm * exp((x - mu) / (b * kappa))
                }
            }
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match self.family {
            Family::Normal { mu, sigma } => std_normal_cdf((x - mu) / sigma),
            Family::Laplace { mu, b } => {
                if x < mu {
                    0.5 * exp((x - mu) / b)
                } else {
                    1.0 - 0.5 * exp(-(x - mu) / b)
                }
            }
            Family::AsymmetricLaplace { mu, b, kappa } => {
                let (below, above) = al_masses(kappa);
                if x < mu {
                    below * exp((x - mu) / (b * kappa))
                } else {
                    1.0 - above * exp(-kappa * (x - mu) / b)
                }
            }
        }
    }

    /// `F⁻¹(p)` for `p ∈ (0, 1)`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        let p = check_level(p)?;
        Ok(match self.family {
            Family::Normal { mu, sigma } => mu + sigma * std_normal_quantile(p),
            Family::Laplace { mu, b } => {
                if p < 0.5 {
                    mu + b * log(2.0 * p)
                } else {
                    mu - b * log(2.0 * (1.0 - p))
                }
            }
            Family::AsymmetricLaplace { mu, b, kappa } => {
                let (below, above) = al_masses(kappa);
                if p < below {
                    mu + b * kappa * log(p / below)
                } else {
                    mu - (b / kappa) * log((1.0 - p) / above)
                }
            }
        })
    }

    pub fn mean(&self) -> f64 {
        match self.family {
            Family::Normal { mu, .. } | Family::Laplace { mu, .. } => mu,
            Family::AsymmetricLaplace { mu, b, kappa } => mu + b * (1.0 / kappa - kappa),
        }
    }

    pub fn variance(&self) -> f64 {
        match self.family {
            Family::Normal { sigma, .. } => sigma * sigma,
            Family::Laplace { b, .. } => 2.0 * b * b,
            Family::AsymmetricLaplace { b, kappa, .. } => {
                let k2 = kappa * kappa;
                b * b * (1.0 + k2 * k2) / k2
            }
        }
    }

    pub fn std_dev(&self) -> f64 {
        libm::sqrt(self.variance())
    }

    /// `E|Y − q|`.
    pub fn mean_abs_dev(&self, q: f64) -> f64 {
        match self.family {
            Family::Normal { mu, sigma } => {
                let u = (q - mu) / sigma;
                sigma * (u * (2.0 * std_normal_cdf(u) - 1.0) + 2.0 * std_normal_pdf(u))
            }
            Family::Laplace { mu, b } => {
                let t = (q - mu).abs();
                t + b * exp(-t / b)
            }
            Family::AsymmetricLaplace { mu, b, kappa } => {
                // E|Y − q| = (m − q) + 2 ∫_{−∞}^{q} F(y) dy, evaluated per branch.
                let (below, above) = al_masses(kappa);
                let m = self.mean();
                if q < mu {
                    let integral = below * b * kappa * exp((q - mu) / (b * kappa));
                    (m - q) + 2.0 * integral
                } else {
                    // ∫_{−∞}^{μ} F = below·bκ; ∫_μ^q F = (q − μ) − above·(b/κ)(1 − e^{−κ(q−μ)/b}).
                    let t = q - mu;
                    let tail = -above * (b / kappa) * expm1(-kappa * t / b);
                    (m - mu) + t + 2.0 * (below * b * kappa - tail)
                }
            }
        }
    }

    /// `n` i.i.d. draws from `seed`, by inverse transform of
    /// [`rng::open_unit`] uniforms from [`rng::stream`]`(seed)`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Sample> {
        let mut stream = rng::stream(seed);
        self.sample_with(n, &mut stream)
    }

    pub fn sample_with<R: RngCore + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Sample> {
        if n == 0 {
            return Err(Error::EmptySample);
        }
        let mut values = Vec::with_capacity(n);
        values.extend((0..n).map(|_| self.draw(rng)));
        Sample::new(values)
    }

    /// One inverse-transform draw.
    pub fn draw<R: RngCore + ?Sized>(&self, rng: &mut R) -> f64 {
        let u = rng::open_unit(rng);
        // u is strictly inside (0, 1), so the quantile cannot fail.
        self.quantile_unchecked(u)
    }

    fn quantile_unchecked(&self, u: f64) -> f64 {
        match self.family {
            Family::Normal { mu, sigma } => mu + sigma * std_normal_quantile(u),
            Family::Laplace { mu, b } => {
                if u < 0.5 {
                    mu + b * log(2.0 * u)
                } else {
                    mu - b * log1p(-(2.0 * u - 1.0))
                }
            }
            Family::AsymmetricLaplace { .. } => self.quantile(u).unwrap_or(f64::NAN),
        }
    }
}

/// Probability mass below and above μ for `AL(μ, b, κ)`.
fn al_masses(kappa: f64) -> (f64, f64) {
    let k2 = kappa * kappa;
    (k2 / (1.0 + k2), 1.0 / (1.0 + k2))
}
