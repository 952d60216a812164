//! Seeded Monte Carlo validation of the CLT variance.
//!
//! A run draws `R` independent samples of size `n`, computes `q̂` on each and
//! compares `n · Var(q̂)` to the predicted asymptotic variance. Replicate `r`
//! uses the stream [`rng::replicate_seed`]`(seed, r)`, so
//! [`Experiment::replicate`] can be evaluated in any order (or in parallel by
//! a caller) and [`Experiment::summarize`] over the estimates in replicate
//! order gives the same report bit for bit.

use alloc::vec::Vec;

use libm::sqrt;

use crate::asymptotics::{self, population_minimizer, sigma2};
use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::estimator::{estimate, SmoothingParams};
use crate::rng;

/// Standardized-error levels reported by default.
pub const DEFAULT_LEVELS: [f64; 5] = [0.05, 0.25, 0.5, 0.75, 0.95];

/// What the replicated estimator targets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    /// Quantile level τ with smoothing `h`; `z` is re-solved as `z(τ, h)`.
    Quantile { tau: f64, h: f64 },
    /// A raw `(z, h)` pair, targeting `q(z, h)`.
    Raw(SmoothingParams),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub distribution: Distribution,
    pub target: Target,
    pub n: usize,
    pub replications: usize,
    pub seed: u64,
    /// Levels at which the empirical quantiles of `√n (q̂ − q)/σ` are reported.
    pub levels: Vec<f64>,
}

impl SimulationConfig {
    pub fn new(
        distribution: Distribution,
        target: Target,
        n: usize,
        replications: usize,
        seed: u64,
    ) -> Self {
        SimulationConfig {
            distribution,
            target,
            n,
            replications,
            seed,
            levels: DEFAULT_LEVELS.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Config("sample size n must be at least 2"));
        }
        if self.replications < 2 {
            return Err(Error::Config("at least 2 replications are needed for a variance"));
        }
        if self.levels.iter().any(|&p| !(p > 0.0 && p < 1.0)) {
            return Err(Error::Config("summary levels must lie in (0, 1)"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationReport {
    /// Population target: `F⁻¹(τ)` or `q(z, h)`.
    pub target_q: f64,
    pub z: f64,
    pub h: f64,
    pub n: usize,
    pub replications: usize,
    pub seed: u64,
    pub est_mean: f64,
    /// `est_mean − target_q`.
    pub est_bias: f64,
    /// `n` times the unbiased sample variance of the estimates.
    pub scaled_variance: f64,
    /// Standard error of `scaled_variance`, from the fourth central moment.
    pub scaled_variance_se: f64,
    /// `v(τ, h)` or `σ²(z, h)`.
    pub predicted_variance: f64,
    /// `|scaled_variance − predicted_variance| / predicted_variance`.
    pub relative_error: f64,
    /// `(level, empirical quantile of √n (q̂ − q)/√predicted)`.
    pub standardized_quantiles: Vec<(f64, f64)>,
}

/// A validated, resolved configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    config: SimulationConfig,
    params: SmoothingParams,
    target_q: f64,
    predicted_variance: f64,
}

impl Experiment {
    pub fn new(config: SimulationConfig) -> Result<Self> {
        config.validate()?;
        let dist = &config.distribution;
        let (params, target_q, predicted_variance) = match config.target {
            Target::Quantile { tau, h } => {
                let params = asymptotics::params_for_tau(dist, tau, h)?;
                (params, dist.quantile(tau)?, asymptotics::v(dist, tau, h)?)
            }
            Target::Raw(params) => (
                params,
                population_minimizer(dist, &params)?,
                sigma2(dist, &params)?,
            ),
        };
        Ok(Experiment {
            config,
            params,
            target_q,
            predicted_variance,
        })
    }

    pub fn config(&self) -> &SimulationConfig {
        &self.config
    }

    pub fn params(&self) -> SmoothingParams {
        self.params
    }

    pub fn target_q(&self) -> f64 {
        self.target_q
    }

    pub fn predicted_variance(&self) -> f64 {
        self.predicted_variance
    }

    /// `q̂` on replicate `r`.
    pub fn replicate(&self, r: usize) -> Result<f64> {
        let seed = rng::replicate_seed(self.config.seed, r as u64);
        let sample = self.config.distribution.sample(self.config.n, seed)?;
        estimate(&sample, &self.params)
    }

    pub fn estimates(&self) -> Result<Vec<f64>> {
        (0..self.config.replications)
            .map(|r| self.replicate(r))
            .collect()
    }

    /// Builds the report from estimates listed in replicate order.
    pub fn summarize(&self, estimates: &[f64]) -> Result<SimulationReport> {
        if estimates.len() != self.config.replications {
            return Err(Error::Config("estimate count does not match replications"));
        }
        let moments = Moments::from_slice(estimates);
        let n = self.config.n as f64;
        let variance = moments.variance();
        let scaled_variance = n * variance;
        let scaled_variance_se = n * moments.variance_standard_error();
        let predicted = self.predicted_variance;

        let scale = sqrt(n / predicted);
        let mut standardized: Vec<f64> = estimates
            .iter()
            .map(|&q| scale * (q - self.target_q))
            .collect();
        standardized.sort_unstable_by(f64::total_cmp);
        let standardized_quantiles = self
            .config
            .levels
            .iter()
            .map(|&p| (p, order_statistic(&standardized, p)))
            .collect();

        Ok(SimulationReport {
            target_q: self.target_q,
            z: self.params.z(),
            h: self.params.h(),
            n: self.config.n,
            replications: self.config.replications,
            seed: self.config.seed,
            est_mean: moments.mean,
            est_bias: moments.mean - self.target_q,
            scaled_variance,
            scaled_variance_se,
            predicted_variance: predicted,
            relative_error: (scaled_variance - predicted).abs() / predicted,
            standardized_quantiles,
        })
    }
}

/// Type-1 quantile of sorted data.
fn order_statistic(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let i = libm::ceil(p * n as f64).clamp(1.0, n as f64) as usize;
    sorted[i - 1]
}

/// Streaming central moments up to order four (Welford / Terriberry).
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: f64,
    mean: f64,
    m2: f64,
    m3: f64,
    m4: f64,
}

impl Moments {
    fn from_slice(values: &[f64]) -> Self {
        let mut m = Moments::default();
        for &x in values {
            m.push(x);
        }
        m
    }

    fn push(&mut self, x: f64) {
        let n1 = self.count;
        self.count += 1.0;
        let n = self.count;
        let delta = x - self.mean;
        let delta_n = delta / n;
        let delta_n2 = delta_n * delta_n;
        let term1 = delta * delta_n * n1;
        self.mean += delta_n;
        self.m4 += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * self.m2
            - 4.0 * delta_n * self.m3;
        self.m3 += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * self.m2;
        self.m2 += term1;
    }

    fn variance(&self) -> f64 {
        self.m2 / (self.count - 1.0)
    }

    /// `√((μ₄ − σ⁴)/R)`, the large-sample standard error of the variance.
    fn variance_standard_error(&self) -> f64 {
        let mu2 = self.m2 / self.count;
        let mu4 = self.m4 / self.count;
        sqrt(((mu4 - mu2 * mu2) / self.count).max(0.0))
    }
}

pub fn run(config: SimulationConfig) -> Result<SimulationReport> {
    let experiment = Experiment::new(config)?;
    let estimates = experiment.estimates()?;
    experiment.summarize(&estimates)
}

/// Root mean squared error of `q̂ₙ` around `q(z, h)` for each `n`.
pub fn consistency_sweep(
    dist: &Distribution,
    params: &SmoothingParams,
    n_grid: &[usize],
    replications: usize,
    seed: u64,
) -> Result<Vec<(usize, f64)>> {
    if n_grid.is_empty() {
        return Err(Error::Config("empty sample-size grid"));
    }
    if n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config("sample-size grid must be strictly ascending"));
    }
    if replications == 0 {
        return Err(Error::Config("at least one replication is needed"));
    }
    let target = population_minimizer(dist, params)?;
    n_grid
        .iter()
        .map(|&n| {
            if n == 0 {
                return Err(Error::EmptySample);
            }
            let mut sum_sq = 0.0;
            for r in 0..replications {
                let sample = dist.sample(n, rng::replicate_seed(seed, r as u64))?;
                let err = estimate(&sample, params)? - target;
                sum_sq += err * err;
            }
            Ok((n, sqrt(sum_sq / replications as f64)))
        })
        .collect()
}

/// One point of [`variance_surface`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint {
    pub h: f64,
    pub scaled_variance: f64,
    pub scaled_variance_se: f64,
    pub predicted: f64,
}

/// Empirical and predicted variance along the constant-τ line. Every grid
/// point reuses the same seed, hence the same samples.
pub fn variance_surface(
    dist: &Distribution,
    tau: f64,
    h_grid: &[f64],
    n: usize,
    replications: usize,
    seed: u64,
) -> Result<Vec<SurfacePoint>> {
    if h_grid.is_empty() {
        return Err(Error::Config("empty smoothing grid"));
    }
    h_grid
        .iter()
        .map(|&h| {
            let config =
                SimulationConfig::new(*dist, Target::Quantile { tau, h }, n, replications, seed);
            let report = run(config)?;
            Ok(SurfacePoint {
                h,
                scaled_variance: report.scaled_variance,
                scaled_variance_se: report.scaled_variance_se,
                predicted: report.predicted_variance,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_match_two_pass() {
        let xs = [1.0, 4.0, 2.5, -3.0, 7.25, 0.5];
        let m = Moments::from_slice(&xs);
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let c = |k: i32| xs.iter().map(|x| (x - mean).powi(k)).sum::<f64>();
        assert!((m.mean - mean).abs() < 1e-14);
        assert!((m.m2 - c(2)).abs() < 1e-12);
        assert!((m.m3 - c(3)).abs() < 1e-11);
        assert!((m.m4 - c(4)).abs() < 1e-10);
    }

    #[test]
    fn config_validation() {
        let d = Distribution::standard_normal();
        let t = Target::Quantile { tau: 0.5, h: 0.0 };
        assert!(SimulationConfig::new(d, t, 10, 1, 1).validate().is_err());
        assert!(SimulationConfig::new(d, t, 1, 10, 1).validate().is_err());
        assert!(SimulationConfig::new(d, t, 2, 2, 1).validate().is_ok());
        assert!(run(SimulationConfig::new(d, Target::Quantile { tau: 1.2, h: 0.0 }, 5, 5, 1)).is_err());
    }

    #[test]
    fn summarize_rejects_wrong_count() {
        let d = Distribution::standard_normal();
        let e = Experiment::new(SimulationConfig::new(d, Target::Quantile { tau: 0.5, h: 0.0 }, 5, 3, 1))
            .unwrap();
        assert!(e.summarize(&[0.0, 1.0]).is_err());
    }

    #[test]
    fn order_statistic_levels() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(order_statistic(&xs, 0.05), 1.0);
        assert_eq!(order_statistic(&xs, 0.5), 2.0);
        assert_eq!(order_statistic(&xs, 0.95), 4.0);
    }
}
