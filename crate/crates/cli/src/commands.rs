//! Subcommand implementations, returning records for the caller to emit.

use std::path::Path;

use smoothq::asymptotics::{self, coefficients, efficiency_report, population_minimizer, sigma2};
use smoothq::estimator::{estimate, SmoothingParams};
use smoothq::simulation::DEFAULT_LEVELS;
use smoothq::{SimulationConfig, Target};

use crate::dist_spec::DistSpec;
use crate::error::CliError;
use crate::input::read_sample;
use crate::parallel;
use crate::records::{EstimateRow, PopulationRow, SimRow, SweepRow, TableRow, VarianceRow};

pub const DEFAULT_TAUS: [f64; 3] = [0.25, 0.5, 0.75];

fn check_tau(tau: f64) -> Result<f64, CliError> {
    if tau > 0.0 && tau < 1.0 {
        Ok(tau)
    } else {
        Err(CliError::Usage(format!("tau = {tau} must lie in (0, 1)")))
    }
}

pub fn estimate_file(path: &Path, z: f64, h: f64) -> Result<EstimateRow, CliError> {
    let params = SmoothingParams::new(z, h)?;
    let sample = read_sample(path)?;
    Ok(EstimateRow {
        q_hat: estimate(&sample, &params)?,
        z,
        h,
        n: sample.len(),
    })
}

pub fn table(spec: &DistSpec, taus: &[f64]) -> Result<Vec<TableRow>, CliError> {
    if taus.is_empty() {
        return Err(CliError::Usage("no tau values given".into()));
    }
    taus.iter()
        .map(|&tau| {
            let r = efficiency_report(spec.distribution(), check_tau(tau)?)?;
            Ok(TableRow {
                distribution: spec.to_string(),
                tau,
                q_tau: r.quantile,
                h_star: r.h_star.into(),
                v0: r.v_at_zero,
                v_opt: r.v_at_opt,
                ratio: r.ratio,
                case: r.case.label().to_string(),
                limit: r.limit_not_attained,
            })
        })
        .collect()
}

/// τ grid `start, start + step, …` up to `end` inclusive.
pub fn tau_range(start: f64, end: f64, step: f64) -> Result<Vec<f64>, CliError> {
    let valid = start > 0.0 && start <= end && end < 1.0 && step > 0.0 && step.is_finite();
    if !valid {
        return Err(CliError::Usage(format!(
            "invalid tau range start={start} end={end} step={step}: need 0 < start <= end < 1 and step > 0"
        )));
    }
    let count = ((end - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| start + k as f64 * step).collect())
}

pub fn sweep(spec: &DistSpec, start: f64, end: f64, step: f64) -> Result<Vec<SweepRow>, CliError> {
    tau_range(start, end, step)?
        .into_iter()
        .map(|tau| {
            let r = efficiency_report(spec.distribution(), tau)?;
            Ok(SweepRow {
                distribution: spec.to_string(),
                tau,
                ratio: r.ratio,
                h_star: r.h_star.into(),
                case: r.case.label().to_string(),
                limit: r.limit_not_attained,
            })
        })
        .collect()
}

/// Either a quantile level or a raw location parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Level {
    Tau(f64),
    Z(f64),
}

pub fn simulate(
    spec: &DistSpec,
    level: Level,
    h: f64,
    n: usize,
    reps: usize,
    seed: u64,
) -> Result<SimRow, CliError> {
    let target = match level {
        Level::Tau(tau) => Target::Quantile { tau: check_tau(tau)?, h },
        Level::Z(z) => Target::Raw(SmoothingParams::new(z, h)?),
    };
    let config = SimulationConfig::new(*spec.distribution(), target, n, reps, seed);
    let r = parallel::run(config)?;
    let q = |level: f64| {
        r.standardized_quantiles
            .iter()
            .find(|(l, _)| *l == level)
            .map(|(_, v)| *v)
            .unwrap_or(f64::NAN)
    };
    debug_assert_eq!(r.standardized_quantiles.len(), DEFAULT_LEVELS.len());
    Ok(SimRow {
        distribution: spec.to_string(),
        tau: match level {
            Level::Tau(tau) => Some(tau),
            Level::Z(_) => None,
        },
        z: r.z,
        h: r.h,
        n: r.n,
        reps: r.replications,
        seed: r.seed,
        target_q: r.target_q,
        est_mean: r.est_mean,
        est_bias: r.est_bias,
        scaled_variance: r.scaled_variance,
        scaled_variance_se: r.scaled_variance_se,
        predicted_variance: r.predicted_variance,
        relative_error: r.relative_error,
        std_q05: q(0.05),
        std_q25: q(0.25),
        std_q50: q(0.5),
        std_q75: q(0.75),
        std_q95: q(0.95),
    })
}

pub fn population(spec: &DistSpec, level: Level, h: f64) -> Result<PopulationRow, CliError> {
    let dist = spec.distribution();
    let params = match level {
        Level::Tau(tau) => asymptotics::params_for_tau(dist, check_tau(tau)?, h)?,
        Level::Z(z) => SmoothingParams::new(z, h)?,
    };
    let q = population_minimizer(dist, &params)?;
    Ok(PopulationRow {
        distribution: spec.to_string(),
        z: params.z(),
        h: params.h(),
        tau: dist.cdf(q),
        q,
        sigma2: sigma2(dist, &params)?,
    })
}

pub fn variance(spec: &DistSpec, tau: f64, hs: &[f64]) -> Result<Vec<VarianceRow>, CliError> {
    if hs.is_empty() {
        return Err(CliError::Usage("no h values given".into()));
    }
    let dist = spec.distribution();
    let c = coefficients(dist, check_tau(tau)?)?;
    hs.iter()
        .map(|&h| {
            if !(h.is_finite() && h >= 0.0) {
                return Err(CliError::Usage(format!("h = {h} must be finite and >= 0")));
            }
            Ok(VarianceRow {
                distribution: spec.to_string(),
                tau,
                h,
                z: asymptotics::z_of_tau(dist, tau, h)?,
                v: c.v(h),
                dv_dh: c.dv_dh(h),
                a: c.a,
                b: c.b,
                c: c.c,
                d: c.d,
                case: c.classify().label().to_string(),
            })
        })
        .collect()
}
