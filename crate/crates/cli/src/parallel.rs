//! Replicates evaluated on the rayon pool. Estimates are collected into
//! replicate-indexed slots before aggregation, so results are identical to
//! the sequential runner for any thread count.

use rayon::prelude::*;
use smoothq::simulation::{Experiment, SurfacePoint};
use smoothq::{Distribution, Result, SimulationConfig, SimulationReport, Target};

pub fn run(config: SimulationConfig) -> Result<SimulationReport> {
    let experiment = Experiment::new(config)?;
    let estimates = (0..experiment.config().replications)
        .into_par_iter()
        .map(|r| experiment.replicate(r))
        .collect::<Result<Vec<f64>>>()?;
    experiment.summarize(&estimates)
}

pub fn variance_surface(
    dist: &Distribution,
    tau: f64,
    h_grid: &[f64],
    n: usize,
    replications: usize,
    seed: u64,
) -> Result<Vec<SurfacePoint>> {
    if h_grid.is_empty() {
        return Err(smoothq::Error::Config("empty smoothing grid"));
    }
    h_grid
        .iter()
        .map(|&h| {
            let config = SimulationConfig::new(*dist, Target::Quantile { tau, h }, n, replications, seed);
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
