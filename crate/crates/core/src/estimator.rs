//! The empirical smoothed quantile `q̂(z, h)`.
//!
//! The score of the objective is `Ψ(q) = 2F̂(q) − 1 + z + h (q − Ȳ)`, so the
//! minimizer is the generalized inverse of the nondecreasing map
//! `G(q) = F̂(q) + (h/2) q` at level `t = (1 − z + h Ȳ)/2`. `G` jumps by `k/n`
//! at a value observed `k` times and has slope `h/2` everywhere else, which
//! gives an exact `O(log n)` solution on a sorted sample.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Below this `h` the estimator takes the pure quantile path.
pub const MIN_SMOOTHING: f64 = 1e-300;

/// The pair `(z, h)` selecting one member of the estimator family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothingParams {
    z: f64,
    h: f64,
}

impl SmoothingParams {
    /// Requires finite `z`, finite `h ≥ 0`, and `z ∈ (−1, 1)` when `h` is
    /// (numerically) zero.
    pub fn new(z: f64, h: f64) -> Result<Self> {
        let valid = z.is_finite()
            && h.is_finite()
            && h >= 0.0
            && (h >= MIN_SMOOTHING || (z > -1.0 && z < 1.0));
        if valid {
            Ok(SmoothingParams { z, h })
        } else {
            Err(Error::Smoothing { z, h })
        }
    }

    /// The unsmoothed estimator of the `tau`-quantile, `(1 − 2τ, 0)`.
    pub fn quantile(tau: f64) -> Result<Self> {
        if !(tau > 0.0 && tau < 1.0) {
            return Err(Error::Probability(tau));
        }
        Self::new(1.0 - 2.0 * tau, 0.0)
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// `h`, with values below [`MIN_SMOOTHING`] flushed to zero.
    pub fn effective_h(&self) -> f64 {
        if self.h < MIN_SMOOTHING {
            0.0
        } else {
            self.h
        }
    }
}

/// Observations sorted ascending, with the mean cached.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
    mean: f64,
}

impl Sample {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        values.sort_unstable_by(f64::total_cmp);
        let mean = compensated_sum(&values) / values.len() as f64;
        Ok(Sample { values, mean })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Right-continuous empirical cdf, ties counted with multiplicity.
    pub fn ecdf(&self, q: f64) -> f64 {
        self.values.partition_point(|&y| y <= q) as f64 / self.len() as f64
    }

    /// The type-1 quantile `Y₍ᵢ₎` with `i` the smallest index such that
    /// `i/n ≥ level`.
    pub fn order_quantile(&self, level: f64) -> Result<f64> {
        if !(level > 0.0 && level < 1.0) {
            return Err(Error::Probability(level));
        }
        let n = self.len();
        let nf = n as f64;
        let mut i = libm::ceil(level * nf).clamp(1.0, nf) as usize;
        while i > 1 && (i - 1) as f64 / nf >= level {
            i -= 1;
        }
        while i < n && (i as f64) / nf < level {
            i += 1;
        }
        Ok(self.values[i - 1])
    }
}

/// Neumaier summation.
fn compensated_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for &v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// `M̂(q; z, h) = (1/n) Σ [ |Yᵢ − q| − z (Yᵢ − q) + (h/2)(Yᵢ − q)² ]`.
pub fn objective(sample: &Sample, q: f64, params: &SmoothingParams) -> f64 {
    let (z, h) = (params.z, params.h);
    let total: f64 = sample
        .values
        .iter()
        .map(|&y| {
            let r = y - q;
            r.abs() - z * r + 0.5 * h * r * r
        })
        .sum();
    total / sample.len() as f64
}

/// `Ψ̂(q; z, h) = 2F̂(q) − 1 + z + h (q − Ȳ)`.
pub fn score(sample: &Sample, q: f64, params: &SmoothingParams) -> f64 {
    2.0 * sample.ecdf(q) - 1.0 + params.z + params.h * (q - sample.mean)
}

/// The minimizer `q̂(z, h)`.
///
/// Comparisons are written relative to `Ȳ` (`i/n + (h/2)(Y₍ᵢ₎ − Ȳ)` against
/// `(1 − z)/2`), which keeps large `h` and shifted data well conditioned.
pub fn estimate(sample: &Sample, params: &SmoothingParams) -> Result<f64> {
    let z = params.z;
    let h = params.effective_h();
    if h == 0.0 && !(z > -1.0 && z < 1.0) {
        return Err(Error::Smoothing { z, h: params.h });
    }
    let values = &sample.values;
    let n = values.len() as f64;
    let mean = sample.mean;
    let level = 0.5 * (1.0 - z);
    let half_h = 0.5 * h;

    // G(Y₍ᵢ₎) ≥ t, shifted by hȲ/2; nondecreasing in i.
    let reached = |i: usize| (i + 1) as f64 / n + half_h * (values[i] - mean) >= level;
    let idx = partition_index(values.len(), reached);

    // Solves G(q) = t on the gap left of Y₍idx₎, where F̂ = idx/n.
    let on_gap = |count: usize| mean + (1.0 - z - 2.0 * count as f64 / n) / h;

    match idx {
        Some(i) => {
            let left_limit = i as f64 / n + half_h * (values[i] - mean);
            if h > 0.0 && left_limit >= level {
                Ok(on_gap(i))
            } else {
                Ok(values[i])
            }
        }
        // t above G(Y₍ₙ₎): only possible when h > 0.
        None => Ok(on_gap(values.len())),
    }
}

/// First index `i` in `0..len` for which the monotone predicate holds.
fn partition_index(len: usize, pred: impl Fn(usize) -> bool) -> Option<usize> {
    let (mut lo, mut hi) = (0usize, len);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    (lo < len).then_some(lo)
}

/// [`estimate`] at fixed `z` for each `h` in the grid.
pub fn estimate_path(sample: &Sample, z: f64, h_grid: &[f64]) -> Result<Vec<f64>> {
    if h_grid.is_empty() {
        return Err(Error::Config("empty smoothing grid"));
    }
    h_grid
        .iter()
        .map(|&h| estimate(sample, &SmoothingParams::new(z, h)?))
        .collect()
}
