//! Population-level efficiency calculus.
//!
//! For a model with cdf `F`, density `f`, mean `m`:
//!
//! - the population minimizer `q(z, h)` solves `F(q) + (h/2) q = (1 − z + h m)/2`;
//! - `√n (q̂ − q) → N(0, σ²(z, h))` with `σ² = B(z, h) / (2f(q) + h)²` and
//!   `B = 4F(1 − F) + 2h [E|Y − q| − (m − q)(1 − 2F)] + h² Var(Y)`;
//! - on the constant-τ line `z(τ, h) = 1 − 2τ + h (m − F⁻¹(τ))` the variance is
//!   `v(τ, h) = (a + b h + c h²)/(d + h)²` with the coefficients of
//!   [`VarianceCoefficients`].

use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::estimator::SmoothingParams;

/// Relative tolerance for treating a sign quantity as zero.
pub const SIGN_TOLERANCE: f64 = 1e-9;

/// `q(z, h)`: the unique root of `F(q) + (h/2)(q − m) − (1 − z)/2`.
///
/// For `h = 0` this is `F⁻¹((1 − z)/2)` directly. Otherwise the root is
/// bracketed starting from `m ± 20 sd` (expanded geometrically) and found by
/// Newton steps safeguarded with bisection.
pub fn population_minimizer(dist: &Distribution, params: &SmoothingParams) -> Result<f64> {
    let z = params.z();
    let h = params.effective_h();
    if h == 0.0 {
        return dist.quantile(0.5 * (1.0 - z));
    }
    let m = dist.mean();
    let level = 0.5 * (1.0 - z);
    let g = |q: f64| dist.cdf(q) + 0.5 * h * (q - m) - level;

    let sd = dist.std_dev();
    let mut width = 20.0 * sd;
    let (mut lo, mut hi) = (m - width, m + width);
    while g(lo) > 0.0 {
        width *= 2.0;
        lo = m - width;
    }
    while g(hi) < 0.0 {
        width *= 2.0;
        hi = m + width;
    }

    let mut q = m.clamp(lo, hi);
    for _ in 0..200 {
        let value = g(q);
        if value == 0.0 {
            return Ok(q);
        }
        if value < 0.0 {
            lo = q;
        } else {
            hi = q;
        }
        let slope = dist.pdf(q) + 0.5 * h;
        let mut next = q - value / slope;
        if !(next > lo && next < hi) {
            next = lo + 0.5 * (hi - lo);
        }
        if next == q || hi - lo <= 2.0 * f64::EPSILON * q.abs().max(f64::MIN_POSITIVE) {
            return Ok(next);
        }
        q = next;
    }
    Ok(q)
}

/// `z(τ, h) = 1 − 2τ + h (m − F⁻¹(τ))`.
pub fn z_of_tau(dist: &Distribution, tau: f64, h: f64) -> Result<f64> {
    let q = dist.quantile(tau)?;
    if !(h.is_finite() && h >= 0.0) {
        return Err(Error::Smoothing { z: f64::NAN, h });
    }
    Ok(1.0 - 2.0 * tau + h * (dist.mean() - q))
}

/// The smoothing pair on the constant-τ line.
pub fn params_for_tau(dist: &Distribution, tau: f64, h: f64) -> Result<SmoothingParams> {
    SmoothingParams::new(z_of_tau(dist, tau, h)?, h)
}

/// `σ²(z, h) = B(z, h) / (2f(q) + h)²` at `q = q(z, h)`.
pub fn sigma2(dist: &Distribution, params: &SmoothingParams) -> Result<f64> {
    let q = population_minimizer(dist, params)?;
    let h = params.h();
    let p = dist.cdf(q);
    let m = dist.mean();
    let b = 4.0 * p * (1.0 - p)
        + 2.0 * h * (dist.mean_abs_dev(q) - (m - q) * (1.0 - 2.0 * p))
        + h * h * dist.variance();
    let denom = 2.0 * dist.pdf(q) + h;
    Ok(b / (denom * denom))
}

/// Coefficients of `v(τ, h) = (a + b h + c h²)/(d + h)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceCoefficients {
    pub tau: f64,
    /// `4τ(1 − τ)`
    pub a: f64,
    /// `2 [E|Y − F⁻¹(τ)| − (m − F⁻¹(τ))(1 − 2τ)]`
    pub b: f64,
    /// `Var(Y)`
    pub c: f64,
    /// `2 f(F⁻¹(τ))`
    pub d: f64,
}

/// Behaviour of `h ↦ v(τ, h)` on `[0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EfficiencyCase {
    /// `bd − 2a > 0`, `2cd − b ≥ 0`: smoothing only hurts.
    IncreasingFromZero,
    /// `v` never increases and decreases toward `Var(Y)`.
    MonotoneDecreasing,
    /// `(bd − 2a)(2cd − b) < 0`: a single interior stationary point.
    FiniteOptimum,
    /// `bd − 2a = 0`, `2cd − b ≥ 0`: `v` is minimal at `h = 0` with zero slope.
    BoundaryFlat,
}

impl EfficiencyCase {
    pub fn label(&self) -> &'static str {
        match self {
            EfficiencyCase::IncreasingFromZero => "increasing",
            EfficiencyCase::MonotoneDecreasing => "decreasing",
            EfficiencyCase::FiniteOptimum => "finite",
            EfficiencyCase::BoundaryFlat => "boundary",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        [
            EfficiencyCase::IncreasingFromZero,
            EfficiencyCase::MonotoneDecreasing,
            EfficiencyCase::FiniteOptimum,
            EfficiencyCase::BoundaryFlat,
        ]
        .into_iter()
        .find(|c| c.label() == label)
    }
}

/// Where `v(τ, ·)` attains its infimum over `[0, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SmoothingOptimum {
    /// `h = 0` is optimal.
    Zero,
    Finite(f64),
    /// The infimum is the limit `Var(Y)` as `h → ∞`; it is not attained.
    Infinite,
}

impl SmoothingOptimum {
    pub fn value(&self) -> Option<f64> {
        match self {
            SmoothingOptimum::Zero => Some(0.0),
            SmoothingOptimum::Finite(h) => Some(*h),
            SmoothingOptimum::Infinite => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sign {
    Negative,
    Zero,
    Positive,
}

fn sign_of(value: f64, scale: f64) -> Sign {
    if value.abs() <= SIGN_TOLERANCE * scale {
        Sign::Zero
    } else if value < 0.0 {
        Sign::Negative
    } else {
        Sign::Positive
    }
}

impl VarianceCoefficients {
    pub fn v(&self, h: f64) -> f64 {
        let denom = self.d + h;
        (self.a + self.b * h + self.c * h * h) / (denom * denom)
    }

    /// `((2cd − b) h + (bd − 2a)) / (d + h)³`.
    pub fn dv_dh(&self, h: f64) -> f64 {
        let denom = self.d + h;
        (self.slope_coefficient() * h + self.intercept_coefficient()) / (denom * denom * denom)
    }

    /// `bd − 2a`, the sign of `∂v/∂h` at `h = 0`.
    pub fn intercept_coefficient(&self) -> f64 {
        self.b * self.d - 2.0 * self.a
    }

    /// `2cd − b`, the sign of `∂v/∂h` as `h → ∞`.
    pub fn slope_coefficient(&self) -> f64 {
        2.0 * self.c * self.d - self.b
    }

    /// `(2a − bd)/(2cd − b)` when that is a finite positive number.
    pub fn stationary_point(&self) -> Option<f64> {
        let h = -self.intercept_coefficient() / self.slope_coefficient();
        (h.is_finite() && h > 0.0).then_some(h)
    }

    fn signs(&self) -> (Sign, Sign) {
        let at_zero = sign_of(self.intercept_coefficient() / (self.a + 1.0), 1.0);
        let at_infinity = sign_of(
            self.slope_coefficient(),
            2.0 * self.c * self.d + self.b.abs(),
        );
        (at_zero, at_infinity)
    }

    /// Case from the signs of `bd − 2a` and `2cd − b`.
    ///
    /// `bd − 2a` is compared to zero after dividing by `a + 1`, `2cd − b`
    /// relative to `2cd + |b|`, both at [`SIGN_TOLERANCE`]. A nonpositive
    /// numerator everywhere (both signs `≤ 0`, not both zero) is
    /// [`EfficiencyCase::MonotoneDecreasing`].
    pub fn classify(&self) -> EfficiencyCase {
        use Sign::*;
        match self.signs() {
            (Positive, Zero | Positive) => EfficiencyCase::IncreasingFromZero,
            (Zero, Zero | Positive) => EfficiencyCase::BoundaryFlat,
            (Negative, Positive) | (Positive, Negative) => EfficiencyCase::FiniteOptimum,
            (Negative, Zero | Negative) | (Zero, Negative) => EfficiencyCase::MonotoneDecreasing,
        }
    }

    /// Global minimizer of `v` over `[0, ∞]`.
    ///
    /// For a finite stationary point that is a maximum (`bd − 2a > 0`,
    /// `2cd − b < 0`) the optimum is whichever of `v(0)` and the limit `c` is
    /// smaller, with ties going to `h = 0`.
    pub fn h_star(&self) -> SmoothingOptimum {
        match self.classify() {
            EfficiencyCase::IncreasingFromZero | EfficiencyCase::BoundaryFlat => {
                SmoothingOptimum::Zero
            }
            EfficiencyCase::MonotoneDecreasing => SmoothingOptimum::Infinite,
            EfficiencyCase::FiniteOptimum => match self.stationary_point() {
                Some(h) if self.intercept_coefficient() < 0.0 => SmoothingOptimum::Finite(h),
                _ if self.c < self.v(0.0) => SmoothingOptimum::Infinite,
                _ => SmoothingOptimum::Zero,
            },
        }
    }

    /// `v` at the optimum, using the limit `c` when the optimum is at infinity.
    pub fn v_at(&self, optimum: SmoothingOptimum) -> f64 {
        match optimum {
            SmoothingOptimum::Zero => self.v(0.0),
            SmoothingOptimum::Finite(h) => self.v(h),
            SmoothingOptimum::Infinite => self.c,
        }
    }
}

pub fn coefficients(dist: &Distribution, tau: f64) -> Result<VarianceCoefficients> {
    let q = dist.quantile(tau)?;
    let m = dist.mean();
    Ok(VarianceCoefficients {
        tau,
        a: 4.0 * tau * (1.0 - tau),
        b: 2.0 * (dist.mean_abs_dev(q) - (m - q) * (1.0 - 2.0 * tau)),
        c: dist.variance(),
        d: 2.0 * dist.pdf(q),
    })
}

fn check_h(h: f64) -> Result<f64> {
    if h.is_finite() && h >= 0.0 {
        Ok(h)
    } else {
        Err(Error::Smoothing { z: f64::NAN, h })
    }
}

/// `v(τ, h)`, the asymptotic variance along the constant-τ line.
pub fn v(dist: &Distribution, tau: f64, h: f64) -> Result<f64> {
    let h = check_h(h)?;
    Ok(coefficients(dist, tau)?.v(h))
}

pub fn dv_dh(dist: &Distribution, tau: f64, h: f64) -> Result<f64> {
    let h = check_h(h)?;
    Ok(coefficients(dist, tau)?.dv_dh(h))
}

pub fn classify(coeffs: &VarianceCoefficients) -> EfficiencyCase {
    coeffs.classify()
}

pub fn h_star(coeffs: &VarianceCoefficients) -> SmoothingOptimum {
    coeffs.h_star()
}

/// Efficiency summary at one quantile level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyReport {
    pub tau: f64,
    pub quantile: f64,
    pub coefficients: VarianceCoefficients,
    pub case: EfficiencyCase,
    pub h_star: SmoothingOptimum,
    pub v_at_zero: f64,
    /// `v(τ, h*)`, or the limit `Var(Y)` when `h*` is infinite.
    pub v_at_opt: f64,
    /// `v_at_opt / v_at_zero`.
    pub ratio: f64,
    /// The reported optimum is a limit as `h → ∞`, never attained.
    pub limit_not_attained: bool,
}

pub fn efficiency_report(dist: &Distribution, tau: f64) -> Result<EfficiencyReport> {
    let coeffs = coefficients(dist, tau)?;
    let optimum = coeffs.h_star();
    let v_at_zero = coeffs.v(0.0);
    let v_at_opt = coeffs.v_at(optimum);
    Ok(EfficiencyReport {
        tau,
        quantile: dist.quantile(tau)?,
        coefficients: coeffs,
        case: coeffs.classify(),
        h_star: optimum,
        v_at_zero,
        v_at_opt,
        ratio: v_at_opt / v_at_zero,
        limit_not_attained: optimum == SmoothingOptimum::Infinite,
    })
}

/// Both sides of `τ(1 − τ)/f(m)² < Var(Y)` at `τ = F(m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyCondition {
    /// `F(m)`.
    pub tau: f64,
    /// Asymptotic variance of the empirical `F(m)`-quantile, `τ(1 − τ)/f(m)²`.
    pub quantile_variance: f64,
    /// `Var(Y)`.
    pub mean_variance: f64,
    /// `quantile_variance < mean_variance`.
    pub quantile_wins: bool,
}

pub fn efficiency_condition(dist: &Distribution) -> EfficiencyCondition {
    let m = dist.mean();
    let tau = dist.cdf(m);
    let f = dist.pdf(m);
    let quantile_variance = tau * (1.0 - tau) / (f * f);
    let mean_variance = dist.variance();
    EfficiencyCondition {
        tau,
        quantile_variance,
        mean_variance,
        quantile_wins: quantile_variance < mean_variance,
    }
}
