//! Independent oracles used by the integration tests.

#![allow(dead_code, clippy::excessive_precision)]

use smoothq::estimator::Sample;
use smoothq::{Distribution, Family};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

fn adapt(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (value, err) = gk15(f, a, b);
    if err <= tol || depth == 0 {
        return value;
    }
    let mid = 0.5 * (a + b);
    adapt(f, a, mid, 0.5 * tol, depth - 1) + adapt(f, mid, b, 0.5 * tol, depth - 1)
}

/// Adaptive Gauss–Kronrod (7/15) over `[a, b]` with extra break points.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, breaks: &[f64]) -> f64 {
    let mut points = vec![a];
    points.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    points.push(b);
    points.sort_by(f64::total_cmp);
    points
        .windows(2)
        .map(|w| adapt(&f, w[0], w[1], 1e-13, 50))
        .sum()
}

/// Support truncation and kink location.
pub fn support(d: &Distribution) -> (f64, f64, f64) {
    match d.family() {
        Family::Normal { mu, sigma } => (mu - 40.0 * sigma, mu + 40.0 * sigma, mu),
        Family::Laplace { mu, b } => (mu - 90.0 * b, mu + 90.0 * b, mu),
        Family::AsymmetricLaplace { mu, b, kappa } => {
            let lower = b * kappa;
            let upper = b / kappa;
            (mu - 90.0 * lower, mu + 90.0 * upper, mu)
        }
    }
}

pub fn quad_cdf(d: &Distribution, x: f64) -> f64 {
    let (lo, _, kink) = support(d);
    integrate(|y| d.pdf(y), lo, x, &[kink])
}

pub fn quad_moment(d: &Distribution, g: impl Fn(f64) -> f64, extra: &[f64]) -> f64 {
    let (lo, hi, kink) = support(d);
    let mut breaks = vec![kink];
    breaks.extend_from_slice(extra);
    integrate(|y| g(y) * d.pdf(y), lo, hi, &breaks)
}

pub fn quad_mean(d: &Distribution) -> f64 {
    quad_moment(d, |y| y, &[])
}

pub fn quad_variance(d: &Distribution) -> f64 {
    let m = quad_mean(d);
    quad_moment(d, |y| (y - m) * (y - m), &[])
}

pub fn quad_mean_abs_dev(d: &Distribution, q: f64) -> f64 {
    quad_moment(d, |y| (y - q).abs(), &[q])
}

/// `n · (M(q₁) − M(q₂))` without cancellation. With `δ = q₂ − q₁`, each term
/// is `δ · (s − z + (h/2)(2y − q₁ − q₂))` where `s = ±1` for `y` outside
/// `[q₁, q₂]`; points between contribute `|y − q₁| − |y − q₂|` directly.
fn objective_difference(values: &[f64], z: f64, h: f64, q1: f64, q2: f64) -> f64 {
    let delta = q2 - q1;
    let (lo, hi) = if q1 <= q2 { (q1, q2) } else { (q2, q1) };
    let mut factor = 0.0;
    let mut between = 0.0;
    for &y in values {
        if y >= hi {
            factor += 1.0;
        } else if y <= lo {
            factor -= 1.0;
        } else {
            between += (y - q1).abs() - (y - q2).abs();
        }
        factor += -z + 0.5 * h * (2.0 * y - q1 - q2);
    }
    delta * factor + between
}

/// Golden-section minimization of the empirical objective for `h > 0`.
pub fn golden_section_minimizer(sample: &Sample, z: f64, h: f64) -> f64 {
    let values = sample.values();
    let bound = (1.0 + z.abs()) / h;
    let mut lo = (sample.mean() - bound).min(values[0]) - 1.0;
    let mut hi = (sample.mean() + bound).max(values[values.len() - 1]) + 1.0;
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    for _ in 0..400 {
        if hi - lo <= 1e-14 * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
        if objective_difference(values, z, h, x1, x2) <= 0.0 {
            hi = x2;
            x2 = x1;
            x1 = hi - ratio * (hi - lo);
        } else {
            lo = x1;
            x1 = x2;
            x2 = lo + ratio * (hi - lo);
        }
    }
    0.5 * (lo + hi)
}

/// Brute-force minimum of `v` over `h ∈ [0, 50]` on a `1e-4` grid.
pub fn grid_argmin(v: impl Fn(f64) -> f64) -> (f64, f64) {
    let mut best = (0.0, v(0.0));
    for k in 1..=500_000 {
        let h = k as f64 * 1e-4;
        let value = v(h);
        if value < best.1 {
            best = (h, value);
        }
    }
    best
}

pub fn models() -> Vec<Distribution> {
    vec![
        Distribution::standard_normal(),
        Distribution::normal(1.5, 0.7).unwrap(),
        Distribution::standard_laplace(),
        Distribution::laplace(-2.0, 1.3).unwrap(),
        Distribution::asymmetric_laplace(0.0, 1.0, 0.5).unwrap(),
        Distribution::asymmetric_laplace(0.0, 1.0, 2.0).unwrap(),
        Distribution::asymmetric_laplace(0.7, 0.8, 1.4).unwrap(),
    ]
}
