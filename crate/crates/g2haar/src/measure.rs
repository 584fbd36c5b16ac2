//! The bi-invariant measure: closed-form densities, analytic volumes by
//! factorized quadrature, an exact per-coordinate Haar sampler, and a
//! deterministic parallel Monte Carlo integrator with invariance and
//! character-moment suites.
//!
//! The density factorizes over the 14 coordinates, so sampling needs no
//! rejection: eight coordinates are uniform on their boxes and the remaining
//! six invert small closed-form CDFs. Reproducibility contract: every drawn
//! value is a pure function of `(seed, channel, sample index)`, so the worker
//! count never changes a sample or a sum.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Backend;
use crate::error::Error;
use crate::geometry;
use crate::parametrization::{g2_element, parameter_ranges, EulerCoordinates, GroupElement};

const PI: f64 = std::f64::consts::PI;
const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Fixed seed for the invariance suite's translation elements; the `h`
/// elements are `g2_element(sample_haar(H, 0..k))`, reproducible forever.
pub const INVARIANCE_H_SEED: u64 = 0x4732_4841_4152_0001;

/// Samples per summation chunk. Chunk boundaries, not worker assignment,
/// define the floating-point reduction order.
const CHUNK: u64 = 1024;

/// Unnormalized invariant density on the su(3) factor:
/// `sqrt(3) sin(2 g2) sin^3(g4) cos(g4) sin(2 g7)`.
pub fn su3_density(gamma: &[f64; 8]) -> f64 {
    SQRT3
        * (2.0 * gamma[1]).sin()
        * gamma[3].sin().powi(3)
        * gamma[3].cos()
        * (2.0 * gamma[6]).sin()
}

/// Unnormalized invariant density of the full group:
/// `(27/32) sin^5(a6) cos(a5) sin^3(a5) sin(2 a2)` times the su(3) density.
pub fn g2_density(c: &EulerCoordinates) -> f64 {
    27.0 / 32.0
        * c.alpha[5].sin().powi(5)
        * c.alpha[4].cos()
        * c.alpha[4].sin().powi(3)
        * (2.0 * c.alpha[1]).sin()
        * su3_density(&c.gamma)
}

/// Gauss-Legendre quadrature of `f` over `[a, b]` with `n` nodes.
///
/// Nodes and weights by Newton iteration on the Legendre polynomial; exact
/// for polynomials of degree `2n - 1` and spectrally accurate for the smooth
/// trigonometric factors integrated here.
pub fn gauss_legendre<F: Fn(f64) -> f64>(n: usize, a: f64, b: f64, f: F) -> f64 {
    // P_n and its derivative by the three-term recurrence
    let legendre = |x: f64| -> (f64, f64) {
        let (mut p0, mut p1) = (1.0, x);
        for k in 2..=n {
            let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        (p1, dp)
    };
    let half = (b - a) / 2.0;
    let mid = (a + b) / 2.0;
    let mut total = 0.0;
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        total += w * f(mid + half * x);
    }
    total * half
}

/// Unnormalized volumes of the subgroup and of the full group under the
/// printed densities, as products of one-dimensional quadratures.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Volumes {
    pub v_su3: f64,
    pub v_g2: f64,
}

/// The per-coordinate integral of each density factor over its box.
fn channel_factor(idx: usize) -> f64 {
    let r = parameter_ranges()[idx];
    gauss_legendre(48, r.lo, r.hi, |x| channel_density(idx, x))
}

/// Computes both volumes by factorized quadrature; no multi-dimensional
/// integration is involved because the density is a product.
pub fn analytic_volume() -> Volumes {
    let mut v_su3 = SQRT3;
    for idx in 6..14 {
        v_su3 *= channel_factor(idx);
    }
    let mut v_g2 = 27.0 / 32.0 * v_su3;
    for idx in 0..6 {
        v_g2 *= channel_factor(idx);
    }
    Volumes { v_su3, v_g2 }
}

/// Tensor-product quadrature of the probability-normalized density over the
/// whole 14-box; exactly 1 up to quadrature error.
pub fn normalization_integral() -> f64 {
    let volumes = analytic_volume();
    let mut product = 27.0 / 32.0 * SQRT3;
    for idx in 0..14 {
        product *= channel_factor(idx);
    }
    product / volumes.v_g2
}

// ---------------------------------------------------------------------------
// per-coordinate sampling channels
// ---------------------------------------------------------------------------

/// Distribution of one coordinate channel, as printed in the factorized
/// density.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelDist {
    /// Uniform over the coordinate's box.
    Uniform,
    /// Density `sin(2x)` on `[0, pi/2]`; CDF `sin^2 x`.
    DoubleAngleSine,
    /// Density `4 sin^3 x cos x` on `[0, pi/2]`; CDF `sin^4 x`.
    QuarticSine,
    /// Density `(15/16) sin^5 x` on `[0, pi]`; CDF inverted numerically.
    QuinticSine,
}

/// The channel table in flat coordinate order
/// (`alpha_1..alpha_6, gamma_1..gamma_8`).
pub fn channel_dists() -> [ChannelDist; 14] {
    use ChannelDist::*;
    [
        Uniform,         // alpha1
        DoubleAngleSine, // alpha2
        Uniform,         // alpha3
        Uniform,         // alpha4
        QuarticSine,     // alpha5
        QuinticSine,     // alpha6
        Uniform,         // gamma1
        DoubleAngleSine, // gamma2
        Uniform,         // gamma3
        QuarticSine,     // gamma4
        Uniform,         // gamma5
        Uniform,         // gamma6
        DoubleAngleSine, // gamma7
        Uniform,         // gamma8
    ]
}

/// Unnormalized density factor of channel `idx` at `x` (the printed factor,
/// 1 for uniform channels).
pub fn channel_density(idx: usize, x: f64) -> f64 {
    match channel_dists()[idx] {
        ChannelDist::Uniform => 1.0,
        ChannelDist::DoubleAngleSine => (2.0 * x).sin(),
        ChannelDist::QuarticSine => x.sin().powi(3) * x.cos(),
        ChannelDist::QuinticSine => x.sin().powi(5),
    }
}

/// Normalized CDF of channel `idx`.
pub fn channel_cdf(idx: usize, x: f64) -> f64 {
    let r = parameter_ranges()[idx];
    match channel_dists()[idx] {
        ChannelDist::Uniform => ((x - r.lo) / (r.hi - r.lo)).clamp(0.0, 1.0),
        ChannelDist::DoubleAngleSine => x.sin().powi(2),
        ChannelDist::QuarticSine => x.sin().powi(4),
        ChannelDist::QuinticSine => quintic_cdf(x),
    }
}

/// CDF of `(15/16) sin^5` on `[0, pi]`, closed form in `cos x`.
fn quintic_cdf(x: f64) -> f64 {
    let c = x.cos();
    15.0 / 16.0 * (8.0 / 15.0 - c + 2.0 / 3.0 * c.powi(3) - 0.2 * c.powi(5))
}

/// Inverse CDF of channel `idx`: maps `u` in `[0,1)` to a coordinate.
pub fn channel_inverse_cdf(idx: usize, u: f64) -> f64 {
    let r = parameter_ranges()[idx];
    match channel_dists()[idx] {
        ChannelDist::Uniform => r.lo + (r.hi - r.lo) * u,
        ChannelDist::DoubleAngleSine => u.sqrt().asin(),
        ChannelDist::QuarticSine => u.powf(0.25).asin(),
        ChannelDist::QuinticSine => invert_quintic(u),
    }
}

/// Monotone inversion of the quintic CDF: bisection to 1e-6, then Newton to
/// 1e-12 (the density `(15/16) sin^5` is the derivative).
fn invert_quintic(u: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, PI);
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if quintic_cdf(mid) < u {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..50 {
        let fx = quintic_cdf(x) - u;
        let dfx = 15.0 / 16.0 * x.sin().powi(5);
        if dfx <= 0.0 {
            break;
        }
        let step = fx / dfx;
        x = (x - step).clamp(lo, hi);
        if step.abs() < 1e-12 {
            break;
        }
    }
    x
}

/// The uniform draw feeding channel `idx` of sample `index`: stream = channel,
/// word position = 2 * index. Pure in `(seed, idx, index)`.
pub fn channel_uniform(seed: u64, idx: usize, index: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(idx as u64 + 1);
    rng.set_word_pos((index as u128) * 2);
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// The coordinate drawn by channel `idx` for sample `index`.
pub fn channel_draw(seed: u64, idx: usize, index: u64) -> f64 {
    channel_inverse_cdf(idx, channel_uniform(seed, idx, index))
}

/// One exact Haar draw: in-range coordinates plus the unnormalized density
/// value there.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HaarSample {
    pub coords: EulerCoordinates,
    pub density: f64,
}

/// Index-addressed exact Haar sampler.
#[derive(Debug, Clone, Copy)]
pub struct HaarSampler {
    seed: u64,
}

impl HaarSampler {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Draws sample `index`; any index is addressable in O(1) and the result
    /// depends only on `(seed, index)`.
    pub fn sample(&self, index: u64) -> HaarSample {
        let mut flat = [0.0; 14];
        for (idx, slot) in flat.iter_mut().enumerate() {
            *slot = channel_draw(self.seed, idx, index);
        }
        let coords = EulerCoordinates::from_flat(&flat);
        HaarSample { coords, density: g2_density(&coords) }
    }
}

/// Convenience wrapper over [`HaarSampler`].
pub fn sample_haar(seed: u64, index: u64) -> HaarSample {
    HaarSampler::new(seed).sample(index)
}

/// Monte Carlo estimate of a mean over the normalized Haar measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MCEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n: u64,
    pub seed: u64,
}

/// Mean of `f` over `n` exact Haar samples mapped through the group
/// parametrization. Deterministic for fixed `(seed, n)` regardless of the
/// rayon worker count.
pub fn mc_integrate<F>(backend: &Backend, f: F, n: u64, seed: u64) -> Result<MCEstimate, Error>
where
    F: Fn(&GroupElement) -> f64 + Sync,
{
    if n < 2 {
        return Err(Error::InvalidArgument("mc_integrate requires n >= 2".into()));
    }
    let sampler = HaarSampler::new(seed);
    let n_chunks = n.div_ceil(CHUNK);
    let partials: Result<Vec<(f64, f64)>, Error> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(n);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for index in lo..hi {
                let s = sampler.sample(index);
                let value = f(&g2_element(backend, &s.coords));
                if !value.is_finite() {
                    return Err(Error::NonFiniteIntegrand { coords: Box::new(s.coords.flat()) });
                }
                sum += value;
                sum_sq += value * value;
            }
            Ok((sum, sum_sq))
        })
        .collect();
    let partials = partials?;
    // fixed chunk-order reduction keeps the sum independent of thread count
    let (sum, sum_sq) = partials
        .into_iter()
        .fold((0.0, 0.0), |(a, b), (s, q)| (a + s, b + q));
    Ok(finalize_estimate(sum, sum_sq, n, seed))
}

fn finalize_estimate(sum: f64, sum_sq: f64, n: u64, seed: u64) -> MCEstimate {
    let nf = n as f64;
    let mean = sum / nf;
    let variance = ((sum_sq - sum * sum / nf) / (nf - 1.0)).max(0.0);
    MCEstimate { mean, stderr: (variance / nf).sqrt(), n, seed }
}

/// The fixed panel of test functions used by the moment and invariance
/// suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestFunction {
    /// Character of the backend representation.
    Trace,
    /// Squared character; Haar mean 1 for a real irreducible representation.
    TraceSquared,
    /// Character evaluated at `g^2`.
    TraceOfSquare,
    /// Sum of squares of the top-left 3x3 block; not a class function.
    BlockNormSquared,
}

impl TestFunction {
    pub const PANEL: [TestFunction; 4] = [
        TestFunction::Trace,
        TestFunction::TraceSquared,
        TestFunction::TraceOfSquare,
        TestFunction::BlockNormSquared,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TestFunction::Trace => "trace",
            TestFunction::TraceSquared => "trace-squared",
            TestFunction::TraceOfSquare => "trace-of-square",
            TestFunction::BlockNormSquared => "block-norm-squared",
        }
    }

    pub fn eval(&self, g: &GroupElement) -> f64 {
        match self {
            TestFunction::Trace => g.trace(),
            TestFunction::TraceSquared => {
                let t = g.trace();
                t * t
            }
            TestFunction::TraceOfSquare => {
                let m = g.matrix();
                (m * m).trace()
            }
            TestFunction::BlockNormSquared => {
                let m = g.matrix();
                let mut s = 0.0;
                for i in 0..3 {
                    for j in 0..3 {
                        s += m[(i, j)] * m[(i, j)];
                    }
                }
                s
            }
        }
    }
}

/// One line of the invariance report: the z-score between the plain mean of
/// `f` and its mean under a fixed left or right translation.
#[derive(Debug, Clone, Serialize)]
pub struct InvarianceLine {
    pub h_index: usize,
    pub function: &'static str,
    pub side: &'static str,
    pub base_mean: f64,
    pub translated_mean: f64,
    pub z: f64,
}

/// Outcome of the translation-invariance suite.
#[derive(Debug, Clone, Serialize)]
pub struct InvarianceReport {
    pub lines: Vec<InvarianceLine>,
    pub max_abs_z: f64,
    pub pass: bool,
}

/// Threshold on |z| above which a translation pair is a FAIL finding.
pub const INVARIANCE_Z_LIMIT: f64 = 4.0;

/// Compares Haar means of the panel functions against their left- and
/// right-translated versions for `k` fixed pseudo-random group elements,
/// reusing one sample stream so that `h = 1` gives exactly `z = 0`.
pub fn invariance_suite(
    backend: &Backend,
    k: usize,
    n: u64,
    seed: u64,
) -> Result<InvarianceReport, Error> {
    if n < 2 {
        return Err(Error::InvalidArgument("invariance_suite requires n >= 2".into()));
    }
    let translations: Vec<GroupElement> = (0..k)
        .map(|i| g2_element(backend, &sample_haar(INVARIANCE_H_SEED, i as u64).coords))
        .collect();
    let sampler = HaarSampler::new(seed);
    let n_funcs = TestFunction::PANEL.len();
    // accumulator layout per chunk: base sums/sumsqs, then per (h, side) pairs
    let n_cols = n_funcs * (1 + 2 * k);
    let n_chunks = n.div_ceil(CHUNK);
    let partials: Result<Vec<Vec<(f64, f64)>>, Error> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(n);
            let mut acc = vec![(0.0f64, 0.0f64); n_cols];
            for index in lo..hi {
                let s = sampler.sample(index);
                let g = g2_element(backend, &s.coords);
                let mut col = 0;
                for f in TestFunction::PANEL {
                    let v = f.eval(&g);
                    if !v.is_finite() {
                        return Err(Error::NonFiniteIntegrand {
                            coords: Box::new(s.coords.flat()),
                        });
                    }
                    acc[col].0 += v;
                    acc[col].1 += v * v;
                    col += 1;
                }
                for h in &translations {
                    let left = h * &g;
                    let right = &g * h;
                    for f in TestFunction::PANEL {
                        let v = f.eval(&left);
                        acc[col].0 += v;
                        acc[col].1 += v * v;
                        col += 1;
                        let v = f.eval(&right);
                        acc[col].0 += v;
                        acc[col].1 += v * v;
                        col += 1;
                    }
                }
            }
            Ok(acc)
        })
        .collect();
    let partials = partials?;
    let mut totals = vec![(0.0f64, 0.0f64); n_cols];
    for chunk in partials {
        for (t, c) in totals.iter_mut().zip(chunk) {
            t.0 += c.0;
            t.1 += c.1;
        }
    }
    let estimates: Vec<MCEstimate> = totals
        .iter()
        .map(|&(s, q)| finalize_estimate(s, q, n, seed))
        .collect();

    let mut lines = Vec::with_capacity(n_funcs * 2 * k);
    let mut max_abs_z = 0.0f64;
    for (hi, _) in translations.iter().enumerate() {
        for (fi, f) in TestFunction::PANEL.iter().enumerate() {
            let base = &estimates[fi];
            let offset = n_funcs + (hi * n_funcs + fi) * 2;
            for (side, est) in [("left", &estimates[offset]), ("right", &estimates[offset + 1])] {
                let denom = (base.stderr.powi(2) + est.stderr.powi(2)).sqrt();
                let z = if denom == 0.0 {
                    0.0
                } else {
                    (base.mean - est.mean) / denom
                };
                max_abs_z = max_abs_z.max(z.abs());
                lines.push(InvarianceLine {
                    h_index: hi,
                    function: f.name(),
                    side,
                    base_mean: base.mean,
                    translated_mean: est.mean,
                    z,
                });
            }
        }
    }
    Ok(InvarianceReport { lines, max_abs_z, pass: max_abs_z <= INVARIANCE_Z_LIMIT })
}

/// Comparison of the Gram-determinant density against the printed density.
#[derive(Debug, Clone, Serialize)]
pub struct RatioReport {
    pub ratio_mean: f64,
    /// `(max - min) / |mean|` of the ratio over the sampled points.
    pub ratio_spread: f64,
    pub points: usize,
    pub pass: bool,
}

/// Maximum relative spread tolerated between `sqrt(det metric)` and the
/// printed density (finite-difference noise floor).
pub const RATIO_SPREAD_LIMIT: f64 = 1e-4;

/// At random interior points, computes `sqrt(det metric) / density`. The
/// ratio must be constant; its value is reported, not assumed.
pub fn density_vs_metric(
    backend: &Backend,
    points: usize,
    seed: u64,
    h: f64,
) -> Result<RatioReport, Error> {
    if points == 0 {
        return Err(Error::InvalidArgument("density_vs_metric requires points >= 1".into()));
    }
    let ranges = parameter_ranges();
    let ratios: Result<Vec<f64>, Error> = (0..points as u64)
        .into_par_iter()
        .map(|index| {
            // interior points: 10 percent margin keeps the density away from
            // its zeros at the box walls
            let mut flat = [0.0; 14];
            for (idx, slot) in flat.iter_mut().enumerate() {
                let u = channel_uniform(seed, idx + 100, index);
                let len = ranges[idx].hi - ranges[idx].lo;
                *slot = ranges[idx].lo + len * (0.1 + 0.8 * u);
            }
            let coords = EulerCoordinates::from_flat(&flat);
            let metric = geometry::metric_at(backend, &coords, h)?;
            Ok(metric.determinant().max(0.0).sqrt() / g2_density(&coords))
        })
        .collect();
    let ratios = ratios?;
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let (lo, hi) = ratios
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &r| (l.min(r), h.max(r)));
    let spread = (hi - lo) / mean.abs();
    Ok(RatioReport {
        ratio_mean: mean,
        ratio_spread: spread,
        points,
        pass: spread <= RATIO_SPREAD_LIMIT,
    })
}

/// Kolmogorov-Smirnov distance between the empirical distribution of channel
/// `idx` over `n` draws and its exact CDF.
pub fn channel_ks_statistic(seed: u64, idx: usize, n: u64) -> f64 {
    let mut draws: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|index| channel_draw(seed, idx, index))
        .collect();
    draws.sort_by(f64::total_cmp);
    let nf = n as f64;
    let mut d = 0.0f64;
    for (i, &x) in draws.iter().enumerate() {
        let c = channel_cdf(idx, x);
        d = d.max((c - i as f64 / nf).abs());
        d = d.max((c - (i + 1) as f64 / nf).abs());
    }
    d
}
