//! Monte Carlo evaluation of the magnetostatic potential on the boundary.
//!
//! Samples are drawn area-uniformly in the smallest disk (centred on the
//! barycenter) containing every vertex, classified by the winding-number
//! interior test, and the thin-layer kernel
//! `1/|x - p| - 1/sqrt(|x - p|^2 + h^2)` is summed over interior samples
//! with the area element dS = A / M_in. Sampling is redrawn from a per-step
//! seed, so a whole run is a pure function of the master seed.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{point_in_polygon, GeometryCache, PolygonalCurve, Vec2};

/// Interior samples closer than this to the evaluation point are skipped.
pub const SAMPLE_SINGULARITY_TOL: f64 = 1e-12;

/// One step's Monte Carlo sampling of the domain.
#[derive(Clone, Debug, PartialEq)]
pub struct McSampling {
    /// Disk centre (the barycenter).
    pub center: Vec2,
    /// Disk radius max_i |X_i - g|.
    pub r_max: f64,
    /// All M drawn points.
    pub samples: Vec<Vec2>,
    /// Interior mask, aligned with `samples`.
    pub inside: Vec<bool>,
    /// Number of interior samples.
    pub m_in: usize,
    /// Area element A / M_in.
    pub ds: f64,
}

/// SplitMix64 mixer; the step seed is a hash of (master seed, step index).
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic per-step RNG seed.
pub fn step_seed(master_seed: u64, step_index: u64) -> u64 {
    splitmix64(master_seed ^ splitmix64(step_index))
}

/// Draws `m` area-uniform samples in the circumscribing disk of the curve
/// and classifies them against the polygon.
///
/// Area-uniformity uses the sqrt radial transform; a uniform-in-radius draw
/// would bias the dS estimator toward the centre.
pub fn draw_samples(
    curve: &PolygonalCurve,
    cache: &GeometryCache,
    m: usize,
    step_seed: u64,
) -> Result<McSampling> {
    let center = cache.barycenter;
    let r_max = curve
        .vertices()
        .iter()
        .map(|&v| (v - center).norm())
        .fold(0.0, f64::max);

    let mut rng = ChaCha8Rng::seed_from_u64(step_seed);
    let samples: Vec<Vec2> = (0..m)
        .map(|_| {
            let r = r_max * rng.gen::<f64>().sqrt();
            let th = std::f64::consts::TAU * rng.gen::<f64>();
            center + Vec2::new(r * th.cos(), r * th.sin())
        })
        .collect();
    classify(curve, cache, center, r_max, samples)
}

/// Builds a sampling from externally chosen points (the classification and
/// weighting used by [`draw_samples`], kept separate for testing against
/// deterministic point sets).
pub fn classify(
    curve: &PolygonalCurve,
    cache: &GeometryCache,
    center: Vec2,
    r_max: f64,
    samples: Vec<Vec2>,
) -> Result<McSampling> {
    let inside: Vec<bool> = samples
        .iter()
        .map(|&p| point_in_polygon(curve, p))
        .collect();
    let m_in = inside.iter().filter(|&&b| b).count();
    if m_in == 0 {
        return Err(Error::EmptyInterior { m: samples.len() });
    }
    Ok(McSampling {
        center,
        r_max,
        inside,
        m_in,
        ds: cache.area / m_in as f64,
        samples,
    })
}

/// Thin-layer kernel value at distance `d` for gap `h`.
#[inline]
fn kernel(d: f64, h: f64) -> f64 {
    1.0 / d - 1.0 / (d * d + h * h).sqrt()
}

/// phi(x) = -sum_{p_k interior} (1/|x - p_k| - 1/sqrt(|x - p_k|^2 + h^2)) dS.
///
/// Interior samples within [`SAMPLE_SINGULARITY_TOL`] of `x` are skipped;
/// the event has probability zero and skipping avoids overflow without a
/// measurable bias.
pub fn potential_at(x: Vec2, sampling: &McSampling, h: f64) -> f64 {
    let mut sum = 0.0;
    for (p, &is_in) in sampling.samples.iter().zip(&sampling.inside) {
        if !is_in {
            continue;
        }
        let d = (x - *p).norm();
        if d < SAMPLE_SINGULARITY_TOL {
            continue;
        }
        sum += kernel(d, h);
    }
    -sum * sampling.ds
}

/// Potential at every collocation midpoint.
pub fn potential_on_boundary(cache: &GeometryCache, sampling: &McSampling, h: f64) -> Vec<f64> {
    cache
        .midpoint
        .iter()
        .map(|&m| potential_at(m, sampling, h))
        .collect()
}
