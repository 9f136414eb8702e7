//! Asymptotic uniform distribution of vertices along the curve.
//!
//! Tangential velocities are chosen so that every edge length relaxes toward
//! the mean L/N at rate omega while the area-evolution error term vanishes.
//! The velocities satisfy the recurrence
//! `W_i cos_i - W_{i-1} cos_{i-1} = psi_i` for i = 2..N together with the
//! zero-average condition `sum_i W_i = 0`, which has the closed-form solution
//! implemented here via prefix sums.

use crate::geometry::GeometryCache;

/// Inputs of the tangential-velocity formula beyond the geometry itself.
#[derive(Clone, Copy, Debug)]
pub struct UdmState {
    /// Relaxation rate omega = mu'(t); a run constant here.
    pub omega: f64,
    /// Perimeter rate L' from [`perimeter_rate`].
    pub l_dot: f64,
}

/// Perimeter rate under the evolution law: L' = 2 sum_i V_i sin_i.
pub fn perimeter_rate(vertex_velocity: &[f64], cache: &GeometryCache) -> f64 {
    2.0 * vertex_velocity
        .iter()
        .zip(&cache.half_sin)
        .map(|(v, s)| v * s)
        .sum::<f64>()
}

/// Tangential velocities W_i of the asymptotic uniform distribution method.
///
/// `vertex_velocity` holds the vertex normal velocities V_i. The cusp guard
/// in geometry keeps every cos_i bounded away from zero.
pub fn tangential_velocities(
    vertex_velocity: &[f64],
    cache: &GeometryCache,
    udm: &UdmState,
) -> Vec<f64> {
    let n = cache.len();
    let mean_edge = cache.perimeter / n as f64;

    // Psi_i = sum_{l=2}^{i} psi_l, with Psi_1 = 0 (paper indexing; array
    // slot k holds vertex k+1).
    let mut prefix = vec![0.0; n];
    for i in 1..n {
        prefix[i] = prefix[i - 1] + psi(i, vertex_velocity, cache, udm, mean_edge);
    }

    // Zero-average condition fixes W_1.
    let inv_cos_sum: f64 = cache.half_cos.iter().map(|c| 1.0 / c).sum();
    let weighted: f64 = (1..n).map(|i| prefix[i] / cache.half_cos[i]).sum();
    let w1 = -weighted / (cache.half_cos[0] * inv_cos_sum);

    let w1_cos = w1 * cache.half_cos[0];
    (0..n)
        .map(|i| (prefix[i] + w1_cos) / cache.half_cos[i])
        .collect()
}

/// psi_i = -V_i sin_i - V_{i-1} sin_{i-1} + L'/N + (L/N - r_i) omega,
/// for paper index i = k+1 at array slot k.
fn psi(
    k: usize,
    vertex_velocity: &[f64],
    cache: &GeometryCache,
    udm: &UdmState,
    mean_edge: f64,
) -> f64 {
    let n = cache.len();
    let prev = (k + n - 1) % n;
    -vertex_velocity[k] * cache.half_sin[k] - vertex_velocity[prev] * cache.half_sin[prev]
        + udm.l_dot / n as f64
        + (mean_edge - cache.edge_length[k]) * udm.omega
}

/// Largest violation of the defining recurrence, for diagnostics:
/// max_i |W_i cos_i - W_{i-1} cos_{i-1} - psi_i| over i = 2..N.
pub fn recurrence_residual(
    tangential: &[f64],
    vertex_velocity: &[f64],
    cache: &GeometryCache,
    udm: &UdmState,
) -> f64 {
    let n = cache.len();
    let mean_edge = cache.perimeter / n as f64;
    (1..n)
        .map(|k| {
            let lhs = tangential[k] * cache.half_cos[k] - tangential[k - 1] * cache.half_cos[k - 1];
            (lhs - psi(k, vertex_velocity, cache, udm, mean_edge)).abs()
        })
        .fold(0.0, f64::max)
}

/// Area-evolution error term killed by the uniform distribution:
/// err_A = sum_i (W_i sin_i - (v_{i+1} - v_i)/2) (r_{i+1} - r_i)/2.
///
/// Identically zero when all edges share one length.
pub fn area_rate_error(tangential: &[f64], edge_velocity: &[f64], cache: &GeometryCache) -> f64 {
    let n = cache.len();
    (0..n)
        .map(|i| {
            let next = (i + 1) % n;
            (tangential[i] * cache.half_sin[i] - 0.5 * (edge_velocity[next] - edge_velocity[i]))
                * 0.5
                * (cache.edge_length[next] - cache.edge_length[i])
        })
        .sum()
}
