//! Physical models: boundary data for the potential solve and the normal
//! velocity laws on edges and vertices.
//!
//! Two models are implemented behind one parameter set:
//!
//! * time-dependent gap (`Tdg`), with the classic fixed-gap problem
//!   recovered as `ConstantGap`;
//! * magnetic fluid (`Magnetic`), which adds a magnetostatic potential term
//!   to the Dirichlet data and rescales the velocity by the capillary group.
//!
//! All formulas act per edge on [`GeometryCache`] arrays; vertex velocities
//! come from averaging adjacent edge velocities with the half-angle weights.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::GeometryCache;
use crate::mfs::{evaluate_gradient, MfsSolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    /// Classic Hele-Shaw: fixed gap, surface-tension Dirichlet data.
    ConstantGap,
    /// Time-dependent gap h(t) = exp(t).
    Tdg,
    /// Magnetic fluid in a lifting cell, gap h_*(t) = exp(t).
    Magnetic,
}

/// Gap law h(t) with its derivative.
#[derive(Clone, Copy, Debug)]
pub enum GapLaw {
    /// h(t) = exp(t), so hdot/h = 1 at all times.
    Exponential,
    /// h(t) = h0, hdot = 0.
    Constant(f64),
}

impl GapLaw {
    pub fn h(&self, t: f64) -> f64 {
        match self {
            GapLaw::Exponential => t.exp(),
            GapLaw::Constant(h0) => *h0,
        }
    }

    pub fn hdot(&self, t: f64) -> f64 {
        match self {
            GapLaw::Exponential => t.exp(),
            GapLaw::Constant(_) => 0.0,
        }
    }
}

/// Physical and numerical parameters of a run.
#[derive(Clone, Debug)]
pub struct ModelParams {
    pub kind: ModelKind,
    /// Surface tension coefficient (Tdg / ConstantGap).
    pub sigma: f64,
    /// Magnetic Bond group Bmv = (R0/h0)^(1/3) Bm.
    pub bmv: f64,
    /// Capillary number (Magnetic).
    pub ca: f64,
    /// Gap ratio h0 / R0.
    pub h_r: f64,
    /// Uniform-distribution relaxation rate.
    pub omega: f64,
    /// Amano placement parameter.
    pub r_a: f64,
    /// Monte Carlo sample count per step.
    pub mc_samples: usize,
    /// Master RNG seed; per-step seeds derive from it.
    pub seed: u64,
    /// Time step.
    pub dt: f64,
    /// Final time.
    pub t_end: f64,
    /// Gap value for ConstantGap runs.
    pub h0: f64,
}

impl ModelParams {
    pub fn gap_law(&self) -> GapLaw {
        match self.kind {
            ModelKind::ConstantGap => GapLaw::Constant(self.h0),
            ModelKind::Tdg | ModelKind::Magnetic => GapLaw::Exponential,
        }
    }

    /// Dimensionless physical gap entering the magnetostatic kernel:
    /// lengths are scaled by R0, so the gap h0 h_*(t) becomes h_r h_*(t).
    pub fn mc_gap(&self, t: f64) -> f64 {
        self.h_r * self.gap_law().h(t)
    }

    pub fn validate(&self) -> Result<()> {
        if self.kind == ModelKind::Magnetic && self.ca <= 0.0 {
            return Err(Error::Validation(
                "Ca required (> 0) for the magnetic model".into(),
            ));
        }
        if self.h_r <= 0.0 {
            return Err(Error::Validation("h_r must be positive".into()));
        }
        if self.dt <= 0.0 {
            return Err(Error::Validation("dt must be positive".into()));
        }
        if self.kind == ModelKind::Magnetic && self.mc_samples < 1 {
            return Err(Error::Validation(
                "at least one Monte Carlo sample required".into(),
            ));
        }
        if self.omega < 0.0 {
            return Err(Error::Validation("omega must be non-negative".into()));
        }
        if self.r_a <= 0.0 {
            return Err(Error::Validation("r_a must be positive".into()));
        }
        if self.t_end < 0.0 {
            return Err(Error::Validation("t_end must be non-negative".into()));
        }
        if self.kind == ModelKind::ConstantGap && self.h0 <= 0.0 {
            return Err(Error::Validation("h0 must be positive".into()));
        }
        Ok(())
    }
}

/// Dirichlet data of the gap-driven model:
/// g_i = sigma kappa_i - (hdot / 4 h^3) |X_i^*|^2.
///
/// With a constant gap (hdot = 0) this is the classic surface-tension
/// condition sigma kappa_i.
pub fn tdg_boundary_data(cache: &GeometryCache, params: &ModelParams, t: f64) -> Vec<f64> {
    let gap = params.gap_law();
    let h = gap.h(t);
    let coeff = gap.hdot(t) / (4.0 * h * h * h);
    (0..cache.len())
        .map(|i| params.sigma * cache.curvature[i] - coeff * cache.midpoint[i].norm_sq())
        .collect()
}

/// Edge normal velocity of the gap-driven model:
/// v_i = -h^2 grad P . n_i - (hdot / 2h) X_i^* . n_i.
pub fn tdg_normal_velocity(
    sol: &MfsSolution,
    cache: &GeometryCache,
    params: &ModelParams,
    t: f64,
) -> Result<Vec<f64>> {
    let gap = params.gap_law();
    let h = gap.h(t);
    edge_velocity(sol, cache, h * h, gap.hdot(t) / (2.0 * h))
}

/// Dirichlet data of the magnetic model:
/// g_i = kappa_i - Bmv (pi^(2/3) / h_*) phi_i
///       - (1 / h_r^2) (pi Ca |X_i^*|^2) / (4 h_*^2),
/// with h_*(t) = exp(t) and phi_i the magnetostatic potential at the
/// collocation midpoints.
pub fn magnetic_boundary_data(
    cache: &GeometryCache,
    params: &ModelParams,
    t: f64,
    phi: &[f64],
) -> Vec<f64> {
    let h_star = t.exp();
    let pi = std::f64::consts::PI;
    let mag_coeff = params.bmv * pi.powf(2.0 / 3.0) / h_star;
    let ca_coeff = pi * params.ca / (params.h_r * params.h_r * 4.0 * h_star * h_star);
    (0..cache.len())
        .map(|i| cache.curvature[i] - mag_coeff * phi[i] - ca_coeff * cache.midpoint[i].norm_sq())
        .collect()
}

/// Edge normal velocity of the magnetic model:
/// v_i = -(h_r^2 h_*^2 / (pi Ca)) grad P . n_i - (1/2) X_i^* . n_i
/// (hdot_*/2h_* = 1/2 for the exponential gap).
pub fn magnetic_normal_velocity(
    sol: &MfsSolution,
    cache: &GeometryCache,
    params: &ModelParams,
    t: f64,
) -> Result<Vec<f64>> {
    let h_star = t.exp();
    let grad_coeff = params.h_r * params.h_r * h_star * h_star / (std::f64::consts::PI * params.ca);
    edge_velocity(sol, cache, grad_coeff, 0.5)
}

fn edge_velocity(
    sol: &MfsSolution,
    cache: &GeometryCache,
    grad_coeff: f64,
    radial_coeff: f64,
) -> Result<Vec<f64>> {
    (0..cache.len())
        .map(|i| {
            let m = cache.midpoint[i];
            let n = cache.edge_normal[i];
            let g = evaluate_gradient(sol, m)?;
            Ok(-grad_coeff * g.dot(n) - radial_coeff * m.dot(n))
        })
        .collect()
}

/// Vertex normal velocity from the two adjacent edge velocities:
/// V_i = (v_i + v_{i+1}) / (2 cos_i).
pub fn vertex_normal_velocity(edge_velocity: &[f64], cache: &GeometryCache) -> Vec<f64> {
    let n = cache.len();
    (0..n)
        .map(|i| (edge_velocity[i] + edge_velocity[(i + 1) % n]) / (2.0 * cache.half_cos[i]))
        .collect()
}

/// Discrete area rate sum_i v_i r_i. With the flux constraint satisfied this
/// equals -(hdot/h) A, which is the volume-preserving identity the scheme is
/// built around.
pub fn area_rate(edge_velocity: &[f64], cache: &GeometryCache) -> f64 {
    edge_velocity
        .iter()
        .zip(&cache.edge_length)
        .map(|(v, r)| v * r)
        .sum()
}
