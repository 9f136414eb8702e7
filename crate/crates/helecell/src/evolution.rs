//! Time integration of the interface under the full model pipeline.
//!
//! One velocity evaluation chains: geometry rebuild, (magnetic only) Monte
//! Carlo potential, Dirichlet data, Amano point placement, the constrained
//! MFS solve, edge and vertex normal velocities, and the tangential
//! redistribution. Classical RK4 advances all 2N vertex coordinates; the
//! Monte Carlo seed is fixed per step and shared by the four stages, so the
//! stage field is a deterministic function of the staged curve.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{build_geometry, GeometryCache, PolygonalCurve, Vec2};
use crate::magnetostatics::{draw_samples, potential_on_boundary, step_seed};
use crate::mfs::{solve_dirichlet, MfsPointSets};
use crate::model::{
    area_rate, magnetic_boundary_data, magnetic_normal_velocity, tdg_boundary_data,
    tdg_normal_velocity, vertex_normal_velocity, ModelKind, ModelParams,
};
use crate::udm::{perimeter_rate, recurrence_residual, tangential_velocities, UdmState};

/// Interface state at one accepted time level.
#[derive(Clone, Debug)]
pub struct SimulationState {
    pub t: f64,
    pub curve: PolygonalCurve,
    pub step_index: u64,
}

/// One time sample of the run diagnostics.
#[derive(Clone, Debug)]
pub struct DiagnosticsRecord {
    pub t: f64,
    /// Perimeter L.
    pub perimeter: f64,
    /// Enclosed area A.
    pub area: f64,
    /// Fluid volume A * h(t).
    pub volume: f64,
    /// max_i |r_i - L/N| / (L/N).
    pub max_edge_dev: f64,
    /// Relative residual of the flux constraint at this instant.
    pub constraint_residual: f64,
    /// Interior Monte Carlo samples (magnetic runs; 0 otherwise).
    pub m_in: usize,
}

/// Radial Fourier mode of an initial curve, contributing
/// `amplitude * {cos|sin}(k * pi * u)` to r(u).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    pub kind: WaveKind,
    /// Multiplier of pi*u in the phase; must be even so r has period 1.
    pub k: u32,
    pub amplitude: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WaveKind {
    Cos,
    Sin,
}

/// Initial curve r(u) (cos 2 pi u, sin 2 pi u) sampled at u_i = i/N.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InitialCurveSpec {
    /// Base radius R0.
    pub r0: f64,
    #[serde(default)]
    pub modes: Vec<Mode>,
}

impl InitialCurveSpec {
    pub fn radius(&self, u: f64) -> f64 {
        let mut r = self.r0;
        for m in &self.modes {
            let phase = m.k as f64 * std::f64::consts::PI * u;
            r += m.amplitude
                * match m.kind {
                    WaveKind::Cos => phase.cos(),
                    WaveKind::Sin => phase.sin(),
                };
        }
        r
    }
}

/// Samples the spec at u_i = i/N, i = 1..N. Vertices are uniform in the
/// parameter, not arc length; the redistribution takes it from there.
pub fn build_initial_curve(spec: &InitialCurveSpec, n: usize) -> Result<PolygonalCurve> {
    if n < 3 {
        return Err(Error::Spec(format!("N = {n} is below 3")));
    }
    for m in &spec.modes {
        if m.k % 2 != 0 {
            return Err(Error::Spec(format!(
                "mode k = {} is odd; the radius would not close up",
                m.k
            )));
        }
    }
    let mut verts = Vec::with_capacity(n);
    for i in 1..=n {
        let u = i as f64 / n as f64;
        let r = spec.radius(u);
        if r <= 0.0 {
            return Err(Error::Spec(format!("radius r({u}) = {r} is not positive")));
        }
        let th = std::f64::consts::TAU * u;
        verts.push(Vec2::new(r * th.cos(), r * th.sin()));
    }
    PolygonalCurve::new(verts)
}

/// Everything one velocity evaluation produces.
#[derive(Clone, Debug)]
pub struct StepField {
    pub cache: GeometryCache,
    /// Edge normal velocities v_i.
    pub edge_velocity: Vec<f64>,
    /// Vertex normal velocities V_i.
    pub vertex_velocity: Vec<f64>,
    /// Tangential velocities W_i.
    pub tangential: Vec<f64>,
    /// Relative flux-constraint residual of the solve.
    pub constraint_residual: f64,
    /// Interior sample count (magnetic runs).
    pub m_in: Option<usize>,
    /// |sum W_i| scaled by N * max|W_i| (0 for a zero field).
    pub w_sum_scaled: f64,
    /// Largest violation of the tangential recurrence.
    pub recurrence_residual: f64,
    /// |sum v_i r_i + (hdot/h) A| scaled by |hdot/h| A + max|v| L.
    pub area_rate_residual: f64,
}

impl StepField {
    /// Vertex derivative X'_i = V_i N_i + W_i T_i.
    pub fn derivative(&self) -> Vec<Vec2> {
        (0..self.cache.len())
            .map(|i| {
                self.cache.vertex_normal[i] * self.vertex_velocity[i]
                    + self.cache.vertex_tangent[i] * self.tangential[i]
            })
            .collect()
    }
}

/// Runs the full per-step pipeline at time `t` on `curve`.
pub fn velocity_field(
    curve: &PolygonalCurve,
    t: f64,
    params: &ModelParams,
    mc_seed: u64,
) -> Result<StepField> {
    let cache = build_geometry(curve)?;
    let n = cache.len();

    let mut m_in = None;
    let boundary = match params.kind {
        ModelKind::ConstantGap | ModelKind::Tdg => tdg_boundary_data(&cache, params, t),
        ModelKind::Magnetic => {
            let sampling = draw_samples(curve, &cache, params.mc_samples, mc_seed)?;
            m_in = Some(sampling.m_in);
            let phi = potential_on_boundary(&cache, &sampling, params.mc_gap(t));
            magnetic_boundary_data(&cache, params, t, &phi)
        }
    };

    let points = MfsPointSets::place(curve, &cache, params.r_a)?;
    let sol = solve_dirichlet(&cache, &points, &boundary)?;
    let edge_velocity = match params.kind {
        ModelKind::ConstantGap | ModelKind::Tdg => tdg_normal_velocity(&sol, &cache, params, t)?,
        ModelKind::Magnetic => magnetic_normal_velocity(&sol, &cache, params, t)?,
    };

    let vertex_velocity = vertex_normal_velocity(&edge_velocity, &cache);
    let udm = UdmState {
        omega: params.omega,
        l_dot: perimeter_rate(&vertex_velocity, &cache),
    };
    let tangential = tangential_velocities(&vertex_velocity, &cache, &udm);

    let w_max = tangential.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let w_sum: f64 = tangential.iter().sum();
    let w_sum_scaled = if w_max == 0.0 {
        0.0
    } else {
        w_sum.abs() / (n as f64 * w_max)
    };

    let gap = params.gap_law();
    let hdot_over_h = gap.hdot(t) / gap.h(t);
    let v_max = edge_velocity.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let scale = hdot_over_h.abs() * cache.area + v_max * cache.perimeter;
    let area_rate_residual = if scale == 0.0 {
        0.0
    } else {
        (area_rate(&edge_velocity, &cache) + hdot_over_h * cache.area).abs() / scale
    };
    // Semi-discrete volume preservation is algebraic once the constraint
    // row holds; a violation here means the solve went wrong.
    debug_assert!(
        area_rate_residual <= 1e-8,
        "area rate residual {area_rate_residual:e}"
    );

    Ok(StepField {
        recurrence_residual: recurrence_residual(&tangential, &vertex_velocity, &cache, &udm),
        constraint_residual: sol.constraint_residual(),
        edge_velocity,
        vertex_velocity,
        tangential,
        m_in,
        w_sum_scaled,
        area_rate_residual,
        cache,
    })
}

/// One classical RK4 step of the vertex ODE under an arbitrary velocity
/// closure (typically [`velocity_field`] wrapped with fixed parameters).
///
/// Every staged curve is revalidated, so a stage that folds the polygon
/// aborts cleanly.
pub fn rk4_step_with<F>(
    curve: &PolygonalCurve,
    t: f64,
    dt: f64,
    mut field: F,
) -> Result<PolygonalCurve>
where
    F: FnMut(&PolygonalCurve, f64) -> Result<Vec<Vec2>>,
{
    let displace = |base: &PolygonalCurve, k: &[Vec2], scale: f64| -> Result<PolygonalCurve> {
        PolygonalCurve::new(
            base.vertices()
                .iter()
                .zip(k)
                .map(|(&x, &d)| x + d * scale)
                .collect(),
        )
    };

    let k1 = field(curve, t)?;
    let k2 = field(&displace(curve, &k1, 0.5 * dt)?, t + 0.5 * dt)?;
    let k3 = field(&displace(curve, &k2, 0.5 * dt)?, t + 0.5 * dt)?;
    let k4 = field(&displace(curve, &k3, dt)?, t + dt)?;

    PolygonalCurve::new(
        curve
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, &x)| x + (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0))
            .collect(),
    )
}

/// Stage-aggregated solver health metrics for one step.
#[derive(Clone, Copy, Debug, Default)]
pub struct StepMetrics {
    pub max_recurrence_residual: f64,
    pub max_w_sum_scaled: f64,
    pub max_area_rate_residual: f64,
    pub max_constraint_residual: f64,
}

impl StepMetrics {
    fn absorb(&mut self, field: &StepField) {
        self.max_recurrence_residual = self.max_recurrence_residual.max(field.recurrence_residual);
        self.max_w_sum_scaled = self.max_w_sum_scaled.max(field.w_sum_scaled);
        self.max_area_rate_residual = self.max_area_rate_residual.max(field.area_rate_residual);
        self.max_constraint_residual = self.max_constraint_residual.max(field.constraint_residual);
    }

    fn merge(&mut self, other: &StepMetrics) {
        self.max_recurrence_residual = self
            .max_recurrence_residual
            .max(other.max_recurrence_residual);
        self.max_w_sum_scaled = self.max_w_sum_scaled.max(other.max_w_sum_scaled);
        self.max_area_rate_residual = self
            .max_area_rate_residual
            .max(other.max_area_rate_residual);
        self.max_constraint_residual = self
            .max_constraint_residual
            .max(other.max_constraint_residual);
    }
}

/// Advances the state by one RK4 step of size `dt` (normally `params.dt`;
/// the run loop clamps the final step onto t_end).
pub fn rk4_step(
    state: &SimulationState,
    params: &ModelParams,
    dt: f64,
) -> Result<(SimulationState, StepMetrics)> {
    let seed = step_seed(params.seed, state.step_index);
    let mut metrics = StepMetrics::default();
    let curve = rk4_step_with(&state.curve, state.t, dt, |c, stage_t| {
        let field = velocity_field(c, stage_t, params, seed)?;
        metrics.absorb(&field);
        Ok(field.derivative())
    })?;
    Ok((
        SimulationState {
            t: state.t + dt,
            curve,
            step_index: state.step_index + 1,
        },
        metrics,
    ))
}

/// How a run ended.
#[derive(Clone, Debug, PartialEq)]
pub enum Termination {
    Completed,
    /// Pipeline failure; partial output up to `t` is preserved.
    Aborted {
        t: f64,
        step: u64,
        reason: String,
    },
}

/// Whole-run solver health summary.
#[derive(Clone, Debug, Default)]
pub struct RunSummary {
    pub metrics: StepMetrics,
    pub steps_taken: u64,
    /// Curve-shortening monitor messages (constant-gap runs only).
    pub warnings: Vec<String>,
}

/// Snapshot series, diagnostics series, and summary of one run.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub snapshots: Vec<(f64, PolygonalCurve)>,
    pub diagnostics: Vec<DiagnosticsRecord>,
    pub summary: RunSummary,
    pub termination: Termination,
}

/// Evaluates the pipeline once at the current state to sample diagnostics.
pub fn measure(state: &SimulationState, params: &ModelParams) -> Result<DiagnosticsRecord> {
    let field = velocity_field(
        &state.curve,
        state.t,
        params,
        step_seed(params.seed, state.step_index),
    )?;
    let h = params.gap_law().h(state.t);
    Ok(DiagnosticsRecord {
        t: state.t,
        perimeter: field.cache.perimeter,
        area: field.cache.area,
        volume: field.cache.area * h,
        max_edge_dev: field.cache.max_edge_deviation(),
        constraint_residual: field.constraint_residual,
        m_in: field.m_in.unwrap_or(0),
    })
}

/// Integrates from t = 0 to `params.t_end`, emitting a snapshot and one
/// diagnostics record at t = 0, every `snapshot_interval`, and at the final
/// time. A pipeline error stops the run with the reason recorded; output up
/// to that point is kept.
pub fn run(
    params: &ModelParams,
    initial: PolygonalCurve,
    snapshot_interval: f64,
) -> Result<RunOutput> {
    params.validate()?;
    let mut state = SimulationState {
        t: 0.0,
        curve: initial,
        step_index: 0,
    };
    let mut snapshots = Vec::new();
    let mut diagnostics = Vec::new();
    let mut summary = RunSummary::default();
    let mut prev_perimeter: Option<f64> = None;

    let emit = |state: &SimulationState,
                diagnostics: &mut Vec<DiagnosticsRecord>,
                snapshots: &mut Vec<(f64, PolygonalCurve)>|
     -> Result<()> {
        diagnostics.push(measure(state, params)?);
        snapshots.push((state.t, state.curve.clone()));
        Ok(())
    };

    emit(&state, &mut diagnostics, &mut snapshots)?;
    let mut next_snapshot = snapshot_interval;

    let mut termination = Termination::Completed;
    // The last step is clamped onto t_end; the threshold swallows the
    // float dust accumulated by repeated t += dt.
    while params.t_end - state.t > 1e-9 * params.dt {
        let dt = params.dt.min(params.t_end - state.t);
        match rk4_step(&state, params, dt) {
            Ok((next, metrics)) => {
                summary.metrics.merge(&metrics);
                summary.steps_taken += 1;
                state = next;
            }
            Err(err) => {
                termination = Termination::Aborted {
                    t: state.t,
                    step: state.step_index,
                    reason: format!("step {} (t = {:.6}): {err}", state.step_index, state.t),
                };
                break;
            }
        }

        // Curve-shortening monitor for the classic problem: warn, never enforce.
        if params.kind == ModelKind::ConstantGap {
            let perimeter = crate::geometry::perimeter(&state.curve);
            if let Some(prev) = prev_perimeter {
                if perimeter > prev * (1.0 + 1e-8) {
                    summary.warnings.push(format!(
                        "perimeter grew from {prev:.12e} to {perimeter:.12e} at t = {:.6}",
                        state.t
                    ));
                }
            }
            prev_perimeter = Some(perimeter);
        }

        if state.t >= next_snapshot - 0.5 * params.dt && state.t < params.t_end - 0.5 * params.dt {
            emit(&state, &mut diagnostics, &mut snapshots)?;
            while next_snapshot <= state.t + 0.5 * params.dt {
                next_snapshot += snapshot_interval;
            }
        }
    }

    let already_emitted = snapshots.last().map(|(t, _)| *t) == Some(state.t);
    if termination == Termination::Completed && !already_emitted {
        emit(&state, &mut diagnostics, &mut snapshots)?;
    }

    Ok(RunOutput {
        snapshots,
        diagnostics,
        summary,
        termination,
    })
}

/// Number of sign alternations in the cyclic curvature sequence; at least
/// four once fingers have formed.
pub fn curvature_sign_alternations(cache: &GeometryCache) -> usize {
    let n = cache.len();
    (0..n)
        .filter(|&i| {
            let a = cache.curvature[i];
            let b = cache.curvature[(i + 1) % n];
            a.signum() != b.signum() && a != 0.0 && b != 0.0
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::regular_polygon;

    fn tdg_params() -> ModelParams {
        ModelParams {
            kind: ModelKind::Tdg,
            sigma: 2e-4,
            bmv: 0.0,
            ca: 100.0,
            h_r: 0.25,
            omega: 100.0,
            r_a: 1.0,
            mc_samples: 1000,
            seed: 7,
            dt: 1e-3,
            t_end: 0.2,
            h0: 1.0,
        }
    }

    #[test]
    fn initial_curve_samples_the_radius() {
        // Unperturbed spec: regular hexagon on the unit circle.
        let spec = InitialCurveSpec {
            r0: 1.0,
            modes: vec![],
        };
        let hex = build_initial_curve(&spec, 6).unwrap();
        let reference = regular_polygon(6, 1.0);
        for i in 0..6 {
            assert!((hex.vertex(i) - reference.vertex(i)).norm() < 1e-15);
        }

        // Gap-run shape: r(1) = 1 + 0.02 (1 + 0 + 1 + 0) = 1.04 at u = 1.
        let spec = tdg_initial_spec();
        let curve = build_initial_curve(&spec, 300).unwrap();
        let last = curve.vertex(299);
        assert!((last - Vec2::new(1.04, 0.0)).norm() < 1e-12);

        // Second magnetic shape: r(1) = 1 + 0.05 (1 - 1 + 1 - 0 + 0) = 1.05.
        let spec = InitialCurveSpec {
            r0: 1.0,
            modes: vec![
                Mode {
                    kind: WaveKind::Cos,
                    k: 4,
                    amplitude: 0.05,
                },
                Mode {
                    kind: WaveKind::Cos,
                    k: 10,
                    amplitude: -0.05,
                },
                Mode {
                    kind: WaveKind::Cos,
                    k: 22,
                    amplitude: 0.05,
                },
                Mode {
                    kind: WaveKind::Sin,
                    k: 6,
                    amplitude: -0.05,
                },
                Mode {
                    kind: WaveKind::Sin,
                    k: 10,
                    amplitude: 0.05,
                },
            ],
        };
        let curve = build_initial_curve(&spec, 300).unwrap();
        assert!((curve.vertex(299) - Vec2::new(1.05, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn initial_curve_rejects_bad_specs() {
        let negative = InitialCurveSpec {
            r0: 0.5,
            modes: vec![Mode {
                kind: WaveKind::Cos,
                k: 4,
                amplitude: -2.0,
            }],
        };
        assert!(matches!(
            build_initial_curve(&negative, 64),
            Err(Error::Spec(_))
        ));
        let odd = InitialCurveSpec {
            r0: 1.0,
            modes: vec![Mode {
                kind: WaveKind::Cos,
                k: 3,
                amplitude: 0.01,
            }],
        };
        assert!(matches!(build_initial_curve(&odd, 64), Err(Error::Spec(_))));
    }

    fn tdg_initial_spec() -> InitialCurveSpec {
        InitialCurveSpec {
            r0: 1.0,
            modes: vec![
                Mode {
                    kind: WaveKind::Cos,
                    k: 6,
                    amplitude: 0.02,
                },
                Mode {
                    kind: WaveKind::Sin,
                    k: 14,
                    amplitude: 0.02,
                },
                Mode {
                    kind: WaveKind::Cos,
                    k: 30,
                    amplitude: 0.02,
                },
                Mode {
                    kind: WaveKind::Sin,
                    k: 50,
                    amplitude: 0.02,
                },
            ],
        }
    }

    #[test]
    fn circle_field_is_symmetric() {
        let curve = regular_polygon(64, 1.0);
        let field = velocity_field(&curve, 0.0, &tdg_params(), 1).unwrap();
        let v0 = field.vertex_velocity[0];
        for (v, w) in field.vertex_velocity.iter().zip(&field.tangential) {
            assert!((v - v0).abs() < 1e-8);
            assert!(w.abs() < 1e-8);
        }
        assert!(field.constraint_residual <= 1e-10);
    }

    #[test]
    fn zero_tension_constant_gap_is_static() {
        let mut p = tdg_params();
        p.kind = ModelKind::ConstantGap;
        p.sigma = 0.0;
        p.omega = 0.0;
        let curve = build_initial_curve(&tdg_initial_spec(), 48).unwrap();
        let field = velocity_field(&curve, 0.0, &p, 1).unwrap();
        for (v, w) in field.vertex_velocity.iter().zip(&field.tangential) {
            assert_eq!(*v, 0.0);
            assert_eq!(*w, 0.0);
        }
        // The zero field leaves the curve bit-identical.
        let state = SimulationState {
            t: 0.0,
            curve: curve.clone(),
            step_index: 0,
        };
        let (next, _) = rk4_step(&state, &p, p.dt).unwrap();
        assert_eq!(next.curve, curve);
        assert_eq!(next.t, p.dt);
    }

    #[test]
    fn magnetic_bmv_zero_matches_recomposed_coefficients() {
        // With Bmv = 0 the magnetic data is kappa - (pi Ca / (4 h_r^2 h_*^2)) rho^2,
        // i.e. the same phi-free pipeline with rescaled coefficients.
        let curve = build_initial_curve(&tdg_initial_spec(), 64).unwrap();
        let cache = build_geometry(&curve).unwrap();
        let mut p = tdg_params();
        p.kind = ModelKind::Magnetic;
        p.bmv = 0.0;
        let t = 0.3;
        let field = velocity_field(&curve, t, &p, 5).unwrap();

        let h_star = t.exp();
        let pi = std::f64::consts::PI;
        let data: Vec<f64> = (0..64)
            .map(|i| {
                cache.curvature[i]
                    - pi * p.ca / (4.0 * p.h_r * p.h_r * h_star * h_star)
                        * cache.midpoint[i].norm_sq()
            })
            .collect();
        let points = MfsPointSets::place(&curve, &cache, p.r_a).unwrap();
        let sol = solve_dirichlet(&cache, &points, &data).unwrap();
        let coeff = p.h_r * p.h_r * h_star * h_star / (pi * p.ca);
        for i in 0..64 {
            let g = crate::mfs::evaluate_gradient(&sol, cache.midpoint[i]).unwrap();
            let v = -coeff * g.dot(cache.edge_normal[i])
                - 0.5 * cache.midpoint[i].dot(cache.edge_normal[i]);
            assert!((v - field.edge_velocity[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn shrinking_circle_tracks_exact_radius() {
        // Constant Dirichlet data keeps the polygon regular, so the
        // circumradius obeys R' = -R/2 exactly; t = 0.2 at dt = 1e-3 leaves
        // only rounding noise.
        let p = tdg_params();
        let n = 64;
        let mut state = SimulationState {
            t: 0.0,
            curve: regular_polygon(n, 1.0),
            step_index: 0,
        };
        let volume0 = {
            let c = build_geometry(&state.curve).unwrap();
            c.area * 1.0
        };
        while state.t < p.t_end - 0.5 * p.dt {
            let (next, _) = rk4_step(&state, &p, p.dt).unwrap();
            state = next;
        }
        let cache = build_geometry(&state.curve).unwrap();
        let mean_radius = state
            .curve
            .vertices()
            .iter()
            .map(|&v| (v - cache.barycenter).norm())
            .sum::<f64>()
            / n as f64;
        let exact = (-state.t / 2.0).exp();
        assert!(
            (mean_radius - exact).abs() < 1e-8 * exact,
            "radius {mean_radius} vs {exact}"
        );
        let volume = cache.area * state.t.exp();
        assert!((volume - volume0).abs() < 1e-8 * volume0);
    }

    #[test]
    fn run_with_zero_horizon_emits_single_snapshot() {
        let mut p = tdg_params();
        p.t_end = 0.0;
        let curve = regular_polygon(32, 1.0);
        let out = run(&p, curve.clone(), 0.1).unwrap();
        assert_eq!(out.termination, Termination::Completed);
        assert_eq!(out.snapshots.len(), 1);
        assert_eq!(out.snapshots[0].1, curve);
        assert_eq!(out.diagnostics.len(), 1);
        let rec = &out.diagnostics[0];
        assert_eq!(rec.volume, rec.area * 1.0);
    }

    #[test]
    fn run_emits_expected_cadence_and_health() {
        let mut p = tdg_params();
        p.t_end = 0.02;
        p.dt = 1e-3;
        let curve = build_initial_curve(&tdg_initial_spec(), 48).unwrap();
        let out = run(&p, curve, 0.005).unwrap();
        assert_eq!(out.termination, Termination::Completed);
        // t = 0, 0.005, 0.010, 0.015, 0.020.
        assert_eq!(out.snapshots.len(), 5);
        assert_eq!(out.summary.steps_taken, 20);
        assert!(out.summary.metrics.max_recurrence_residual <= 1e-10);
        assert!(out.summary.metrics.max_w_sum_scaled <= 1e-12);
        assert!(out.summary.metrics.max_area_rate_residual <= 1e-8);
        for pair in out.diagnostics.windows(2) {
            assert!(pair[1].area < pair[0].area);
        }
    }

    #[test]
    fn constant_gap_perimeter_monitor_stays_quiet() {
        let mut p = tdg_params();
        p.kind = ModelKind::ConstantGap;
        p.sigma = 2e-4;
        p.t_end = 0.05;
        p.dt = 2.5e-3;
        let curve = build_initial_curve(&tdg_initial_spec(), 48).unwrap();
        let out = run(&p, curve, 0.025).unwrap();
        assert_eq!(out.termination, Termination::Completed);
        assert!(
            out.summary.warnings.is_empty(),
            "warnings: {:?}",
            out.summary.warnings
        );
        let l0 = out.diagnostics.first().unwrap().perimeter;
        let l1 = out.diagnostics.last().unwrap().perimeter;
        assert!(l1 <= l0 * (1.0 + 1e-8));
    }

    #[test]
    fn magnetic_run_is_reproducible() {
        let mut p = tdg_params();
        p.kind = ModelKind::Magnetic;
        p.bmv = 10.0;
        p.ca = 100.0;
        p.mc_samples = 200;
        p.t_end = 5e-3;
        p.dt = 1e-3;
        let curve = build_initial_curve(&tdg_initial_spec(), 32).unwrap();
        let a = run(&p, curve.clone(), 1e-3).unwrap();
        let b = run(&p, curve, 1e-3).unwrap();
        assert_eq!(a.snapshots.len(), b.snapshots.len());
        for (sa, sb) in a.snapshots.iter().zip(&b.snapshots) {
            assert_eq!(sa.1, sb.1);
        }
        assert!(a.diagnostics.iter().all(|d| d.m_in > 0));
    }
}
