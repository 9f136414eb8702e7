//! Method-of-fundamental-solutions solver for the Dirichlet--Laplace problem
//! on the polygonal domain, with the volume-preservation constraint.
//!
//! The potential is represented as
//! `P(x) = Q_0 + sum_j Q_j (E(x - y_j) - E(x - z_j))` with
//! `E(x) = log|x| / (2 pi)`, exterior singular points `y_j` placed by the
//! modified Amano rule and far-field dummy points `z_j` on a circle of
//! radius 1000. Collocation at the N edge midpoints plus the flux constraint
//! `sum_j Q_j H_j = 0` yields a square (N+1) x (N+1) system; the constraint
//! is what makes the evolved area satisfy the volume-preserving identity.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geometry::{point_in_polygon, GeometryCache, PolygonalCurve, Vec2};
use crate::linalg::{lu_factor, solve, DenseMatrix};

/// Radius of the dummy-point circle.
pub const DUMMY_RADIUS: f64 = 1000.0;

/// Evaluation closer than this to a source point is refused.
pub const EVAL_SINGULARITY_TOL: f64 = 1e-13;

/// Fundamental solution of the Laplacian, E(x) = log|x| / (2 pi).
#[inline]
pub fn fundamental(x: Vec2) -> f64 {
    x.norm_sq().ln() / (2.0 * TAU)
}

/// Analytic gradient of E, x / (2 pi |x|^2).
#[inline]
pub fn fundamental_gradient(x: Vec2) -> Vec2 {
    x * (1.0 / (TAU * x.norm_sq()))
}

/// Exterior singular points and far-field dummy points for one solve.
#[derive(Clone, Debug)]
pub struct MfsPointSets {
    pub singular: Vec<Vec2>,
    pub dummy: Vec<Vec2>,
}

impl MfsPointSets {
    /// Places both point families for `curve` and verifies every singular
    /// point landed strictly outside.
    pub fn place(curve: &PolygonalCurve, cache: &GeometryCache, r_a: f64) -> Result<Self> {
        Ok(MfsPointSets {
            singular: place_singular_points(curve, cache, r_a)?,
            dummy: place_dummy_points(cache.len()),
        })
    }

    /// E_j(x) = E(x - y_j) - E(x - z_j).
    #[inline]
    pub fn basis(&self, j: usize, x: Vec2) -> f64 {
        fundamental(x - self.singular[j]) - fundamental(x - self.dummy[j])
    }

    #[inline]
    pub fn basis_gradient(&self, j: usize, x: Vec2) -> Vec2 {
        fundamental_gradient(x - self.singular[j]) - fundamental_gradient(x - self.dummy[j])
    }
}

/// Modified Amano placement: each singular point sits off the edge midpoint
/// along the chord normal, at half the chord length between the neighbouring
/// midpoints scaled by `r_a`.
///
/// Every point is checked to be strictly exterior; a point swallowed by a
/// concave finger aborts with its index rather than silently corrupting the
/// solve.
pub fn place_singular_points(
    curve: &PolygonalCurve,
    cache: &GeometryCache,
    r_a: f64,
) -> Result<Vec<Vec2>> {
    let n = cache.len();
    let mut points = Vec::with_capacity(n);
    for j in 0..n {
        let chord = cache.midpoint[(j + 1) % n] - cache.midpoint[(j + n - 1) % n];
        let len = chord.norm();
        if len < 1e-14 {
            return Err(Error::Placement { index: j });
        }
        // y_j = X_j^* + (r_a / 2) |chord| n_j^a with n_j^a = -chord.perp()/|chord|,
        // which collapses to X_j^* - (r_a / 2) chord.perp().
        let y = cache.midpoint[j] - chord.perp() * (0.5 * r_a);
        if point_in_polygon(curve, y) {
            return Err(Error::Placement { index: j });
        }
        points.push(y);
    }
    Ok(points)
}

/// Dummy points z_i = 1000 (cos a_i, sin a_i), a_i = 2 pi i / N, i = 1..N.
pub fn place_dummy_points(n: usize) -> Vec<Vec2> {
    (1..=n)
        .map(|i| {
            let a = TAU * i as f64 / n as f64;
            Vec2::new(DUMMY_RADIUS * a.cos(), DUMMY_RADIUS * a.sin())
        })
        .collect()
}

/// Discrete flux weights H_j = sum_i grad E_j(X_i^*) . n_i r_i.
pub fn flux_weights(cache: &GeometryCache, points: &MfsPointSets) -> Vec<f64> {
    let n = cache.len();
    (0..points.singular.len())
        .map(|j| {
            (0..n)
                .map(|i| {
                    points
                        .basis_gradient(j, cache.midpoint[i])
                        .dot(cache.edge_normal[i])
                        * cache.edge_length[i]
                })
                .sum()
        })
        .collect()
}

/// Charges solving the collocation system, plus everything needed to
/// evaluate the potential afterwards.
#[derive(Clone, Debug)]
pub struct MfsSolution {
    /// Constant term Q_0.
    pub q0: f64,
    /// Charges Q_1..Q_N.
    pub charges: Vec<f64>,
    pub points: MfsPointSets,
    pub flux_weights: Vec<f64>,
}

impl MfsSolution {
    /// |sum_j Q_j H_j| relative to sum_j |Q_j H_j| (0 when all terms vanish).
    pub fn constraint_residual(&self) -> f64 {
        let mut signed = 0.0;
        let mut total = 0.0;
        for (q, h) in self.charges.iter().zip(&self.flux_weights) {
            signed += q * h;
            total += (q * h).abs();
        }
        if total == 0.0 {
            0.0
        } else {
            signed.abs() / total
        }
    }
}

/// Solves the Dirichlet problem with per-edge boundary values `g` imposed at
/// the edge midpoints, subject to the flux constraint.
pub fn solve_dirichlet(
    cache: &GeometryCache,
    points: &MfsPointSets,
    boundary_values: &[f64],
) -> Result<MfsSolution> {
    let n = cache.len();
    if boundary_values.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: boundary_values.len(),
        });
    }
    let weights = flux_weights(cache, points);

    // Unknowns (Q_0, Q_1..Q_N): N collocation rows plus the constraint row.
    let mut a = DenseMatrix::zeros(n + 1, n + 1);
    let mut rhs = vec![0.0; n + 1];
    for i in 0..n {
        a.set(i, 0, 1.0);
        for j in 0..n {
            a.set(i, j + 1, points.basis(j, cache.midpoint[i]));
        }
        rhs[i] = boundary_values[i];
    }
    for (j, &w) in weights.iter().enumerate() {
        a.set(n, j + 1, w);
    }

    let solution = solve(&lu_factor(&a)?, &rhs)?;
    Ok(MfsSolution {
        q0: solution[0],
        charges: solution[1..].to_vec(),
        points: points.clone(),
        flux_weights: weights,
    })
}

/// P(x) = Q_0 + sum_j Q_j E_j(x).
pub fn evaluate_potential(sol: &MfsSolution, x: Vec2) -> Result<f64> {
    check_distance(sol, x)?;
    let mut p = sol.q0;
    for (j, &q) in sol.charges.iter().enumerate() {
        p += q * sol.points.basis(j, x);
    }
    Ok(p)
}

/// Analytic gradient of the representation; no numerical differentiation.
pub fn evaluate_gradient(sol: &MfsSolution, x: Vec2) -> Result<Vec2> {
    check_distance(sol, x)?;
    let mut g = Vec2::ZERO;
    for (j, &q) in sol.charges.iter().enumerate() {
        g = g + sol.points.basis_gradient(j, x) * q;
    }
    Ok(g)
}

fn check_distance(sol: &MfsSolution, x: Vec2) -> Result<()> {
    for &y in sol.points.singular.iter().chain(&sol.points.dummy) {
        let d = (x - y).norm();
        if d < EVAL_SINGULARITY_TOL {
            return Err(Error::EvaluationAtSingularity(d));
        }
    }
    Ok(())
}
