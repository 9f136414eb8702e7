//! Closed polygonal interface and its discrete differential geometry.
//!
//! The interface is an N-sided polygon with vertices labeled anti-clockwise.
//! Per-edge quantities (tangent, outward normal, midpoint, curvature) and
//! per-vertex quantities (averaged frames, half-angle trig) are computed in
//! one pass into a [`GeometryCache`], which every downstream module consumes.
//!
//! Indexing convention used throughout the crate: edge `i` runs from vertex
//! `i-1` to vertex `i` (cyclically), so vertex `i` joins edges `i` and `i+1`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Edges shorter than this abort the run rather than feeding garbage frames
/// into the solver.
pub const EDGE_COLLAPSE_TOL: f64 = 1e-14;

/// Half-angle cosines below this signal a fold-back (exterior angle near pi).
pub const CUSP_TOL: f64 = 1e-8;

/// A point or vector in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product (self x o).
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Rotation by +pi/2: (a, b) -> (-b, a). The crate-wide convention;
    /// outward normals are `-tangent.perp()` for anti-clockwise curves.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Closed polygonal Jordan curve, vertices in anti-clockwise order.
///
/// Construction enforces N >= 3, positive signed area, and non-degenerate
/// edges; the evolution loop revalidates after every accepted step.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonalCurve {
    vertices: Vec<Vec2>,
}

impl PolygonalCurve {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::TooFewVertices(vertices.len()));
        }
        let n = vertices.len();
        for i in 0..n {
            let prev = vertices[(i + n - 1) % n];
            let len = (vertices[i] - prev).norm();
            if len < EDGE_COLLAPSE_TOL {
                return Err(Error::DegenerateEdge {
                    index: i,
                    length: len,
                });
            }
        }
        let signed = signed_area(&vertices);
        if signed <= 0.0 {
            return Err(Error::NotAntiClockwise(signed));
        }
        Ok(PolygonalCurve { vertices })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    /// Vertex with cyclic indexing (any `i`, reduced mod N).
    pub fn vertex(&self, i: usize) -> Vec2 {
        self.vertices[i % self.vertices.len()]
    }
}

/// All per-step derived geometry of a [`PolygonalCurve`].
///
/// `edge_*` arrays are indexed by edge, `vertex_*` and the half-angle arrays
/// by vertex; see the module docs for how the two interleave.
#[derive(Clone, Debug)]
pub struct GeometryCache {
    /// Edge lengths r_i.
    pub edge_length: Vec<f64>,
    /// Unit edge tangents t_i.
    pub edge_tangent: Vec<Vec2>,
    /// Unit outward edge normals n_i = -t_i.perp().
    pub edge_normal: Vec<Vec2>,
    /// Edge midpoints X_i^* (collocation points).
    pub midpoint: Vec<Vec2>,
    /// Unit vertex tangents T_i (mean direction of the adjacent edges).
    pub vertex_tangent: Vec<Vec2>,
    /// Unit outward vertex normals N_i = -T_i.perp().
    pub vertex_normal: Vec<Vec2>,
    /// cos(phi_i / 2) for the signed exterior angle phi_i at vertex i.
    pub half_cos: Vec<f64>,
    /// sin(phi_i / 2), signed: positive at convex vertices.
    pub half_sin: Vec<f64>,
    /// tan(phi_i / 2).
    pub half_tan: Vec<f64>,
    /// Discrete curvature per edge, kappa_i = (tan_i + tan_{i-1}) / r_i.
    pub curvature: Vec<f64>,
    /// Perimeter L.
    pub perimeter: f64,
    /// Enclosed (shoelace) area A, positive by orientation.
    pub area: f64,
    /// Area centroid g.
    pub barycenter: Vec2,
}

impl GeometryCache {
    pub fn len(&self) -> usize {
        self.edge_length.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_length.is_empty()
    }

    /// max_i |r_i - L/N| / (L/N), the edge-uniformity diagnostic.
    pub fn max_edge_deviation(&self) -> f64 {
        let mean = self.perimeter / self.len() as f64;
        self.edge_length
            .iter()
            .map(|&r| (r - mean).abs() / mean)
            .fold(0.0, f64::max)
    }
}

/// Computes every cached quantity for `curve` in one pass.
///
/// Fails with [`Error::DegenerateEdge`] on collapsed edges and
/// [`Error::Cusp`] when adjacent edges fold back onto each other; both
/// abort the surrounding run rather than silently continuing.
pub fn build_geometry(curve: &PolygonalCurve) -> Result<GeometryCache> {
    let verts = curve.vertices();
    let n = verts.len();

    let mut edge_length = vec![0.0; n];
    let mut edge_tangent = vec![Vec2::ZERO; n];
    let mut edge_normal = vec![Vec2::ZERO; n];
    let mut midpoint = vec![Vec2::ZERO; n];
    for i in 0..n {
        let a = verts[(i + n - 1) % n];
        let b = verts[i];
        let d = b - a;
        let r = d.norm();
        if r < EDGE_COLLAPSE_TOL {
            return Err(Error::DegenerateEdge {
                index: i,
                length: r,
            });
        }
        edge_length[i] = r;
        let t = d * (1.0 / r);
        edge_tangent[i] = t;
        edge_normal[i] = -t.perp();
        midpoint[i] = (a + b) * 0.5;
    }

    let mut half_cos = vec![0.0; n];
    let mut half_sin = vec![0.0; n];
    let mut half_tan = vec![0.0; n];
    let mut vertex_tangent = vec![Vec2::ZERO; n];
    let mut vertex_normal = vec![Vec2::ZERO; n];
    for i in 0..n {
        let t_in = edge_tangent[i];
        let t_out = edge_tangent[(i + 1) % n];
        // Signed exterior angle phi_i in (-pi, pi), positive at convex
        // vertices of an anti-clockwise curve.
        let phi = t_in.cross(t_out).atan2(t_in.dot(t_out));
        let c = (0.5 * phi).cos();
        if c.abs() < CUSP_TOL {
            return Err(Error::Cusp {
                index: i,
                cos_half: c,
            });
        }
        half_cos[i] = c;
        half_sin[i] = (0.5 * phi).sin();
        half_tan[i] = half_sin[i] / c;
        let bisector = (t_in + t_out) * (1.0 / (2.0 * c));
        vertex_tangent[i] = bisector;
        vertex_normal[i] = -bisector.perp();
    }

    let mut curvature = vec![0.0; n];
    for i in 0..n {
        curvature[i] = (half_tan[i] + half_tan[(i + n - 1) % n]) / edge_length[i];
    }

    let area = signed_area(verts);
    Ok(GeometryCache {
        perimeter: edge_length.iter().sum(),
        area,
        barycenter: centroid(verts, area),
        edge_length,
        edge_tangent,
        edge_normal,
        midpoint,
        vertex_tangent,
        vertex_normal,
        half_cos,
        half_sin,
        half_tan,
        curvature,
    })
}

/// Shoelace area of `curve` (positive by the orientation invariant).
pub fn area(curve: &PolygonalCurve) -> f64 {
    signed_area(curve.vertices())
}

pub fn perimeter(curve: &PolygonalCurve) -> f64 {
    let v = curve.vertices();
    let n = v.len();
    (0..n).map(|i| (v[(i + 1) % n] - v[i]).norm()).sum()
}

/// Area centroid of the polygon.
pub fn barycenter(curve: &PolygonalCurve) -> Vec2 {
    centroid(curve.vertices(), signed_area(curve.vertices()))
}

fn signed_area(verts: &[Vec2]) -> f64 {
    let n = verts.len();
    let mut twice = 0.0;
    for i in 0..n {
        twice += verts[i].cross(verts[(i + 1) % n]);
    }
    0.5 * twice
}

fn centroid(verts: &[Vec2], area: f64) -> Vec2 {
    let n = verts.len();
    let mut c = Vec2::ZERO;
    for i in 0..n {
        let a = verts[i];
        let b = verts[(i + 1) % n];
        c = c + (a + b) * a.cross(b);
    }
    c * (1.0 / (6.0 * area))
}

/// Winding-number interior test.
///
/// Sums the signed angles subtended at `p` by each edge (atan2 of cross and
/// dot products) and reports inside iff the total is within pi of 2*pi.
/// The signed sum stays correct on the strongly non-convex fingered shapes
/// this simulation produces, where an unsigned angle sum would not.
///
/// Callers keep `p` away (1e-12) from vertices and edges; exactly-on-boundary
/// points resolve arbitrarily but finitely.
pub fn point_in_polygon(curve: &PolygonalCurve, p: Vec2) -> bool {
    let verts = curve.vertices();
    let n = verts.len();
    let mut total = 0.0;
    let mut prev = verts[n - 1] - p;
    for &v in verts {
        let cur = v - p;
        total += prev.cross(cur).atan2(prev.dot(cur));
        prev = cur;
    }
    (total - std::f64::consts::TAU).abs() < std::f64::consts::PI
}

/// Regular N-gon of circumradius `r` centred on the origin, first vertex at
/// angle 2*pi/n (vertices at u = i/N like the run initial curves).
pub fn regular_polygon(n: usize, r: f64) -> PolygonalCurve {
    let verts = (1..=n)
        .map(|i| {
            let th = std::f64::consts::TAU * i as f64 / n as f64;
            Vec2::new(r * th.cos(), r * th.sin())
        })
        .collect();
    PolygonalCurve::new(verts).expect("regular polygon is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{PI, TAU};

    fn unit_square() -> PolygonalCurve {
        PolygonalCurve::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn rejects_too_few_clockwise_and_degenerate() {
        assert!(matches!(
            PolygonalCurve::new(vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0)]),
            Err(Error::TooFewVertices(2))
        ));
        let clockwise = vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(1.0, 0.0),
        ];
        assert!(matches!(
            PolygonalCurve::new(clockwise),
            Err(Error::NotAntiClockwise(_))
        ));
        let dup = vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
        ];
        assert!(matches!(
            PolygonalCurve::new(dup),
            Err(Error::DegenerateEdge { .. })
        ));
    }

    #[test]
    fn cusp_guard_fires_on_fold_back() {
        // Spike: the two edges at the tip are anti-parallel.
        let verts = vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(1.0, 2.0),
            Vec2::new(1.0, 4.0),
            Vec2::new(1.0 - 1e-13, 2.0),
            Vec2::new(0.0, 2.0),
        ];
        let curve = PolygonalCurve::new(verts).unwrap();
        assert!(matches!(build_geometry(&curve), Err(Error::Cusp { .. })));
    }

    #[test]
    fn unit_square_frames_and_scalars() {
        let cache = build_geometry(&unit_square()).unwrap();
        assert!((cache.area - 1.0).abs() < 1e-15);
        assert!((cache.perimeter - 4.0).abs() < 1e-15);
        assert!((cache.barycenter - Vec2::new(0.5, 0.5)).norm() < 1e-15);
        // Bottom edge (edge 1 in code indexing ends at vertex (1,0)):
        // tangent +x, outward normal -y.
        assert!((cache.edge_tangent[1] - Vec2::new(1.0, 0.0)).norm() < 1e-15);
        assert!((cache.edge_normal[1] - Vec2::new(0.0, -1.0)).norm() < 1e-15);
        // Corner between edge directions (1,0) and (0,1).
        let s = 1.0 / 2.0_f64.sqrt();
        assert!((cache.vertex_tangent[1] - Vec2::new(s, s)).norm() < 1e-12);
        assert!((cache.vertex_normal[1] - Vec2::new(s, -s)).norm() < 1e-12);
    }

    #[test]
    fn flat_vertex_contributes_zero_tan() {
        let verts = vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(2.0, 2.0),
            Vec2::new(0.0, 2.0),
        ];
        let cache = build_geometry(&PolygonalCurve::new(verts).unwrap()).unwrap();
        // Vertex 1 = (1,0) is collinear with its neighbours.
        assert_eq!(cache.half_tan[1], 0.0);
        assert_eq!(cache.half_sin[1], 0.0);
        assert_eq!(cache.half_cos[1], 1.0);
    }

    #[test]
    fn regular_polygon_analytics() {
        for &(n, r) in &[(6usize, 1.0), (100, 1.0), (37, 2.5)] {
            let cache = build_geometry(&regular_polygon(n, r)).unwrap();
            let kappa = 1.0 / (r * (PI / n as f64).cos());
            for &k in &cache.curvature {
                assert!((k - kappa).abs() < 1e-12, "n={n} kappa {k} vs {kappa}");
            }
            let len = 2.0 * n as f64 * r * (PI / n as f64).sin();
            assert!((cache.perimeter - len).abs() < 1e-12 * len);
            let area = 0.5 * n as f64 * r * r * (TAU / n as f64).sin();
            assert!((cache.area - area).abs() < 1e-12 * area);
            assert!(cache.barycenter.norm() < 1e-12);
        }
        // Hexagon value quoted explicitly: 2 tan(pi/6) / r with r = 1.
        let hex = build_geometry(&regular_polygon(6, 1.0)).unwrap();
        assert!((hex.curvature[0] - 1.1547005383792515).abs() < 1e-12);
    }

    #[test]
    fn frames_are_unit_and_orthogonal() {
        let curve = random_star_polygon(64, 7);
        let cache = build_geometry(&curve).unwrap();
        for i in 0..curve.len() {
            assert!((cache.edge_tangent[i].norm() - 1.0).abs() < 1e-12);
            assert!((cache.edge_normal[i].norm() - 1.0).abs() < 1e-12);
            assert!((cache.vertex_tangent[i].norm() - 1.0).abs() < 1e-12);
            assert!((cache.vertex_normal[i].norm() - 1.0).abs() < 1e-12);
            assert!(cache.vertex_normal[i].dot(cache.vertex_tangent[i]).abs() < 1e-12);
            // Shared rotation convention.
            assert!((cache.edge_normal[i] + cache.edge_tangent[i].perp()).norm() < 1e-15);
        }
    }

    #[test]
    fn exterior_angles_sum_to_tau() {
        for seed in 0..5 {
            let curve = random_star_polygon(50 + 10 * seed as usize, 3 + seed as usize);
            let cache = build_geometry(&curve).unwrap();
            let total: f64 = cache
                .half_sin
                .iter()
                .zip(&cache.half_cos)
                .map(|(&s, &c)| 2.0 * s.atan2(c))
                .sum();
            assert!((total - TAU).abs() < 1e-9, "sum {total}");
        }
    }

    #[test]
    fn translation_invariance() {
        let base = random_star_polygon(40, 4);
        let shift = Vec2::new(3.25, -1.5);
        let moved =
            PolygonalCurve::new(base.vertices().iter().map(|&v| v + shift).collect()).unwrap();
        assert!((area(&base) - area(&moved)).abs() < 1e-12 * area(&base));
        assert!((perimeter(&base) - perimeter(&moved)).abs() < 1e-12 * perimeter(&base));
        assert!((barycenter(&moved) - barycenter(&base) - shift).norm() < 1e-12);
    }

    #[test]
    fn cyclic_relabeling_shifts_all_arrays() {
        let base = random_star_polygon(33, 5);
        let n = base.len();
        let shift = 13;
        let rotated: Vec<Vec2> = (0..n).map(|i| base.vertex(i + shift)).collect();
        let rotated = PolygonalCurve::new(rotated).unwrap();
        let a = build_geometry(&base).unwrap();
        let b = build_geometry(&rotated).unwrap();
        for i in 0..n {
            assert_eq!(a.edge_length[(i + shift) % n], b.edge_length[i]);
            assert_eq!(a.curvature[(i + shift) % n], b.curvature[i]);
            assert_eq!(a.half_cos[(i + shift) % n], b.half_cos[i]);
            assert_eq!(a.midpoint[(i + shift) % n], b.midpoint[i]);
        }
    }

    #[test]
    fn point_in_polygon_square() {
        let sq = unit_square();
        assert!(point_in_polygon(&sq, Vec2::new(0.5, 0.5)));
        assert!(!point_in_polygon(&sq, Vec2::new(2.0, 2.0)));
        assert!(!point_in_polygon(&sq, Vec2::new(-0.3, 0.5)));
    }

    #[test]
    fn point_in_polygon_l_shape_notch() {
        // L-shaped hexagon; the notch quadrant is exterior.
        let l = PolygonalCurve::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(2.0, 1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(1.0, 2.0),
            Vec2::new(0.0, 2.0),
        ])
        .unwrap();
        assert!(!point_in_polygon(&l, Vec2::new(1.5, 1.5)));
        assert!(point_in_polygon(&l, Vec2::new(0.5, 1.5)));
        assert!(point_in_polygon(&l, Vec2::new(1.5, 0.5)));
        // Cross-check against the ray-casting oracle on random points.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let p = Vec2::new(rng.gen_range(-0.5..2.5), rng.gen_range(-0.5..2.5));
            if near_boundary(&l, p, 1e-9) {
                continue;
            }
            assert_eq!(point_in_polygon(&l, p), ray_cast(&l, p), "p = {p:?}");
        }
    }

    #[test]
    fn point_in_polygon_matches_ray_casting_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for case in 0..6 {
            let curve = if case % 2 == 0 {
                regular_polygon(3 + case * 4, 1.0 + 0.3 * case as f64)
            } else {
                random_star_polygon(20 + case * 9, case + 2)
            };
            let r = 2.0 + 0.3 * case as f64;
            for _ in 0..1000 {
                let p = Vec2::new(rng.gen_range(-r..r), rng.gen_range(-r..r));
                if near_boundary(&curve, p, 1e-9) {
                    continue;
                }
                assert_eq!(point_in_polygon(&curve, p), ray_cast(&curve, p));
            }
        }
    }

    // --- test-only oracles -------------------------------------------------

    /// Star-shaped polygon with a wobbly radius; always simple and
    /// anti-clockwise, concave for larger wobble counts.
    fn random_star_polygon(n: usize, lobes: usize) -> PolygonalCurve {
        let verts = (1..=n)
            .map(|i| {
                let th = TAU * i as f64 / n as f64;
                let r = 1.0 + 0.35 * (lobes as f64 * th).sin();
                Vec2::new(r * th.cos(), r * th.sin())
            })
            .collect();
        PolygonalCurve::new(verts).unwrap()
    }

    /// Crossing-number (ray casting) interior test, independent of the
    /// winding-sum implementation under test.
    fn ray_cast(curve: &PolygonalCurve, p: Vec2) -> bool {
        let v = curve.vertices();
        let n = v.len();
        let mut inside = false;
        for i in 0..n {
            let a = v[i];
            let b = v[(i + 1) % n];
            if (a.y > p.y) != (b.y > p.y) {
                let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if p.x < x_cross {
                    inside = !inside;
                }
            }
        }
        inside
    }

    fn near_boundary(curve: &PolygonalCurve, p: Vec2, tol: f64) -> bool {
        let v = curve.vertices();
        let n = v.len();
        (0..n).any(|i| {
            let a = v[i];
            let b = v[(i + 1) % n];
            let d = b - a;
            let t = ((p - a).dot(d) / d.norm_sq()).clamp(0.0, 1.0);
            (p - (a + d * t)).norm() < tol
        })
    }
}
