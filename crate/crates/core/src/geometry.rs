//! Distance geometry of four planar points.
//!
//! Everything downstream works in the six mutual distances
//! r12, r13, r14, r23, r24, r34 (always in that order). This module supplies
//! the bridge between labeled positions and distance vectors: pairwise
//! distances, the 5x5 Cayley-Menger determinant V that vanishes exactly on
//! planar-realizable distance vectors, its first and second derivatives with
//! respect to squared distances, oriented triangle areas, and the convexity
//! predicate for sequentially ordered quadrilaterals.

// Index loops mirror the matrix layout in the fixed-size determinant code.
#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};

/// Index pairs (0-based body indices) in the fixed order
/// (12, 13, 14, 23, 24, 34).
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Human-readable pair labels matching [`PAIRS`].
pub const PAIR_NAMES: [&str; 6] = ["r12", "r13", "r14", "r23", "r24", "r34"];

/// A point of the configuration plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Euclidean distance to another point.
    pub fn dist(self, other: Self) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Twice the signed area of the triangle (p, q, r), positive when the
/// traversal is counterclockwise.
fn cross2(p: Point2, q: Point2, r: Point2) -> f64 {
    (q.x - p.x) * (r.y - p.y) - (r.x - p.x) * (q.y - p.y)
}

/// Signed area of the triangle (p, q, r) by the shoelace formula.
fn shoelace(p: Point2, q: Point2, r: Point2) -> f64 {
    0.5 * cross2(p, q, r)
}

/// Four labeled bodies in the plane together with their weights.
///
/// Weights are masses in the gravitational problem (positive) or
/// circulations in the vortex problem (any sign). The constructor only
/// enforces what every operation needs: distinct positions and finite data.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarConfig {
    positions: [Point2; 4],
    weights: [f64; 4],
}

impl PlanarConfig {
    pub fn new(positions: [Point2; 4], weights: [f64; 4]) -> Result<Self> {
        for &(i, j) in &PAIRS {
            if positions[i].dist(positions[j]) == 0.0 {
                return Err(Error::CoincidentBodies { i: i + 1, j: j + 1 });
            }
        }
        for (k, w) in weights.iter().enumerate() {
            if !w.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "weight",
                    value: weights[k],
                });
            }
        }
        Ok(Self { positions, weights })
    }

    /// Convenience constructor with all weights equal to one.
    pub fn unit_weights(positions: [Point2; 4]) -> Result<Self> {
        Self::new(positions, [1.0; 4])
    }

    pub fn positions(&self) -> &[Point2; 4] {
        &self.positions
    }

    pub fn weights(&self) -> &[f64; 4] {
        &self.weights
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// The six products w_i * w_j in pair order.
    pub fn weight_products(&self) -> [f64; 6] {
        let mut out = [0.0; 6];
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            out[k] = self.weights[i] * self.weights[j];
        }
        out
    }
}

/// The six mutual distances in the fixed order (12, 13, 14, 23, 24, 34).
///
/// Only positivity is enforced at construction; triangle inequalities and
/// planar realizability are separate predicates because several operations
/// (the Cayley-Menger determinant above all) are deliberately evaluated on
/// non-realizable inputs such as the regular tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct DistanceVector {
    pub r12: f64,
    pub r13: f64,
    pub r14: f64,
    pub r23: f64,
    pub r24: f64,
    pub r34: f64,
}

impl DistanceVector {
    pub fn new(r12: f64, r13: f64, r14: f64, r23: f64, r24: f64, r34: f64) -> Result<Self> {
        Self::from_array([r12, r13, r14, r23, r24, r34])
    }

    pub fn from_array(r: [f64; 6]) -> Result<Self> {
        for (k, &v) in r.iter().enumerate() {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::NonpositiveDistance {
                    pair: PAIR_NAMES[k],
                    value: v,
                });
            }
        }
        Ok(Self {
            r12: r[0],
            r13: r[1],
            r14: r[2],
            r23: r[3],
            r24: r[4],
            r34: r[5],
        })
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.r12, self.r13, self.r14, self.r23, self.r24, self.r34]
    }

    /// Largest of the six distances.
    pub fn max_distance(&self) -> f64 {
        self.as_array().iter().fold(0.0f64, |m, &v| m.max(v))
    }

    /// All distances multiplied by `t > 0`.
    pub fn scaled(&self, t: f64) -> Result<Self> {
        Self::from_array(self.as_array().map(|r| t * r))
    }

    /// Triangle inequality r_ij + r_jk > r_ik for every triple of distinct
    /// indices. Checked on all four triangles of the quadrilateral.
    pub fn triangle_inequalities_hold(&self) -> bool {
        let r = self.as_array();
        // Triangles by pair indices into `r`: (123), (124), (134), (234).
        const TRIANGLES: [[usize; 3]; 4] = [[0, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5]];
        TRIANGLES.iter().all(|t| {
            let (x, y, z) = (r[t[0]], r[t[1]], r[t[2]]);
            x + y > z && y + z > x && z + x > y
        })
    }
}

/// Signed areas A_i of the triangles omitting body i, in the Dziobek
/// convention: A_i = (-1)^(i+1) times the shoelace area of the remaining
/// bodies taken in ascending label order. For a counterclockwise convex
/// quadrilateral this gives A1, A3 > 0 and A2, A4 < 0, which is the sign
/// convention the central-configuration equations rely on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrientedAreas {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
}

impl OrientedAreas {
    pub fn from_positions(q: &[Point2; 4]) -> Self {
        let area = |omit: usize| -> f64 {
            let t: Vec<usize> = (0..4).filter(|&k| k != omit).collect();
            let raw = shoelace(q[t[0]], q[t[1]], q[t[2]]);
            if omit.is_multiple_of(2) {
                raw
            } else {
                -raw
            }
        };
        Self {
            a1: area(0),
            a2: area(1),
            a3: area(2),
            a4: area(3),
        }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.a1, self.a2, self.a3, self.a4]
    }

    /// The six products A_i * A_j in pair order.
    pub fn pair_products(&self) -> [f64; 6] {
        let a = self.as_array();
        let mut out = [0.0; 6];
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            out[k] = a[i] * a[j];
        }
        out
    }
}

/// Pairwise Euclidean distances of the four bodies under the fixed index
/// convention. Cannot fail: `PlanarConfig` rules out coincident bodies.
pub fn mutual_distances(config: &PlanarConfig) -> DistanceVector {
    let q = config.positions();
    let mut r = [0.0; 6];
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        r[k] = q[i].dist(q[j]);
    }
    DistanceVector::from_array(r).expect("constructor guarantees positive distances")
}

/// Oriented triangle areas of the configuration (see [`OrientedAreas`]).
pub fn oriented_areas(config: &PlanarConfig) -> OrientedAreas {
    OrientedAreas::from_positions(config.positions())
}

/// Bordered 5x5 Cayley-Menger matrix with squared distances as entries.
fn cm_matrix(d: &DistanceVector) -> [[f64; 5]; 5] {
    let sq = d.as_array().map(|r| r * r);
    let mut m = [[0.0; 5]; 5];
    for i in 1..5 {
        m[0][i] = 1.0;
        m[i][0] = 1.0;
    }
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        m[i + 1][j + 1] = sq[k];
        m[j + 1][i + 1] = sq[k];
    }
    m
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn det4(m: &[[f64; 4]; 4]) -> f64 {
    let mut det = 0.0;
    for j in 0..4 {
        if m[0][j] == 0.0 {
            continue;
        }
        let mut minor = [[0.0; 3]; 3];
        for i in 1..4 {
            let mut mj = 0;
            for k in 0..4 {
                if k == j {
                    continue;
                }
                minor[i - 1][mj] = m[i][k];
                mj += 1;
            }
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        det += sign * m[0][j] * det3(&minor);
    }
    det
}

fn det5(m: &[[f64; 5]; 5]) -> f64 {
    let mut det = 0.0;
    for j in 0..5 {
        if m[0][j] == 0.0 {
            continue;
        }
        let mut minor = [[0.0; 4]; 4];
        for i in 1..5 {
            let mut mj = 0;
            for k in 0..5 {
                if k == j {
                    continue;
                }
                minor[i - 1][mj] = m[i][k];
                mj += 1;
            }
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        det += sign * m[0][j] * det4(&minor);
    }
    det
}

/// Cofactor of the 5x5 matrix at (row, col).
fn cofactor5(m: &[[f64; 5]; 5], row: usize, col: usize) -> f64 {
    let mut minor = [[0.0; 4]; 4];
    let mut mi = 0;
    for i in 0..5 {
        if i == row {
            continue;
        }
        let mut mj = 0;
        for j in 0..5 {
            if j == col {
                continue;
            }
            minor[mi][mj] = m[i][j];
            mj += 1;
        }
        mi += 1;
    }
    let sign = if (row + col).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    sign * det4(&minor)
}

/// Second derivative of det(M) with respect to the entries at (p, q) and
/// (u, v). Zero when the entries share a row or a column; otherwise a signed
/// 3x3 complementary minor.
fn det5_second_derivative(m: &[[f64; 5]; 5], p: usize, q: usize, u: usize, v: usize) -> f64 {
    if p == u || q == v {
        return 0.0;
    }
    let mut minor = [[0.0; 3]; 3];
    let mut mi = 0;
    for i in 0..5 {
        if i == p || i == u {
            continue;
        }
        let mut mj = 0;
        for j in 0..5 {
            if j == q || j == v {
                continue;
            }
            minor[mi][mj] = m[i][j];
            mj += 1;
        }
        mi += 1;
    }
    let parity = if (p + q + u + v).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let orient = if (p < u) == (q < v) { 1.0 } else { -1.0 };
    parity * orient * det3(&minor)
}

/// The Cayley-Menger determinant V of the six distances. V vanishes exactly
/// when the distances are realizable by four coplanar points (given triangle
/// inequalities); for points realizable only in space V is positive, e.g.
/// V = 4 for the regular tetrahedron with unit sides.
pub fn cayley_menger(d: &DistanceVector) -> f64 {
    det5(&cm_matrix(d))
}

/// Scale factor for planarity tests: V is homogeneous of degree 8 in the
/// distances, so |V| is compared against `tol_rel * max(1, r_max^8)`.
pub fn planarity_scale(d: &DistanceVector) -> f64 {
    let rmax = d.max_distance();
    1.0f64.max(rmax.powi(8))
}

/// Default relative tolerance for "V vanishes".
pub const PLANARITY_TOL_REL: f64 = 1e-9;

/// True when |V| is below the scaled tolerance and all triangle inequalities
/// hold, i.e. the distances embed as four points of the plane.
pub fn is_realizable_planar(d: &DistanceVector, tol_rel: f64) -> bool {
    d.triangle_inequalities_hold() && cayley_menger(d).abs() <= tol_rel * planarity_scale(d)
}

/// The six partial derivatives dV/d(r_ij^2) in pair order, by analytic
/// differentiation of the determinant (cofactor expansion). Valid for any
/// positive distance vector, realizable or not.
pub fn cayley_menger_gradient_raw(d: &DistanceVector) -> [f64; 6] {
    let m = cm_matrix(d);
    let mut grad = [0.0; 6];
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        // The squared distance appears at (i+1, j+1) and (j+1, i+1); the
        // matrix is symmetric, so the two cofactors are equal.
        grad[k] = 2.0 * cofactor5(&m, i + 1, j + 1);
    }
    grad
}

/// Checked variant of [`cayley_menger_gradient_raw`]: errors unless the
/// distances are planar-realizable, since the identity
/// dV/d(r_ij^2) = -32 A_i A_j that callers pair this gradient with holds
/// only on planar configurations.
pub fn cayley_menger_gradient(d: &DistanceVector, tol_rel: f64) -> Result<[f64; 6]> {
    let v = cayley_menger(d);
    let tol = tol_rel * planarity_scale(d);
    if v.abs() > tol {
        return Err(Error::NotPlanar { v, tol });
    }
    Ok(cayley_menger_gradient_raw(d))
}

/// Hessian of V with respect to the six squared distances, in pair order.
/// Needed by the Newton solver, which differentiates the gradient.
pub fn cayley_menger_hessian(d: &DistanceVector) -> [[f64; 6]; 6] {
    let m = cm_matrix(d);
    let mut h = [[0.0; 6]; 6];
    for (ka, &(i, j)) in PAIRS.iter().enumerate() {
        let pos_a = [(i + 1, j + 1), (j + 1, i + 1)];
        for (kb, &(k, l)) in PAIRS.iter().enumerate() {
            let pos_b = [(k + 1, l + 1), (l + 1, k + 1)];
            let mut sum = 0.0;
            for &(p, q) in &pos_a {
                for &(u, v) in &pos_b {
                    sum += det5_second_derivative(&m, p, q, u, v);
                }
            }
            h[ka][kb] = sum;
        }
    }
    h
}

/// True when the bodies are in counterclockwise convex position in label
/// order 1, 2, 3, 4 with no body on the hull of the other three. Collinear
/// triples are rejected.
pub fn is_sequentially_convex(config: &PlanarConfig) -> bool {
    let q = config.positions();
    (0..4).all(|i| cross2(q[i], q[(i + 1) % 4], q[(i + 2) % 4]) > 0.0)
}

/// The distance-level convexity chain for a sequentially labeled convex
/// quadrilateral with r12 the longest exterior side:
/// r13, r24 > r12 >= r14, r23 >= r34. Equalities are allowed exactly where
/// the chain is non-strict.
pub fn ordered_convex_distances(d: &DistanceVector) -> bool {
    ordered_convex_distances_slack(d, 0.0)
}

/// [`ordered_convex_distances`] with a relative slack, for distance vectors
/// produced by iterative solvers: kite configurations attain some of the
/// comparisons with equality, and converged iterates sit within roundoff of
/// them on either side.
pub fn ordered_convex_distances_slack(d: &DistanceVector, slack_rel: f64) -> bool {
    let eps = slack_rel * d.max_distance();
    d.r13 > d.r12 - eps
        && d.r24 > d.r12 - eps
        && d.r12 >= d.r14 - eps
        && d.r12 >= d.r23 - eps
        && d.r14 >= d.r34 - eps
        && d.r23 >= d.r34 - eps
}
