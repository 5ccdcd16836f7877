//! Coordinate chart for convex four-body configurations with perpendicular
//! diagonals.
//!
//! Bodies are placed on the coordinate axes: q1 = (1, 0), q2 = (0, a),
//! q3 = (-b, 0), q4 = (0, -c) with a, b, c > 0, so the diagonals r13 and r24
//! are perpendicular by construction and the scale is fixed by q1. In this
//! chart kite configurations occupy two planes: b = 1 (vertical symmetry
//! axis) and a = c (horizontal symmetry axis); their intersection (a, 1, a)
//! is the rhombus family.
//!
//! The consistency relation of the central-configuration equations becomes a
//! function F(a, b, c), and the surface Gamma is its zero set restricted to
//! the convexity inequalities r13, r24 > r12 >= r14, r23 >= r34. The module
//! provides F, both evaluation paths of its b-derivative, the admissible
//! domain bounds, the closed-form kite masses, and the exact factorizations
//! of F for the vortex case (beta = 2) and the even power-law exponents.

use crate::cc::{beta_pow, consistency_f, s_values, Potential};
use crate::error::{Error, Result};
use crate::geometry::{ordered_convex_distances, DistanceVector, PlanarConfig, Point2};

/// A point (a, b, c) of the chart together with the interaction law.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KitePoint {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub potential: Potential,
}

impl KitePoint {
    pub fn new(a: f64, b: f64, c: f64, potential: Potential) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && c > 0.0) || !(a + b + c).is_finite() {
            return Err(Error::NonpositiveChart { a, b, c });
        }
        Ok(Self { a, b, c, potential })
    }

    /// Chart positions: one body per coordinate half-axis.
    pub fn positions(&self) -> [Point2; 4] {
        [
            Point2::new(1.0, 0.0),
            Point2::new(0.0, self.a),
            Point2::new(-self.b, 0.0),
            Point2::new(0.0, -self.c),
        ]
    }

    /// The chart positions bundled with weights.
    pub fn config(&self, weights: [f64; 4]) -> PlanarConfig {
        PlanarConfig::new(self.positions(), weights)
            .expect("chart positions are pairwise distinct for positive a, b, c")
    }

    /// Mutual distances in closed form:
    /// r12 = sqrt(a^2+1), r23 = sqrt(a^2+b^2), r34 = sqrt(b^2+c^2),
    /// r14 = sqrt(1+c^2), and diagonals r13 = 1+b, r24 = a+c.
    ///
    /// Distances that coincide on the kite planes come out bitwise equal,
    /// which keeps the kite-plane zeros of F exact to roundoff.
    pub fn distances(&self) -> DistanceVector {
        let (a, b, c) = (self.a, self.b, self.c);
        DistanceVector {
            r12: (a * a + 1.0).sqrt(),
            r13: 1.0 + b,
            r14: (1.0 + c * c).sqrt(),
            r23: (a * a + b * b).sqrt(),
            r24: a + c,
            r34: (b * b + c * c).sqrt(),
        }
    }

    /// The convexity inequalities r13, r24 > r12 >= r14, r23 >= r34 that cut
    /// Gamma out of the positive octant. Equalities are allowed exactly
    /// where the chain is non-strict (the square attains them all).
    pub fn in_gamma(&self) -> bool {
        ordered_convex_distances(&self.distances())
    }

    /// The consistency relation evaluated at the chart point. Identically
    /// zero on both kite planes b = 1 and a = c.
    pub fn consistency_f(&self) -> f64 {
        consistency_f(&self.distances(), &self.potential)
    }

    /// Scale for tolerances on F at this chart point.
    pub fn consistency_scale(&self) -> f64 {
        crate::cc::consistency_scale(&self.distances(), &self.potential)
    }

    /// dF/db by the chain rule through the six distances. Valid at every
    /// chart point; exactly zero on the plane a = c where F vanishes for
    /// every b.
    pub fn df_db(&self) -> f64 {
        let beta = self.potential.beta();
        let alpha = beta - 2.0;
        let d = self.distances();
        let p12 = beta_pow(d.r12, beta);
        let p13 = beta_pow(d.r13, beta);
        let p14 = beta_pow(d.r14, beta);
        let p23 = beta_pow(d.r23, beta);
        let p24 = beta_pow(d.r24, beta);
        let p34 = beta_pow(d.r34, beta);
        let (d1, d2, d3) = (p24 - p14, p13 - p12, p23 - p34);
        let (e1, e2, e3) = (p12 - p14, p24 - p34, p13 - p23);
        // dr13/db = 1, dr23/db = b/r23, dr34/db = b/r34; the powers then
        // differentiate to beta r13^(beta-1) and beta b r^(beta-2).
        let dp13 = beta * beta_pow(d.r13, beta - 1.0);
        let dp23 = beta * self.b * beta_pow(d.r23, alpha);
        let dp34 = beta * self.b * beta_pow(d.r34, alpha);
        d1 * (dp13 * d3 + d2 * (dp23 - dp34)) - e1 * (-dp34 * e3 + e2 * (dp13 - dp23))
    }

    /// dF/db in the simplified form obtained by substituting F = 0, hence
    /// valid only on Gamma. Divides by r13^beta - r12^beta, which is
    /// strictly positive inside Gamma; errors when that factor is below
    /// tolerance. On Gamma with a > c every term is nonnegative and the sum
    /// strictly positive, which is the heart of the uniqueness proof.
    pub fn df_db_on_gamma(&self) -> Result<f64> {
        let beta = self.potential.beta();
        let alpha = beta - 2.0;
        let d = self.distances();
        let p12 = beta_pow(d.r12, beta);
        let p13 = beta_pow(d.r13, beta);
        let p14 = beta_pow(d.r14, beta);
        let p23 = beta_pow(d.r23, beta);
        let p24 = beta_pow(d.r24, beta);
        let p34 = beta_pow(d.r34, beta);
        let (d1, d2) = (p24 - p14, p13 - p12);
        let (e1, e2, e3) = (p12 - p14, p24 - p34, p13 - p23);
        let pmax = [p12, p13, p14, p23, p24, p34]
            .iter()
            .fold(0.0f64, |m, &x| m.max(x));
        if d2.abs() <= 1e-12 * pmax {
            return Err(Error::OnGammaDenominator);
        }
        let q23 = beta_pow(d.r23, alpha);
        let q34 = beta_pow(d.r34, alpha);
        let term1 = beta * beta_pow(d.r13, beta - 1.0) * e1 * e2 * (p12 - p23) / d2;
        let term2 = self.b * beta * d1 * d2 * (q23 - q34);
        let term3 = self.b * beta * e1 * (q34 * e3 + q23 * e2);
        Ok(term1 + term2 + term3)
    }
}

/// The two kite planes of the chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KitePlane {
    /// b = 1: kites symmetric about the vertical axis (through bodies 2, 4).
    B1,
    /// a = c: kites symmetric about the horizontal axis (through bodies 1, 3).
    Ac,
}

/// Admissible parameter bounds of a kite plane inside Gamma.
#[derive(Clone, Copy, Debug)]
pub struct GammaBounds {
    pub plane: KitePlane,
    /// Open interval for a: (1/sqrt(3), sqrt(3)) on both planes.
    pub a_min: f64,
    pub a_max: f64,
}

impl GammaBounds {
    /// Interval of the dependent coordinate at this a, open below and closed
    /// above: c in (sqrt(a^2+1) - a, a] on the b = 1 plane, b in
    /// (sqrt(a^2+1) - 1, 1] on the a = c plane.
    pub fn dependent_range(&self, a: f64) -> (f64, f64) {
        match self.plane {
            KitePlane::B1 => ((a * a + 1.0).sqrt() - a, a),
            KitePlane::Ac => ((a * a + 1.0).sqrt() - 1.0, 1.0),
        }
    }

    /// True when (a, dep) lies inside the bounds (a strictly interior, the
    /// dependent coordinate in its half-open interval).
    pub fn contains(&self, a: f64, dep: f64) -> bool {
        let (lo, hi) = self.dependent_range(a);
        a > self.a_min && a < self.a_max && dep > lo && dep <= hi
    }

    /// The chart point for plane coordinates (a, dep).
    pub fn chart_point(&self, a: f64, dep: f64, potential: Potential) -> Result<KitePoint> {
        match self.plane {
            KitePlane::B1 => KitePoint::new(a, 1.0, dep, potential),
            KitePlane::Ac => KitePoint::new(a, dep, a, potential),
        }
    }
}

/// Parameter bounds for the requested kite plane: the inequalities of Gamma
/// hold exactly for a in (1/sqrt(3), sqrt(3)) with the dependent coordinate
/// in the interval reported by [`GammaBounds::dependent_range`].
pub fn gamma_domain_bounds(plane: KitePlane) -> GammaBounds {
    let s3 = 3.0f64.sqrt();
    GammaBounds {
        plane,
        a_min: 1.0 / s3,
        a_max: s3,
    }
}

/// Closed-form masses of the kite with vertical symmetry axis (b = 1),
/// normalized so that m1 = m3 = 1:
///
/// ```text
/// m2 = 2c/(a+c) * (s14 - s13)/(s23 - s24),
/// m4 = 2a/(a+c) * (s23 - s13)/(s14 - s24).
/// ```
///
/// All four are strictly positive in the interior of the b = 1 domain.
pub fn masses_kite_b1(a: f64, c: f64, p: &Potential) -> Result<[f64; 4]> {
    let k = KitePoint::new(a, 1.0, c, *p)?;
    let s = s_values(&k.distances(), p);
    let (s13, s14, s23, s24) = (s[1], s[2], s[3], s[4]);
    let smax = s.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    if (s23 - s24).abs() <= 1e-13 * smax {
        return Err(Error::DegenerateKite { which: "s23 - s24" });
    }
    if (s14 - s24).abs() <= 1e-13 * smax {
        return Err(Error::DegenerateKite { which: "s14 - s24" });
    }
    let m2 = 2.0 * c / (a + c) * (s14 - s13) / (s23 - s24);
    let m4 = 2.0 * a / (a + c) * (s23 - s13) / (s14 - s24);
    Ok([1.0, m2, 1.0, m4])
}

/// Closed-form masses of the kite with horizontal symmetry axis (a = c),
/// normalized so that m1 = 1:
///
/// ```text
/// m2 = m4 = (b+1)/(2b) * (s14 - s13)/(s23 - s24),
/// m3 = 1/b * (s14 - s13)(s14 - s24) / ((s23 - s13)(s23 - s24)).
/// ```
pub fn masses_kite_ac(a: f64, b: f64, p: &Potential) -> Result<[f64; 4]> {
    let k = KitePoint::new(a, b, a, *p)?;
    let s = s_values(&k.distances(), p);
    let (s13, s14, s23, s24) = (s[1], s[2], s[3], s[4]);
    let smax = s.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    if (s23 - s24).abs() <= 1e-13 * smax {
        return Err(Error::DegenerateKite { which: "s23 - s24" });
    }
    if (s23 - s13).abs() <= 1e-13 * smax {
        return Err(Error::DegenerateKite { which: "s23 - s13" });
    }
    let m2 = (b + 1.0) / (2.0 * b) * (s14 - s13) / (s23 - s24);
    let m3 = (s14 - s13) * (s14 - s24) / (b * (s23 - s13) * (s23 - s24));
    Ok([1.0, m2, m3, m2])
}

/// The exact factorization of F at beta = 2 (the vortex case):
/// 2 (a^2 - c^2)(b^2 - 1)(ac + b). Agrees with `consistency_f` at
/// `Potential::Vortex` to roundoff and makes the kite-plane zeros manifest.
pub fn vortex_f_factored(a: f64, b: f64, c: f64) -> f64 {
    2.0 * (a * a - c * c) * (b * b - 1.0) * (a * c + b)
}

/// Guard-band width for [`residual_factor`]: both kite-plane factors must
/// exceed `RESIDUAL_GUARD_REL * max(1, a, b, c)^2` in magnitude.
pub const RESIDUAL_GUARD_REL: f64 = 1e-4;

/// F divided by the kite-plane factors (a^2 - c^2)(b^2 - 1), defined for the
/// even exponents alpha = 2 and alpha = 4 where F factors exactly. The
/// quotient equals a polynomial with all-positive coefficients (degree 8
/// with 47 terms for alpha = 2, degree 14 with 210 terms for alpha = 4), so
/// it must be strictly positive on the open octant; the quotient is 0/0 on
/// the kite planes themselves, hence the guard band.
pub fn residual_factor(k: &KitePoint) -> Result<f64> {
    let alpha = k.potential.alpha();
    if !matches!(k.potential, Potential::PowerLaw { .. }) || !(alpha == 2.0 || alpha == 4.0) {
        return Err(Error::UnsupportedExponent { alpha });
    }
    let (a, b, c) = (k.a, k.b, k.c);
    let m = 1.0f64.max(a).max(b).max(c);
    let guard = RESIDUAL_GUARD_REL * m * m;
    let f1 = a * a - c * c;
    let f2 = b * b - 1.0;
    if f1.abs() <= guard {
        return Err(Error::GuardBand {
            factor: "a^2 - c^2",
        });
    }
    if f2.abs() <= guard {
        return Err(Error::GuardBand { factor: "b^2 - 1" });
    }
    Ok(k.consistency_f() / (f1 * f2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cc::fit_multipliers;
    use crate::geometry::mutual_distances;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    const BETA3: Potential = Potential::NEWTONIAN;

    fn kp(a: f64, b: f64, c: f64) -> KitePoint {
        KitePoint::new(a, b, c, BETA3).unwrap()
    }

    #[test]
    fn rejects_nonpositive_coordinates() {
        assert!(matches!(
            KitePoint::new(1.0, 0.0, 1.0, BETA3).unwrap_err(),
            Error::NonpositiveChart { .. }
        ));
        assert!(KitePoint::new(1.0, -2.0, 1.0, BETA3).is_err());
    }

    #[test]
    fn unit_chart_point_is_the_rotated_square() {
        let q = kp(1.0, 1.0, 1.0).positions();
        assert_eq!(q[0], Point2::new(1.0, 0.0));
        assert_eq!(q[1], Point2::new(0.0, 1.0));
        assert_eq!(q[2], Point2::new(-1.0, 0.0));
        assert_eq!(q[3], Point2::new(0.0, -1.0));
        let d = kp(1.0, 1.0, 1.0).distances();
        let s2 = 2.0f64.sqrt();
        assert_eq!([d.r12, d.r23, d.r34, d.r14], [s2; 4]);
        assert_eq!([d.r13, d.r24], [2.0; 2]);
    }

    #[test]
    fn distance_formulas() {
        let d = kp(1.2, 1.0, 0.9).distances();
        assert!((d.r13 - 2.0).abs() < 1e-15);
        assert!((d.r24 - 2.1).abs() < 1e-15);
        assert!((d.r12 - 2.44f64.sqrt()).abs() < 1e-15);
        let d = kp(2.0, 0.5, 1.0).distances();
        assert!((d.r34 - 1.25f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn chart_and_coordinate_distances_agree() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..10_000 {
            let k = kp(
                rng.gen_range(0.1..3.0),
                rng.gen_range(0.1..3.0),
                rng.gen_range(0.1..3.0),
            );
            let closed = k.distances().as_array();
            let coords = mutual_distances(&k.config([1.0; 4])).as_array();
            for i in 0..6 {
                assert!(
                    (closed[i] - coords[i]).abs() <= 1e-14 * closed[i],
                    "pair {i} at {:?}: {} vs {}",
                    (k.a, k.b, k.c),
                    closed[i],
                    coords[i]
                );
            }
        }
    }

    #[test]
    fn gamma_membership() {
        assert!(kp(1.0, 1.0, 1.0).in_gamma());
        assert!(kp(1.2, 1.0, 0.9).in_gamma());
        assert!(!kp(3.0, 1.0, 0.1).in_gamma());
    }

    #[test]
    fn domain_bounds_examples() {
        let b1 = gamma_domain_bounds(KitePlane::B1);
        let (lo, hi) = b1.dependent_range(1.0);
        assert!((lo - (2.0f64.sqrt() - 1.0)).abs() < 1e-15);
        assert_eq!(hi, 1.0);
        let ac = gamma_domain_bounds(KitePlane::Ac);
        let (lo, hi) = ac.dependent_range(1.0);
        assert!((lo - (2.0f64.sqrt() - 1.0)).abs() < 1e-15);
        assert_eq!(hi, 1.0);
        assert!((b1.a_min - 1.0 / 3.0f64.sqrt()).abs() < 1e-15);
        assert!((b1.a_max - 3.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn domain_bounds_match_gamma_membership() {
        // Just inside the reported bounds passes in_gamma, just outside
        // fails, sampled densely along the boundary at offset 1e-4.
        for plane in [KitePlane::B1, KitePlane::Ac] {
            let bounds = gamma_domain_bounds(plane);
            let n = 60;
            for i in 0..n {
                let a = bounds.a_min
                    + 0.05
                    + (bounds.a_max - bounds.a_min - 0.1) * (i as f64) / (n as f64);
                let (lo, hi) = bounds.dependent_range(a);
                if hi - lo <= 3e-4 {
                    continue;
                }
                for dep in [lo + 1e-4, (lo + hi) / 2.0, hi] {
                    let k = bounds.chart_point(a, dep, BETA3).unwrap();
                    assert!(
                        k.in_gamma(),
                        "inside point failed: {plane:?} a={a} dep={dep}"
                    );
                }
                for dep in [lo - 1e-4, hi + 1e-4] {
                    if dep <= 0.0 {
                        continue;
                    }
                    let k = bounds.chart_point(a, dep, BETA3).unwrap();
                    assert!(
                        !k.in_gamma(),
                        "outside point passed: {plane:?} a={a} dep={dep}"
                    );
                }
            }
            // a beyond its own interval fails for any dependent value.
            let a_hi = bounds.a_max + 1e-4;
            let (lo, hi) = bounds.dependent_range(a_hi);
            let k = bounds
                .chart_point(a_hi, (0.5 * (lo + hi)).max(1e-3), BETA3)
                .unwrap();
            assert!(!k.in_gamma());
            let a_lo = bounds.a_min - 1e-4;
            let (lo, hi) = bounds.dependent_range(a_lo);
            let k = bounds
                .chart_point(a_lo, (0.5 * (lo + hi)).max(1e-3), BETA3)
                .unwrap();
            assert!(!k.in_gamma());
        }
    }

    #[test]
    fn kite_planes_are_roots_of_f() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let a = rng.gen_range(0.1..3.0);
            let x = rng.gen_range(0.1..3.0);
            for beta in [2.0, 2.5, 3.0, 4.0, 6.0] {
                let p = if beta == 2.0 {
                    Potential::Vortex
                } else {
                    Potential::PowerLaw { alpha: beta - 2.0 }
                };
                let on_b1 = KitePoint::new(a, 1.0, x, p).unwrap();
                let tol = 1e-12 * on_b1.consistency_scale();
                assert!(
                    on_b1.consistency_f().abs() <= tol,
                    "F(a,1,c) = {} at a={a}, c={x}, beta={beta}",
                    on_b1.consistency_f()
                );
                let on_ac = KitePoint::new(a, x, a, p).unwrap();
                let tol = 1e-12 * on_ac.consistency_scale();
                assert!(
                    on_ac.consistency_f().abs() <= tol,
                    "F(a,b,a) = {} at a={a}, b={x}, beta={beta}",
                    on_ac.consistency_f()
                );
            }
        }
    }

    #[test]
    fn f_sign_off_the_kite_planes() {
        // b < 1 with a > c: F approaches its root at b = 1 from below, since
        // dF/db > 0 there; so the value is strictly negative. Magnitude
        // frozen as a regression fixture.
        let k = kp(1.2, 0.9, 0.9);
        let f = k.consistency_f();
        assert!(f < 0.0, "F = {f}");
        assert!((f - (-7.204_295_180_189_568)).abs() < 1e-12, "F = {f:.17}");
        // Cross-checks on the sign: F vanishes at b = 1 and increases in b.
        assert_eq!(kp(1.2, 1.0, 0.9).consistency_f(), 0.0);
        assert!(k.df_db() > 0.0);
    }

    #[test]
    fn df_db_matches_finite_differences() {
        for (a, b, c) in [(1.2, 1.0, 0.9), (1.05, 1.0, 1.0), (0.9, 0.8, 0.7)] {
            let k = kp(a, b, c);
            let h = 1e-6;
            let fp = kp(a, b + h, c).consistency_f();
            let fm = kp(a, b - h, c).consistency_f();
            let fd = (fp - fm) / (2.0 * h);
            let an = k.df_db();
            assert!(
                (an - fd).abs() <= 1e-6 * an.abs().max(1.0),
                "({a},{b},{c}): analytic {an} vs fd {fd}"
            );
        }
    }

    #[test]
    fn df_db_positive_on_gamma_with_a_greater_than_c() {
        for (a, c) in [(1.2, 0.9), (1.05, 1.0), (1.5, 0.8), (0.8, 0.75)] {
            let k = kp(a, 1.0, c);
            assert!(k.in_gamma(), "({a}, 1, {c}) not in Gamma");
            let general = k.df_db();
            let simplified = k.df_db_on_gamma().unwrap();
            assert!(general > 0.0 && simplified > 0.0);
            assert!(
                (general - simplified).abs() <= 1e-8 * general.abs(),
                "paths disagree at ({a}, 1, {c}): {general} vs {simplified}"
            );
        }
    }

    #[test]
    fn df_db_vanishes_identically_on_the_ac_plane() {
        for (a, b) in [(0.9, 0.5), (1.3, 1.7), (2.0, 0.3)] {
            let k = kp(a, b, a);
            assert_eq!(k.df_db(), 0.0);
            assert_eq!(k.df_db_on_gamma().unwrap(), 0.0);
        }
    }

    #[test]
    fn vortex_case_df_db_still_positive_on_gamma() {
        let k = KitePoint::new(1.2, 1.0, 0.9, Potential::Vortex).unwrap();
        assert!(k.df_db() > 0.0);
        assert!(k.df_db_on_gamma().unwrap() > 0.0);
    }

    #[test]
    fn square_masses_are_unit() {
        let m = masses_kite_b1(1.0, 1.0, &BETA3).unwrap();
        for &mi in &m {
            assert!((mi - 1.0).abs() < 1e-14, "{m:?}");
        }
        let m = masses_kite_ac(1.0, 1.0, &BETA3).unwrap();
        for &mi in &m {
            assert!((mi - 1.0).abs() < 1e-14, "{m:?}");
        }
    }

    #[test]
    fn b1_masses_cross_checked_against_the_equations() {
        let (a, c) = (1.0, 0.8);
        let m = masses_kite_b1(a, c, &BETA3).unwrap();
        assert!(m.iter().all(|&x| x > 0.0), "{m:?}");
        let cfg = kp(a, 1.0, c).config(m);
        let (_, _, norm) = fit_multipliers(&cfg, &BETA3).unwrap();
        assert!(norm < 1e-10, "residual norm {norm}");
        // Golden values, frozen after the residual cross-check above.
        assert!(
            (m[1] - 1.714_160_650_137_076_5).abs() < 1e-13,
            "m2 = {:.17}",
            m[1]
        );
        assert!(
            (m[3] - 0.833_514_129_635_172_4).abs() < 1e-13,
            "m4 = {:.17}",
            m[3]
        );
    }

    #[test]
    fn b1_masses_symmetric_at_a_equals_c() {
        let m = masses_kite_b1(0.9, 0.9, &BETA3).unwrap();
        assert!(
            (m[1] - m[3]).abs() <= 1e-13 * m[1].abs(),
            "m2 = {}, m4 = {}",
            m[1],
            m[3]
        );
    }

    #[test]
    fn ac_masses_cross_checked_against_the_equations() {
        let (a, b) = (1.0, 0.8);
        let m = masses_kite_ac(a, b, &BETA3).unwrap();
        assert!(m.iter().all(|&x| x > 0.0), "{m:?}");
        assert_eq!(m[1], m[3]);
        let cfg = kp(a, b, a).config(m);
        let (_, _, norm) = fit_multipliers(&cfg, &BETA3).unwrap();
        assert!(norm < 1e-10, "residual norm {norm}");
        // Golden values, frozen after the residual cross-check above.
        assert!(
            (m[1] - 0.583_375_892_988_812_3).abs() < 1e-13,
            "m2 = {:.17}",
            m[1]
        );
        assert!(
            (m[2] - 0.486_252_049_694_711_3).abs() < 1e-13,
            "m3 = {:.17}",
            m[2]
        );
    }

    #[test]
    fn rhombus_reduces_both_mass_formulas_to_the_same_values() {
        for a in [0.8, 1.0, 1.2] {
            let from_ac = masses_kite_ac(a, 1.0, &BETA3).unwrap();
            let from_b1 = masses_kite_b1(a, a, &BETA3).unwrap();
            assert_eq!(from_ac[2], 1.0, "m3 on the rhombus line");
            for i in 0..4 {
                assert!(
                    (from_ac[i] - from_b1[i]).abs() <= 1e-13,
                    "a = {a}: {from_ac:?} vs {from_b1:?}"
                );
            }
        }
    }

    #[test]
    fn degenerate_kite_denominators_are_reported() {
        // On the b = 1 plane the boundary c = sqrt(a^2+1) - a makes
        // r24 = r23, collapsing s23 - s24.
        let a = 1.0;
        let c = (a * a + 1.0f64).sqrt() - a;
        assert!(matches!(
            masses_kite_b1(a, c, &BETA3).unwrap_err(),
            Error::DegenerateKite { .. }
        ));
    }

    #[test]
    fn vortex_factorization_identity() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..1000 {
            let (a, b, c) = (
                rng.gen_range(0.1..3.0),
                rng.gen_range(0.1..3.0),
                rng.gen_range(0.1..3.0),
            );
            let k = KitePoint::new(a, b, c, Potential::Vortex).unwrap();
            let f = k.consistency_f();
            let fac = vortex_f_factored(a, b, c);
            let tol = 1e-12 * k.consistency_scale();
            assert!(
                (f - fac).abs() <= tol,
                "mismatch at ({a}, {b}, {c}): {f} vs {fac}"
            );
        }
    }

    #[test]
    fn vortex_factored_fixture() {
        // 2 (a^2-c^2)(b^2-1)(ac+b) at (1.2, 0.9, 0.7) with explicit factors.
        let v = vortex_f_factored(1.2, 0.9, 0.7);
        let expected = 2.0 * 0.95 * (-0.19) * 1.74;
        assert!((v - expected).abs() < 1e-14, "{v} vs {expected}");
        let k = KitePoint::new(1.2, 0.9, 0.7, Potential::Vortex).unwrap();
        assert!((k.consistency_f() - v).abs() < 1e-12);
    }

    #[test]
    fn vortex_factored_vanishes_on_kite_planes() {
        assert_eq!(vortex_f_factored(1.7, 1.0, 0.4), 0.0);
        assert_eq!(vortex_f_factored(0.9, 2.2, 0.9), 0.0);
    }

    #[test]
    fn residual_factor_positive_at_spec_points() {
        let strong = Potential::PowerLaw { alpha: 2.0 };
        let quartic = Potential::PowerLaw { alpha: 4.0 };
        for (a, b, c, p) in [
            (1.2, 0.9, 0.7, strong),
            (0.5, 1.5, 2.0, strong),
            (1.3, 0.8, 0.6, quartic),
        ] {
            let k = KitePoint::new(a, b, c, p).unwrap();
            let q = residual_factor(&k).unwrap();
            assert!(q > 0.0, "quotient {q} at ({a}, {b}, {c})");
        }
    }

    #[test]
    fn residual_factor_guard_band_and_exponent_checks() {
        let strong = Potential::PowerLaw { alpha: 2.0 };
        let near_plane = KitePoint::new(1.0, 1.0 + 1e-6, 0.5, strong).unwrap();
        assert!(matches!(
            residual_factor(&near_plane).unwrap_err(),
            Error::GuardBand { .. }
        ));
        let odd = kp(1.2, 0.8, 0.5);
        assert!(matches!(
            residual_factor(&odd).unwrap_err(),
            Error::UnsupportedExponent { .. }
        ));
    }

    #[test]
    fn rhombus_line_is_critical() {
        // All three partials of F vanish at (a, 1, a); checked by central
        // finite differences.
        let h = 1e-5;
        for a in [0.8, 1.0, 1.3] {
            let k = kp(a, 1.0, a);
            let scale = k.consistency_scale();
            let fda =
                (kp(a + h, 1.0, a).consistency_f() - kp(a - h, 1.0, a).consistency_f()) / (2.0 * h);
            let fdb =
                (kp(a, 1.0 + h, a).consistency_f() - kp(a, 1.0 - h, a).consistency_f()) / (2.0 * h);
            let fdc =
                (kp(a, 1.0, a + h).consistency_f() - kp(a, 1.0, a - h).consistency_f()) / (2.0 * h);
            for (name, v) in [("a", fda), ("b", fdb), ("c", fdc)] {
                assert!(
                    v.abs() <= 1e-6 * scale,
                    "dF/d{name} = {v} at rhombus a = {a}"
                );
            }
        }
    }
}
