//! Central-configuration equations in mutual-distance coordinates.
//!
//! A planar central configuration is a critical point of the interaction
//! potential restricted to a level set of the moment of inertia, with the
//! Cayley-Menger constraint V = 0 enforcing planarity. Differentiating the
//! constrained function with respect to the distances and substituting the
//! area formula for the Cayley-Menger gradient turns the critical-point
//! condition into six scalar equations
//!
//! ```text
//! w_i w_j (s_ij - lambda') = sigma A_i A_j,      s_ij = r_ij^(-beta),
//! ```
//!
//! with beta = alpha + 2 for the power-law potential and beta = 2 for point
//! vortices. Multiplying those equations together pairwise gives the Dziobek
//! relation among the s_ij, and eliminating lambda' from it leaves a single
//! multiplier-free consistency relation on the distances. This module
//! implements all of those layers plus the inverse direction: fitting the
//! multipliers to a given configuration and recovering the masses from a
//! consistent distance vector.

use crate::error::{Error, Result};
use crate::geometry::{
    cayley_menger, mutual_distances, oriented_areas, planarity_scale, DistanceVector,
    OrientedAreas, PlanarConfig, PAIRS, PLANARITY_TOL_REL,
};

/// Interaction law. Both cases enter the central-configuration equations
/// only through the exponent beta of s_ij = r_ij^(-beta).
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Potential {
    /// U_alpha = sum w_i w_j / r_ij^alpha with alpha > 0; the classical
    /// n-body problem is alpha = 1.
    PowerLaw { alpha: f64 },
    /// Point vortices: H = -sum w_i w_j ln(r_ij), weights are circulations
    /// and may be negative. Behaves as beta = 2 exactly.
    Vortex,
}

impl Potential {
    /// The classical gravitational case, alpha = 1.
    pub const NEWTONIAN: Potential = Potential::PowerLaw { alpha: 1.0 };

    pub fn power_law(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha.is_finite() {
            Ok(Self::PowerLaw { alpha })
        } else {
            Err(Error::NonpositiveAlpha { alpha })
        }
    }

    /// Exponent in s_ij = r_ij^(-beta).
    pub fn beta(&self) -> f64 {
        match self {
            Self::PowerLaw { alpha } => alpha + 2.0,
            Self::Vortex => 2.0,
        }
    }

    /// beta - 2: the power-law exponent, or 0 in the vortex case.
    pub fn alpha(&self) -> f64 {
        self.beta() - 2.0
    }

    pub fn is_vortex(&self) -> bool {
        matches!(self, Self::Vortex)
    }
}

/// r^e with an exact product path for integer exponents and a compensated
/// exp(e ln r) evaluation otherwise. The consistency function is a
/// difference of near-equal products close to its zero set, so the power
/// error is kept below one ulp where it is cheap to do so.
pub fn beta_pow(r: f64, e: f64) -> f64 {
    let n = e.round();
    if e == n && n.abs() <= 64.0 {
        return r.powi(n as i32);
    }
    let t = e * r.ln();
    let y = t.exp();
    if y.is_finite() && y > 0.0 {
        // First-order correction; t - ln(y) is tiny and computed without
        // cancellation error, so it captures the rounding of exp itself.
        y * (1.0 + (t - y.ln()))
    } else {
        y
    }
}

/// The six values s_ij = r_ij^(-beta) in pair order.
pub fn s_values(d: &DistanceVector, p: &Potential) -> [f64; 6] {
    let beta = p.beta();
    d.as_array().map(|r| beta_pow(r, -beta))
}

/// Interaction potential of the configuration: U_alpha for the power law,
/// the vortex Hamiltonian H otherwise. Coincident bodies are ruled out by
/// the `PlanarConfig` constructor, so no singularity can occur here.
pub fn potential(config: &PlanarConfig, p: &Potential) -> f64 {
    let r = mutual_distances(config).as_array();
    let ww = config.weight_products();
    match p {
        Potential::PowerLaw { alpha } => (0..6).map(|k| ww[k] / beta_pow(r[k], *alpha)).sum(),
        Potential::Vortex => -(0..6).map(|k| ww[k] * r[k].ln()).sum::<f64>(),
    }
}

/// Moment of inertia about the center of mass (angular impulse in the
/// vortex case), computed in position form. Errors when the total weight
/// vanishes, since the center of mass is then undefined.
pub fn moment_of_inertia(config: &PlanarConfig) -> Result<f64> {
    let w = config.weights();
    let total = config.total_weight();
    let wabs: f64 = w.iter().map(|x| x.abs()).sum();
    if total.abs() <= 1e-14 * wabs.max(1.0) {
        return Err(Error::ZeroTotalWeight);
    }
    let q = config.positions();
    let cx = q.iter().zip(w).map(|(p, wi)| wi * p.x).sum::<f64>() / total;
    let cy = q.iter().zip(w).map(|(p, wi)| wi * p.y).sum::<f64>() / total;
    Ok(q.iter()
        .zip(w)
        .map(|(p, wi)| {
            let (dx, dy) = (p.x - cx, p.y - cy);
            wi * (dx * dx + dy * dy)
        })
        .sum())
}

/// The equivalent distance form of the moment of inertia,
/// (1/M) sum w_i w_j r_ij^2. This is what the Newton solver uses, since it
/// needs no positions.
pub fn moment_of_inertia_from_distances(weights: &[f64; 4], d: &DistanceVector) -> Result<f64> {
    let total: f64 = weights.iter().sum();
    let wabs: f64 = weights.iter().map(|x| x.abs()).sum();
    if total.abs() <= 1e-14 * wabs.max(1.0) {
        return Err(Error::ZeroTotalWeight);
    }
    let r = d.as_array();
    let mut sum = 0.0;
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        sum += weights[i] * weights[j] * r[k] * r[k];
    }
    Ok(sum / total)
}

/// Residuals of the six grouped equations and the multipliers they were
/// evaluated at.
#[derive(Clone, Copy, Debug)]
pub struct CcResidual {
    /// w_i w_j (s_ij - lambda') - sigma A_i A_j per pair.
    pub per_pair: [f64; 6],
    pub lambda_prime: f64,
    pub sigma: f64,
    /// Euclidean norm of `per_pair`.
    pub norm: f64,
}

fn norm6(v: &[f64; 6]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// The six residuals w_i w_j (s_ij - lambda') - sigma * ap_ij given the
/// ingredients directly. `area_products` are A_i A_j on realized
/// configurations; the Newton solver substitutes -grad(V)/32 instead, which
/// agrees on planar inputs and extends smoothly off them.
pub fn per_pair_residuals(
    weight_products: &[f64; 6],
    s: &[f64; 6],
    area_products: &[f64; 6],
    lambda_prime: f64,
    sigma: f64,
) -> [f64; 6] {
    let mut out = [0.0; 6];
    for k in 0..6 {
        out[k] = weight_products[k] * (s[k] - lambda_prime) - sigma * area_products[k];
    }
    out
}

/// Residuals of the central-configuration equations for the given
/// configuration and multipliers. Norm zero (to tolerance) exactly when the
/// configuration is a central configuration with those multipliers.
pub fn cc_residuals(
    config: &PlanarConfig,
    lambda_prime: f64,
    sigma: f64,
    p: &Potential,
) -> CcResidual {
    let d = mutual_distances(config);
    let s = s_values(&d, p);
    let ap = oriented_areas(config).pair_products();
    let per_pair = per_pair_residuals(&config.weight_products(), &s, &ap, lambda_prime, sigma);
    CcResidual {
        per_pair,
        lambda_prime,
        sigma,
        norm: norm6(&per_pair),
    }
}

/// Least-squares solution of the six equations in the two multipliers.
/// Returns (lambda', sigma, residual norm at the minimum); the norm is the
/// natural "how far from a central configuration" metric.
pub fn fit_multipliers(config: &PlanarConfig, p: &Potential) -> Result<(f64, f64, f64)> {
    let d = mutual_distances(config);
    let s = s_values(&d, p);
    let ap = oriented_areas(config).pair_products();
    fit_multipliers_parts(&config.weight_products(), &s, &ap)
}

/// Shared implementation of the 6x2 least squares via normal equations.
pub(crate) fn fit_multipliers_parts(
    ww: &[f64; 6],
    s: &[f64; 6],
    ap: &[f64; 6],
) -> Result<(f64, f64, f64)> {
    // Row k: ww_k s_k = lambda' * ww_k + sigma * ap_k.
    let (mut a11, mut a12, mut a22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for k in 0..6 {
        let y = ww[k] * s[k];
        a11 += ww[k] * ww[k];
        a12 += ww[k] * ap[k];
        a22 += ap[k] * ap[k];
        b1 += ww[k] * y;
        b2 += ap[k] * y;
    }
    let det = a11 * a22 - a12 * a12;
    // det/(a11 a22) is sin^2 of the angle between the columns;
    // rank-deficient means weight products and area products proportional.
    if a11 == 0.0 || a22 == 0.0 || det <= 1e-24 * a11 * a22 {
        return Err(Error::AmbiguousFit);
    }
    let lambda = (b1 * a22 - b2 * a12) / det;
    let sigma = (a11 * b2 - a12 * b1) / det;
    let res = per_pair_residuals(ww, s, ap, lambda, sigma);
    Ok((lambda, sigma, norm6(&res)))
}

/// The two independent differences of the Dziobek relation:
/// (s12-l)(s34-l) - (s13-l)(s24-l) and (s13-l)(s24-l) - (s14-l)(s23-l).
/// Both vanish for any planar central configuration.
pub fn dziobek_residuals(d: &DistanceVector, lambda_prime: f64, p: &Potential) -> (f64, f64) {
    let s = s_values(d, p);
    let l = lambda_prime;
    let p1 = (s[0] - l) * (s[5] - l);
    let p2 = (s[1] - l) * (s[4] - l);
    let p3 = (s[2] - l) * (s[3] - l);
    (p1 - p2, p2 - p3)
}

/// The multiplier-free consistency relation. With p_ij = r_ij^beta this is
///
/// ```text
/// (p24 - p14)(p13 - p12)(p23 - p34) - (p12 - p14)(p24 - p34)(p13 - p23),
/// ```
///
/// zero (to scaled tolerance) being necessary for a planar four-body central
/// configuration, and together with V = 0 also sufficient up to mass
/// positivity. Kept in factored product form so that the kite-plane zeros
/// are exact to roundoff.
pub fn consistency_f(d: &DistanceVector, p: &Potential) -> f64 {
    let beta = p.beta();
    let p12 = beta_pow(d.r12, beta);
    let p13 = beta_pow(d.r13, beta);
    let p14 = beta_pow(d.r14, beta);
    let p23 = beta_pow(d.r23, beta);
    let p24 = beta_pow(d.r24, beta);
    let p34 = beta_pow(d.r34, beta);
    (p24 - p14) * (p13 - p12) * (p23 - p34) - (p12 - p14) * (p24 - p34) * (p13 - p23)
}

/// Homogeneity scale of the consistency relation: F(t d) = t^(3 beta) F(d),
/// so tolerances are taken relative to max(1, r_max^(3 beta)).
pub fn consistency_scale(d: &DistanceVector, p: &Potential) -> f64 {
    1.0f64.max(beta_pow(d.max_distance(), 3.0 * p.beta()))
}

/// The multiplier lambda' implied by the Dziobek relation, extracted from
/// the pairing with the best-conditioned denominator. All pairings agree
/// whenever the consistency relation holds.
pub fn lambda_from_dziobek(d: &DistanceVector, p: &Potential) -> Result<f64> {
    let s = s_values(d, p);
    let prods = [s[0] * s[5], s[1] * s[4], s[2] * s[3]];
    let sums = [s[0] + s[5], s[1] + s[4], s[2] + s[3]];
    let mut best_den = 0.0f64;
    let mut best_lambda = f64::NAN;
    for &(i, j) in &[(0usize, 1usize), (1, 2), (0, 2)] {
        let den = sums[i] - sums[j];
        if den.abs() > best_den {
            best_den = den.abs();
            best_lambda = (prods[i] - prods[j]) / den;
        }
    }
    let smax = s.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    if best_den <= 1e-13 * smax {
        return Err(Error::AmbiguousFit);
    }
    Ok(best_lambda)
}

/// Tolerance used by [`recover_masses`] for its consistency precondition.
pub const CONSISTENCY_TOL_REL: f64 = 1e-9;

/// Mass ratios of the central configuration carried by a consistent,
/// planar-realizable distance vector, normalized to m1 = 1.
///
/// lambda' comes from the Dziobek relation; each remaining mass is the ratio
/// of two of the six grouped equations, the pairing fixed as
///
/// - m2 from equations (14)/(24),
/// - m3 from equations (12)/(23),
/// - m4 from equations (13)/(34),
///
/// so each equation is consumed exactly once. Any valid pairing agrees when
/// the consistency relation holds (checked in tests by cross-pairing).
pub fn recover_masses(
    d: &DistanceVector,
    areas: &OrientedAreas,
    p: &Potential,
) -> Result<[f64; 4]> {
    let v = cayley_menger(d);
    let vtol = PLANARITY_TOL_REL * planarity_scale(d);
    if !(d.triangle_inequalities_hold() && v.abs() <= vtol) {
        return Err(Error::NotPlanar { v, tol: vtol });
    }
    let f = consistency_f(d, p);
    let ftol = CONSISTENCY_TOL_REL * consistency_scale(d, p);
    if f.abs() > ftol {
        return Err(Error::InconsistentDistances {
            f: f.abs(),
            tol: ftol,
        });
    }

    let lambda = lambda_from_dziobek(d, p)?;
    let s = s_values(d, p);
    let a = areas.as_array();
    let amax = a.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    if a[0].abs() <= 1e-13 * amax.max(1.0) {
        return Err(Error::DegenerateArea { index: 1 });
    }
    let smax = s.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let ratio = |num_s: f64, num_a: f64, den_s: f64, pair: &'static str| -> Result<f64> {
        if den_s.abs() <= 1e-13 * smax {
            return Err(Error::MultiplierCollision { pair });
        }
        Ok((num_s * num_a) / (den_s * a[0]))
    };
    let m2 = ratio(s[2] - lambda, a[1], s[4] - lambda, "24")?;
    let m3 = ratio(s[0] - lambda, a[2], s[3] - lambda, "23")?;
    let m4 = ratio(s[1] - lambda, a[3], s[5] - lambda, "34")?;
    Ok([1.0, m2, m3, m4])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point2;

    fn square_config(weights: [f64; 4]) -> PlanarConfig {
        PlanarConfig::new(
            [
                Point2::new(1.0, 0.0),
                Point2::new(0.0, 1.0),
                Point2::new(-1.0, 0.0),
                Point2::new(0.0, -1.0),
            ],
            weights,
        )
        .unwrap()
    }

    #[test]
    fn potential_on_unit_square() {
        let u = potential(&square_config([1.0; 4]), &Potential::NEWTONIAN);
        let expected = 4.0 / 2.0f64.sqrt() + 2.0 / 2.0;
        assert!((u - expected).abs() < 1e-14);
        assert!((expected - (2.0 * 2.0f64.sqrt() + 1.0)).abs() < 1e-14);
    }

    #[test]
    fn potential_of_a_single_pair() {
        // Zero out two weights: only the (1,2) interaction remains.
        let cfg = PlanarConfig::new(
            [
                Point2::new(0.0, 0.0),
                Point2::new(2.0, 0.0),
                Point2::new(0.0, 5.0),
                Point2::new(5.0, 5.0),
            ],
            [1.0, 1.0, 0.0, 0.0],
        )
        .unwrap();
        assert!((potential(&cfg, &Potential::NEWTONIAN) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn vortex_hamiltonian_on_unit_square() {
        let h = potential(&square_config([1.0; 4]), &Potential::Vortex);
        let expected = -4.0 * 2.0f64.ln();
        assert!((h - expected).abs() < 1e-13, "H = {h}, expected {expected}");
    }

    #[test]
    fn inertia_on_unit_square() {
        assert!((moment_of_inertia(&square_config([1.0; 4])).unwrap() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn inertia_of_a_single_pair() {
        let d = 3.0;
        let cfg = PlanarConfig::new(
            [
                Point2::new(0.0, 0.0),
                Point2::new(d, 0.0),
                Point2::new(0.0, 7.0),
                Point2::new(7.0, 7.0),
            ],
            [1.0, 1.0, 0.0, 0.0],
        )
        .unwrap();
        assert!((moment_of_inertia(&cfg).unwrap() - d * d / 2.0).abs() < 1e-13);
    }

    #[test]
    fn inertia_forms_agree() {
        let cfg = PlanarConfig::new(
            [
                Point2::new(0.3, -0.2),
                Point2::new(1.1, 0.9),
                Point2::new(-0.7, 0.4),
                Point2::new(0.2, -1.3),
            ],
            [1.0, 2.5, 0.7, 1.9],
        )
        .unwrap();
        let pos = moment_of_inertia(&cfg).unwrap();
        let dist =
            moment_of_inertia_from_distances(cfg.weights(), &mutual_distances(&cfg)).unwrap();
        assert!((pos - dist).abs() <= 1e-12 * pos.abs());
    }

    #[test]
    fn inertia_rejects_zero_total_weight() {
        let cfg = PlanarConfig::new(
            [
                Point2::new(1.0, 0.0),
                Point2::new(0.0, 1.0),
                Point2::new(-1.0, 0.0),
                Point2::new(0.0, -1.0),
            ],
            [1.0, -1.0, 1.0, -1.0],
        )
        .unwrap();
        assert_eq!(moment_of_inertia(&cfg).unwrap_err(), Error::ZeroTotalWeight);
    }

    #[test]
    fn s_value_examples() {
        let d = DistanceVector::from_array([2.0, 1.0, 2.0f64.sqrt(), 1.0, 1.0, 1.0]).unwrap();
        let grav = s_values(&d, &Potential::NEWTONIAN);
        assert!((grav[0] - 0.125).abs() < 1e-16);
        assert!((grav[1] - 1.0).abs() < 1e-16);
        let vortex = s_values(&d, &Potential::Vortex);
        assert!((vortex[2] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn square_is_a_central_configuration_of_equal_masses() {
        let cfg = square_config([1.0; 4]);
        let (lambda, sigma, norm) = fit_multipliers(&cfg, &Potential::NEWTONIAN).unwrap();
        assert!(norm < 1e-12, "norm = {norm}");
        // Exact multipliers from the two distinct equations of the square.
        let s_side = beta_pow(2.0f64.sqrt(), -3.0);
        let s_diag = beta_pow(2.0, -3.0);
        assert!((lambda - (s_side + s_diag) / 2.0).abs() < 1e-15);
        assert!((sigma - (s_diag - s_side) / 2.0).abs() < 1e-15);
        let res = cc_residuals(&cfg, lambda, sigma, &Potential::NEWTONIAN);
        assert!(res.norm < 1e-12);
    }

    #[test]
    fn unequal_masses_push_the_square_off_the_cc_set() {
        let cfg = square_config([1.0, 2.0, 1.0, 1.0]);
        let (_, _, norm) = fit_multipliers(&cfg, &Potential::NEWTONIAN).unwrap();
        // Fitted minimum computed once and frozen as a floor.
        assert!(norm > 0.05, "norm = {norm}");
    }

    #[test]
    fn perturbed_square_is_not_a_cc() {
        let cfg = PlanarConfig::unit_weights([
            Point2::new(1.02, 0.01),
            Point2::new(-0.03, 0.97),
            Point2::new(-1.01, 0.02),
            Point2::new(0.04, -1.05),
        ])
        .unwrap();
        let (_, _, norm) = fit_multipliers(&cfg, &Potential::NEWTONIAN).unwrap();
        assert!(norm > 1e-6, "norm = {norm}");
    }

    #[test]
    fn equal_s_values_solve_the_equations_with_zero_sigma() {
        // Regular-tetrahedron distances: all s_ij equal, so lambda' = s and
        // sigma = 0 zero the residuals; the area products are irrelevant.
        let d = DistanceVector::from_array([1.0; 6]).unwrap();
        let s = s_values(&d, &Potential::NEWTONIAN);
        let res = per_pair_residuals(&[1.0; 6], &s, &[0.0; 6], s[0], 0.0);
        assert_eq!(norm6(&res), 0.0);
    }

    #[test]
    fn multiplier_fit_is_ambiguous_for_collinear_bodies() {
        // All oriented areas vanish, so sigma is undetermined.
        let cfg = PlanarConfig::unit_weights([
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(3.0, 0.0),
        ])
        .unwrap();
        assert_eq!(
            fit_multipliers(&cfg, &Potential::NEWTONIAN).unwrap_err(),
            Error::AmbiguousFit
        );
    }

    #[test]
    fn dziobek_residuals_vanish_for_equal_distances() {
        let d = DistanceVector::from_array([1.0; 6]).unwrap();
        for lambda in [-0.3, 0.0, 0.7] {
            let (d1, d2) = dziobek_residuals(&d, lambda, &Potential::NEWTONIAN);
            assert_eq!((d1, d2), (0.0, 0.0));
        }
    }

    #[test]
    fn dziobek_residuals_vanish_on_the_square_with_fitted_multiplier() {
        let cfg = square_config([1.0; 4]);
        let d = mutual_distances(&cfg);
        let (lambda, _, _) = fit_multipliers(&cfg, &Potential::NEWTONIAN).unwrap();
        let (r1, r2) = dziobek_residuals(&d, lambda, &Potential::NEWTONIAN);
        assert!(r1.abs() < 1e-12 && r2.abs() < 1e-12, "({r1}, {r2})");
    }

    #[test]
    fn dziobek_residuals_generic_nonzero() {
        let d = DistanceVector::from_array([1.0, 2.0, 1.1, 1.2, 1.9, 1.05]).unwrap();
        let (r1, r2) = dziobek_residuals(&d, 0.0, &Potential::NEWTONIAN);
        assert!(r1.abs() > 1e-6 || r2.abs() > 1e-6);
    }

    #[test]
    fn consistency_vanishes_for_equal_distances() {
        let d = DistanceVector::from_array([1.3; 6]).unwrap();
        assert_eq!(consistency_f(&d, &Potential::NEWTONIAN), 0.0);
    }

    #[test]
    fn consistency_golden_value() {
        // Independent oracle: integer-power expansion in place, plus the
        // decimal frozen from it as a regression fixture.
        let d = DistanceVector::from_array([1.0, 2.0, 1.1, 1.2, 1.9, 1.05]).unwrap();
        let f = consistency_f(&d, &Potential::NEWTONIAN);
        let cube = |x: f64| x * x * x;
        let oracle = (cube(1.9) - cube(1.1)) * (cube(2.0) - cube(1.0)) * (cube(1.2) - cube(1.05))
            - (cube(1.0) - cube(1.1)) * (cube(1.9) - cube(1.05)) * (cube(2.0) - cube(1.2));
        assert!((f - oracle).abs() < 1e-12, "f = {f}, oracle = {oracle}");
        assert!((f - 33.907_467_944_000_004).abs() < 1e-12, "f = {f:.17}");
    }

    #[test]
    fn consistency_scale_covariance() {
        let d = DistanceVector::from_array([1.0, 2.0, 1.1, 1.2, 1.9, 1.05]).unwrap();
        let p = Potential::NEWTONIAN;
        let f1 = consistency_f(&d, &p);
        for t in [0.5, 2.0, 3.7] {
            let ft = consistency_f(&d.scaled(t).unwrap(), &p);
            let expected = beta_pow(t, 9.0) * f1;
            assert!(
                (ft - expected).abs() <= 1e-12 * expected.abs(),
                "t = {t}: {ft} vs {expected}"
            );
        }
    }

    #[test]
    fn recover_masses_on_the_square() {
        let cfg = square_config([1.0; 4]);
        let d = mutual_distances(&cfg);
        let areas = oriented_areas(&cfg);
        let m = recover_masses(&d, &areas, &Potential::NEWTONIAN).unwrap();
        for &mi in &m {
            assert!((mi - 1.0).abs() < 1e-13, "masses = {m:?}");
        }
    }

    #[test]
    fn recover_masses_requires_planarity() {
        let d = DistanceVector::from_array([1.0; 6]).unwrap();
        let areas = OrientedAreas {
            a1: 1.0,
            a2: -1.0,
            a3: 1.0,
            a4: -1.0,
        };
        assert!(matches!(
            recover_masses(&d, &areas, &Potential::NEWTONIAN).unwrap_err(),
            Error::NotPlanar { .. }
        ));
    }

    #[test]
    fn recover_masses_requires_consistency() {
        // A planar chart point off the kite planes violates the relation.
        let cfg = PlanarConfig::unit_weights([
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.2),
            Point2::new(-0.9, 0.0),
            Point2::new(0.0, -0.7),
        ])
        .unwrap();
        let d = mutual_distances(&cfg);
        let areas = oriented_areas(&cfg);
        assert!(matches!(
            recover_masses(&d, &areas, &Potential::NEWTONIAN).unwrap_err(),
            Error::InconsistentDistances { .. }
        ));
    }
}
