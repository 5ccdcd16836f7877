//! Root-finding and verification engines.
//!
//! Three layers:
//!
//! - [`find_root_b`]: fix (a, c) with a > c and locate the unique b with
//!   F(a, b, c) = 0 in the admissible slab by safeguarded bisection with
//!   Newton acceleration. The perpendicular-diagonal theorem predicts the
//!   root is exactly the kite plane b = 1.
//! - [`scan_gamma`]: run the root-finder over a grid of the admissible
//!   (a, c) domain and aggregate the deviations |b - 1| into a report; grid
//!   cells are independent and evaluated in parallel with deterministic
//!   ordering.
//! - [`newton_cc`]: given masses, solve the full constrained critical-point
//!   system in distance coordinates (six grouped equations plus I = I0 and
//!   V = 0) by damped Newton with an analytic Jacobian, the area products
//!   expressed through the Cayley-Menger gradient so that no planar
//!   embedding is needed during iteration. [`verify_cc`] bundles the
//!   realizability, convexity, residual and positivity checks into one
//!   verdict.

use rayon::prelude::*;

use crate::cc::{
    beta_pow, consistency_f, consistency_scale, fit_multipliers_parts,
    moment_of_inertia_from_distances, per_pair_residuals, s_values, Potential, CONSISTENCY_TOL_REL,
};
use crate::error::{Error, Result};
use crate::geometry::{
    cayley_menger, cayley_menger_gradient_raw, cayley_menger_hessian, is_realizable_planar,
    ordered_convex_distances_slack, DistanceVector, PAIRS, PLANARITY_TOL_REL,
};
use crate::kite::{gamma_domain_bounds, KitePlane, KitePoint};

/// Offset above the lower admissibility bound when bracketing in b.
const BRACKET_EPS: f64 = 1e-9;
/// Initial margin above b = 1 for the upper bracket end. Shrinks
/// geometrically if F does not change sign across [lower, 1 + margin];
/// outside Gamma the sign of F above b = 1 is not guaranteed near the
/// domain corners.
const BRACKET_DELTA: f64 = 0.2;

/// The unique root of b -> F(a, b, c) in the admissible interval, located by
/// bracketed bisection refined with Newton steps from the chain-rule
/// derivative. Requires a > c > 0 and a slice that meets Gamma; the theorem
/// says the result must be 1 to tolerance.
pub fn find_root_b(a: f64, c: f64, p: &Potential, tol: f64) -> Result<f64> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
        });
    }
    if !a.is_finite() || a <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
        });
    }
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "c",
            value: c,
        });
    }
    if a == c {
        // F(a, b, a) = 0 for every b: nothing to solve on this slice.
        return Err(Error::IllPosedSlice { a });
    }
    let r12 = (a * a + 1.0).sqrt();
    if a < c {
        return Err(Error::NoBracket {
            a,
            c,
            detail: "labeling requires a > c",
        });
    }
    if a + c <= r12 {
        return Err(Error::NoBracket {
            a,
            c,
            detail: "slice misses Gamma: r24 <= r12",
        });
    }
    if r12 >= 2.0 {
        return Err(Error::NoBracket {
            a,
            c,
            detail: "slice misses Gamma: empty b-interval",
        });
    }

    let f = |b: f64| -> f64 {
        KitePoint::new(a, b, c, *p)
            .expect("positive chart coordinates")
            .consistency_f()
    };
    let b_lower = r12 - 1.0 + BRACKET_EPS;
    let f_lower = f(b_lower);
    if f_lower == 0.0 {
        return Ok(b_lower);
    }
    let mut delta = BRACKET_DELTA;
    let mut b_upper = 1.0 + delta;
    let mut f_upper = f(b_upper);
    while f_lower * f_upper > 0.0 && delta > 1e-6 {
        delta *= 0.5;
        b_upper = 1.0 + delta;
        f_upper = f(b_upper);
    }
    if f_lower * f_upper > 0.0 {
        return Err(Error::NoBracket {
            a,
            c,
            detail: "F does not change sign",
        });
    }

    let (mut lo, mut hi) = (b_lower, b_upper);
    let mut f_lo = f_lower;
    let mut b = 0.5 * (lo + hi);
    for _ in 0..200 {
        let fb = f(b);
        if fb == 0.0 {
            return Ok(b);
        }
        if f_lo * fb < 0.0 {
            hi = b;
        } else {
            lo = b;
            f_lo = fb;
        }
        if hi - lo <= tol {
            break;
        }
        // Newton candidate from the chain-rule derivative; fall back to the
        // midpoint whenever it leaves the bracket.
        let slope = KitePoint::new(a, b, c, *p).unwrap().df_db();
        let newton = b - fb / slope;
        b = if slope != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Ok(0.5 * (lo + hi))
}

/// Grid specification for [`scan_gamma`].
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct ScanSpec {
    /// Range scanned in a (cell midpoints are used as nodes).
    pub a_range: (f64, f64),
    /// Range scanned in c.
    pub c_range: (f64, f64),
    /// Cells per axis; the scan visits `resolution^2` nodes.
    pub resolution: usize,
    /// Tolerance handed to the per-cell root finder.
    pub root_tol: f64,
}

impl ScanSpec {
    /// The full admissible domain at the given resolution: both ranges span
    /// (1/sqrt(3), sqrt(3)); inadmissible nodes are skipped cell by cell.
    pub fn full_domain(resolution: usize) -> Self {
        let bounds = gamma_domain_bounds(KitePlane::B1);
        Self {
            a_range: (bounds.a_min, bounds.a_max),
            c_range: (bounds.a_min, bounds.a_max),
            resolution,
            root_tol: 1e-12,
        }
    }
}

/// One admissible grid node with its root.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct ScanCell {
    pub a: f64,
    pub c: f64,
    pub root_b: f64,
    /// |root_b - 1|: the theorem predicts zero.
    pub deviation: f64,
    /// Sign of dF/db at the root (general evaluation path).
    pub df_db_positive: bool,
}

/// A node where the root finder failed; kept in the report instead of
/// aborting the scan.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ScanFailure {
    pub a: f64,
    pub c: f64,
    pub message: String,
}

/// Aggregated result of a Gamma scan.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ScanReport {
    pub spec: ScanSpec,
    pub cells: Vec<ScanCell>,
    /// Nodes outside the admissible domain (skipped before root-finding).
    pub skipped: usize,
    pub failures: Vec<ScanFailure>,
    /// Max |root_b - 1| over all cells; 0 when no cell is admissible.
    pub max_deviation: f64,
    /// True when dF/db > 0 at every root found.
    pub all_monotone: bool,
}

/// Runs [`find_root_b`] on every admissible node of the grid: a node (a, c)
/// is admissible when a is interior to (1/sqrt(3), sqrt(3)), a > c, and
/// c > sqrt(a^2+1) - a so the slice meets Gamma. Cells are independent and
/// evaluated in parallel; the report lists them in row-major node order.
pub fn scan_gamma(spec: &ScanSpec, p: &Potential) -> ScanReport {
    let bounds = gamma_domain_bounds(KitePlane::B1);
    let res = spec.resolution;
    let (a_lo, a_hi) = spec.a_range;
    let (c_lo, c_hi) = spec.c_range;
    let da = (a_hi - a_lo) / res as f64;
    let dc = (c_hi - c_lo) / res as f64;

    enum Node {
        Skipped,
        Done(ScanCell),
        Failed(ScanFailure),
    }

    let nodes: Vec<Node> = (0..res * res)
        .into_par_iter()
        .map(|idx| {
            let i = idx / res;
            let j = idx % res;
            let a = a_lo + (i as f64 + 0.5) * da;
            let c = c_lo + (j as f64 + 0.5) * dc;
            let admissible = a > bounds.a_min
                && a < bounds.a_max
                && c < a
                && c > (a * a + 1.0).sqrt() - a
                && c > 0.0;
            if !admissible {
                return Node::Skipped;
            }
            match find_root_b(a, c, p, spec.root_tol) {
                Ok(root_b) => {
                    let slope = KitePoint::new(a, root_b, c, *p)
                        .map(|k| k.df_db())
                        .unwrap_or(f64::NAN);
                    Node::Done(ScanCell {
                        a,
                        c,
                        root_b,
                        deviation: (root_b - 1.0).abs(),
                        df_db_positive: slope > 0.0,
                    })
                }
                Err(e) => Node::Failed(ScanFailure {
                    a,
                    c,
                    message: e.to_string(),
                }),
            }
        })
        .collect();

    let mut cells = Vec::new();
    let mut failures = Vec::new();
    let mut skipped = 0;
    for node in nodes {
        match node {
            Node::Skipped => skipped += 1,
            Node::Done(cell) => cells.push(cell),
            Node::Failed(f) => failures.push(f),
        }
    }
    let max_deviation = cells.iter().fold(0.0f64, |m, c| m.max(c.deviation));
    let all_monotone = cells.iter().all(|c| c.df_db_positive);
    ScanReport {
        spec: *spec,
        cells,
        skipped,
        failures,
        max_deviation,
        all_monotone,
    }
}

/// Maximum damped-Newton iterations.
const NEWTON_MAX_ITER: usize = 60;
/// Convergence tolerance, relative to the residual scale of the system.
const NEWTON_TOL_REL: f64 = 1e-12;

/// Converged state of the constrained Newton solver.
#[derive(Clone, Debug, serde::Serialize)]
pub struct NewtonState {
    pub distances: DistanceVector,
    pub lambda_prime: f64,
    pub sigma: f64,
    /// Residuals of the eight equations (six grouped equations, I - I0, V).
    pub residual: [f64; 8],
    pub residual_norm: f64,
    pub iterations: usize,
    /// Damping factor of the last accepted step.
    pub damping: f64,
    /// Whether the deterministic tie-break perturbation was applied to
    /// escape a singular Jacobian at the initial point.
    pub tie_break_applied: bool,
}

fn norm8(v: &[f64; 8]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Residuals of the 8-equation system at unknowns
/// x = (r12, r13, r14, r23, r24, r34, lambda', sigma):
/// the six grouped equations with the area products written as
/// -grad(V)/32, then I - I0, then V.
fn newton_residual(
    x: &[f64; 8],
    ww: &[f64; 6],
    weights: &[f64; 4],
    p: &Potential,
    i0: f64,
) -> [f64; 8] {
    let d = DistanceVector {
        r12: x[0],
        r13: x[1],
        r14: x[2],
        r23: x[3],
        r24: x[4],
        r34: x[5],
    };
    let s = s_values(&d, p);
    let w_grad = cayley_menger_gradient_raw(&d);
    let ap = w_grad.map(|w| -w / 32.0);
    let cc = per_pair_residuals(ww, &s, &ap, x[6], x[7]);
    let mut g = [0.0; 8];
    g[..6].copy_from_slice(&cc);
    g[6] = moment_of_inertia_from_distances(weights, &d).expect("positive total mass") - i0;
    g[7] = cayley_menger(&d);
    g
}

/// Analytic Jacobian of [`newton_residual`]. The area-product terms
/// differentiate through the Cayley-Menger Hessian, so the whole system
/// closes in distance coordinates.
fn newton_jacobian(x: &[f64; 8], ww: &[f64; 6], p: &Potential, m_total: f64) -> [[f64; 8]; 8] {
    let d = DistanceVector {
        r12: x[0],
        r13: x[1],
        r14: x[2],
        r23: x[3],
        r24: x[4],
        r34: x[5],
    };
    let beta = p.beta();
    let r = d.as_array();
    let w_grad = cayley_menger_gradient_raw(&d);
    let hess = cayley_menger_hessian(&d);
    let sigma = x[7];
    let mut jac = [[0.0; 8]; 8];
    for a in 0..6 {
        for b in 0..6 {
            // The residual carries +sigma w_grad_a / 32; its derivative goes
            // through the Hessian of V in squared distances, chain-ruled by
            // d(r_b^2)/dr_b = 2 r_b.
            let mut v = sigma / 32.0 * hess[a][b] * 2.0 * r[b];
            if a == b {
                v += ww[a] * (-beta) * beta_pow(r[a], -beta - 1.0);
            }
            jac[a][b] = v;
        }
        jac[a][6] = -ww[a];
        jac[a][7] = w_grad[a] / 32.0;
    }
    for b in 0..6 {
        jac[6][b] = 2.0 * ww[b] * r[b] / m_total;
        jac[7][b] = w_grad[b] * 2.0 * r[b];
    }
    jac
}

/// Gaussian elimination with partial pivoting; `None` on a singular pivot.
#[allow(clippy::needless_range_loop)]
fn solve8(mut a: [[f64; 8]; 8], mut b: [f64; 8]) -> Option<[f64; 8]> {
    let scale = a
        .iter()
        .flatten()
        .fold(0.0f64, |m, &v| m.max(v.abs()))
        .max(1e-300);
    for col in 0..8 {
        let pivot_row = (col..8)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot_row][col].abs() <= 1e-14 * scale {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in col + 1..8 {
            let factor = a[row][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..8 {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = [0.0; 8];
    for row in (0..8).rev() {
        let mut sum = b[row];
        for k in row + 1..8 {
            sum -= a[row][k] * x[k];
        }
        x[row] = sum / a[row][row];
    }
    Some(x)
}

/// Damped Newton iteration for the constrained critical-point system: six
/// grouped equations, the inertia constraint I = I0, and planarity V = 0,
/// in the unknowns (six distances, lambda', sigma). Step control halves the
/// step until all distances stay positive and the residual norm decreases.
///
/// A singular Jacobian at the initial point (symmetric strata such as the
/// regular tetrahedron with equal masses can be rank-deficient) triggers one
/// deterministic relative perturbation of the distances before giving up.
pub fn newton_cc(
    masses: [f64; 4],
    p: &Potential,
    init: &DistanceVector,
    i0: f64,
) -> Result<NewtonState> {
    for &m in &masses {
        if !m.is_finite() || m <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "mass",
                value: m,
            });
        }
    }
    if !i0.is_finite() || i0 <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "i0",
            value: i0,
        });
    }
    let m_total: f64 = masses.iter().sum();
    let mut ww = [0.0; 6];
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        ww[k] = masses[i] * masses[j];
    }

    // Initial multipliers by least squares at the initial distances; on
    // symmetric strata the fit can be ambiguous, in which case the mean
    // s-value and sigma = 0 are as good a start as any.
    let s0 = s_values(init, p);
    let ap0 = cayley_menger_gradient_raw(init).map(|w| -w / 32.0);
    let (l0, sig0) = match fit_multipliers_parts(&ww, &s0, &ap0) {
        Ok((l, s, _)) => (l, s),
        Err(_) => (s0.iter().sum::<f64>() / 6.0, 0.0),
    };

    let mut x = [
        init.r12, init.r13, init.r14, init.r23, init.r24, init.r34, l0, sig0,
    ];
    let scale = {
        let smax = (0..6).fold(0.0f64, |m, k| m.max((ww[k] * s0[k]).abs()));
        let rmax = init.max_distance();
        1.0f64.max(smax).max(i0).max(rmax.powi(8))
    };
    let tol = NEWTON_TOL_REL * scale;

    let mut g = newton_residual(&x, &ww, &masses, p, i0);
    let mut gnorm = norm8(&g);
    let mut tie_break_applied = false;
    let mut damping = 1.0;

    let finish =
        |x: &[f64; 8], g: [f64; 8], gnorm: f64, iterations: usize, damping: f64, tie: bool| {
            let d = DistanceVector::from_array([x[0], x[1], x[2], x[3], x[4], x[5]])
                .expect("step control keeps distances positive");
            NewtonState {
                distances: d,
                lambda_prime: x[6],
                sigma: x[7],
                residual: g,
                residual_norm: gnorm,
                iterations,
                damping,
                tie_break_applied: tie,
            }
        };

    for iter in 0..NEWTON_MAX_ITER {
        if gnorm <= tol {
            return Ok(finish(&x, g, gnorm, iter, damping, tie_break_applied));
        }
        let jac = newton_jacobian(&x, &ww, p, m_total);
        let neg_g = {
            let mut n = g;
            for v in &mut n {
                *v = -*v;
            }
            n
        };
        let delta = match solve8(jac, neg_g) {
            Some(d) => d,
            None if !tie_break_applied => {
                // Deterministic nudge off the symmetric stratum.
                tie_break_applied = true;
                for (k, xi) in x.iter_mut().take(6).enumerate() {
                    *xi *= 1.0 + 1e-8 * (k as f64 + 1.0);
                }
                g = newton_residual(&x, &ww, &masses, p, i0);
                gnorm = norm8(&g);
                continue;
            }
            None => return Err(Error::SingularJacobian { iteration: iter }),
        };

        let mut t = 1.0;
        let mut accepted = false;
        while t >= 1e-12 {
            let mut xt = x;
            for k in 0..8 {
                xt[k] += t * delta[k];
            }
            if xt[..6].iter().all(|&r| r > 0.0) {
                let gt = newton_residual(&xt, &ww, &masses, p, i0);
                let gtn = norm8(&gt);
                if gtn < gnorm || gtn <= tol {
                    x = xt;
                    g = gt;
                    gnorm = gtn;
                    damping = t;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            return Err(Error::NoConvergence {
                iterations: iter,
                residual: gnorm,
            });
        }
    }
    if gnorm <= tol {
        return Ok(finish(
            &x,
            g,
            gnorm,
            NEWTON_MAX_ITER,
            damping,
            tie_break_applied,
        ));
    }
    Err(Error::NoConvergence {
        iterations: NEWTON_MAX_ITER,
        residual: gnorm,
    })
}

/// Structured verdict of [`verify_cc`].
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct VerifyVerdict {
    /// |V| below the scaled planarity tolerance and triangle inequalities.
    pub realizable: bool,
    /// The convexity chain r13, r24 > r12 >= r14, r23 >= r34.
    pub ordered_convex: bool,
    /// All supplied masses strictly positive.
    pub masses_positive: bool,
    /// Fitted multiplier residual norm (infinite when the fit is ambiguous).
    pub residual_norm: f64,
    pub lambda_prime: f64,
    pub sigma: f64,
    /// Residual norm below the caller's tolerance.
    pub residual_ok: bool,
    /// Value of the consistency relation.
    pub consistency: f64,
    /// |consistency| below its scaled tolerance.
    pub consistency_ok: bool,
}

impl VerifyVerdict {
    pub fn all_pass(&self) -> bool {
        self.realizable
            && self.ordered_convex
            && self.masses_positive
            && self.residual_ok
            && self.consistency_ok
    }
}

/// Bundles the planarity, convexity-chain, residual-norm and mass-positivity
/// checks into one verdict. The residual uses fitted multipliers with the
/// area products expressed through the Cayley-Menger gradient, so no planar
/// embedding of the distances is required.
pub fn verify_cc(d: &DistanceVector, masses: &[f64; 4], p: &Potential, tol: f64) -> VerifyVerdict {
    let realizable = is_realizable_planar(d, PLANARITY_TOL_REL);
    // Solver output sits within roundoff of the kite equalities.
    let ordered_convex = ordered_convex_distances_slack(d, 1e-10);
    let masses_positive = masses.iter().all(|&m| m > 0.0);
    let mut ww = [0.0; 6];
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        ww[k] = masses[i] * masses[j];
    }
    let s = s_values(d, p);
    let ap = cayley_menger_gradient_raw(d).map(|w| -w / 32.0);
    let (lambda_prime, sigma, residual_norm) =
        fit_multipliers_parts(&ww, &s, &ap).unwrap_or((f64::NAN, f64::NAN, f64::INFINITY));
    let consistency = consistency_f(d, p);
    let consistency_ok = consistency.abs() <= CONSISTENCY_TOL_REL * consistency_scale(d, p);
    VerifyVerdict {
        realizable,
        ordered_convex,
        masses_positive,
        residual_norm,
        lambda_prime,
        sigma,
        residual_ok: residual_norm < tol,
        consistency,
        consistency_ok,
    }
}
