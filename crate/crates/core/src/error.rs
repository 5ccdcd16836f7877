//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two bodies occupy the same point; mutual distances are singular there.
    #[error("bodies {i} and {j} coincide")]
    CoincidentBodies { i: usize, j: usize },

    /// A mutual distance is zero, negative, or not finite.
    #[error("distance {pair} must be positive and finite, got {value}")]
    NonpositiveDistance { pair: &'static str, value: f64 },

    /// The area formula for the Cayley-Menger gradient only holds on planar
    /// distance vectors.
    #[error("distances are not planar-realizable (|V| = {v:.6e}, tolerance {tol:.6e})")]
    NotPlanar { v: f64, tol: f64 },

    /// Center of mass (or vorticity) is undefined.
    #[error("total weight is zero")]
    ZeroTotalWeight,

    /// Power-law exponent out of range.
    #[error("power-law exponent must be positive, got alpha = {alpha}")]
    NonpositiveAlpha { alpha: f64 },

    /// The least-squares system for the multipliers is rank-deficient: the
    /// weight products and area products are proportional across all pairs.
    #[error("multiplier fit is ambiguous: rank-deficient 6x2 system")]
    AmbiguousFit,

    /// Mass recovery divides by s_ij - lambda'; that factor vanished.
    #[error("mass recovery divides by (s_{pair} - lambda') which is ~ 0")]
    MultiplierCollision { pair: &'static str },

    /// Mass recovery needs nondegenerate triangle areas.
    #[error("oriented area A{index} vanishes; mass ratios are undefined")]
    DegenerateArea { index: usize },

    /// Mass recovery requires the distance consistency relation to hold.
    #[error("distances violate the consistency relation (|F| = {f:.6e} > {tol:.6e})")]
    InconsistentDistances { f: f64, tol: f64 },

    /// Kite chart coordinates must lie in the open positive octant.
    #[error("kite coordinates must be strictly positive, got (a, b, c) = ({a}, {b}, {c})")]
    NonpositiveChart { a: f64, b: f64, c: f64 },

    /// A denominator in the closed-form kite mass expressions vanished.
    #[error("degenerate kite: denominator {which} vanishes")]
    DegenerateKite { which: &'static str },

    /// The simplified on-Gamma derivative divides by r13^beta - r12^beta.
    #[error("on-Gamma derivative is inapplicable: r13^beta - r12^beta is below tolerance")]
    OnGammaDenominator,

    /// The residual-factor quotient is 0/0 on the kite planes; evaluation is
    /// refused inside a guard band around them.
    #[error("residual factor evaluated inside the guard band of {factor}")]
    GuardBand { factor: &'static str },

    /// The residual factor is only defined for the even exponents the
    /// factorization covers.
    #[error("residual factor supports alpha in {{2, 4}}, got alpha = {alpha}")]
    UnsupportedExponent { alpha: f64 },

    /// Root bracketing failed: no sign change of F over the admissible
    /// b-interval. Signals a <= c or a slice that misses Gamma.
    #[error(
        "no sign change of F in b over the admissible interval at (a, c) = ({a}, {c}): {detail}"
    )]
    NoBracket {
        a: f64,
        c: f64,
        detail: &'static str,
    },

    /// On the plane a = c the function F vanishes for every b; there is no
    /// isolated root to find.
    #[error("slice a = c = {a} is ill-posed: F is identically zero in b")]
    IllPosedSlice { a: f64 },

    /// Newton's linear solve met a singular Jacobian.
    #[error("singular Jacobian in Newton iteration {iteration}")]
    SingularJacobian { iteration: usize },

    /// Newton failed to converge; the final residual norm is attached.
    #[error("Newton did not converge in {iterations} iterations (residual {residual:.6e})")]
    NoConvergence { iterations: usize, residual: f64 },

    /// A scalar parameter violated its documented precondition.
    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },
}
