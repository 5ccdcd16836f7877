//! Numerical toolkit for planar four-body and four-vortex central
//! configurations in mutual-distance coordinates.
//!
//! A central configuration is a critical point of the interaction potential
//! restricted to a level set of the moment of inertia. For four bodies the
//! six mutual distances are excellent coordinates once the Cayley-Menger
//! planarity constraint V = 0 is imposed. This crate provides:
//!
//! - [`geometry`]: distances, the Cayley-Menger determinant and its
//!   derivatives, oriented areas, realizability and convexity predicates;
//! - [`cc`]: the central-configuration equations for power-law potentials
//!   and the point-vortex Hamiltonian, the Dziobek relation, the
//!   multiplier-free consistency relation, multiplier fitting and mass
//!   recovery;
//! - [`kite`]: the coordinate chart for convex configurations with
//!   perpendicular diagonals, the consistency function F(a, b, c) and its
//!   b-derivative, domain bounds, closed-form kite masses, and the exact
//!   factorizations for the vortex and even-exponent cases;
//! - [`solver`]: bracketed root-finding in the chart (confirming that the
//!   only root is the kite plane b = 1), grid scans, a damped Newton solver
//!   for the full constrained system, and a verification verdict.

pub mod cc;
pub mod error;
pub mod geometry;
pub mod kite;
pub mod solver;

pub use error::{Error, Result};
pub use geometry::{DistanceVector, OrientedAreas, PlanarConfig, Point2};
