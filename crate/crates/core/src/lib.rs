//! Exact-arithmetic engine for Sheffer and Riordan number triangles.
//!
//! The crate builds lower-triangular number arrays from generating-function
//! specifications, computes closed-form ordinary generating functions of
//! their diagonal sequences by Lagrange inversion over the field of rational
//! functions in `t`, extracts the numerator-polynomial coefficient
//! triangles, and verifies every closed form against the triangle itself.
//!
//! Main entry points:
//! - [`catalog::lookup`] / [`catalog::TriangleSpec`]: named and inline
//!   generating-function specifications;
//! - [`triangle::Triangle::build`]: the triangle from its columns;
//! - [`diagonal::sheffer_diag_gfs`] / [`diagonal::riordan_diag_gfs`]: the
//!   closed-form diagonal generating functions;
//! - [`diagonal::verify_stack`]: closed forms vs. the triangle, exactly.

pub mod catalog;
pub mod diagonal;
pub mod expr;
pub mod output;
pub mod poly;
pub mod published;
pub mod rational;
pub mod ratfunc;
pub mod series;
pub mod triangle;

pub use catalog::{TriangleKind, TriangleSpec};
pub use poly::Poly;
pub use rational::Rational;
pub use ratfunc::RatFunc;
pub use series::Series;
pub use triangle::Triangle;

/// Default working truncation order in the reversion (`y`) direction,
/// used by the CLI unless `TFORGE_ORDER` overrides it. Stacks need only
/// `d_max + 1`; a larger order never changes any coefficient.
pub const DEFAULT_ORDER: usize = 12;
