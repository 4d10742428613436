//! Exact local-minimum test for bivariate polynomials at a stationary origin.
//!
//! Given `p(x, y)` with rational coefficients and `p(0,0) = 0`, `∇p(0,0) = 0`,
//! [`decide`] returns whether the origin is a local minimum. Negative
//! answers carry a descent curve `(x(t), y(t))` along which `p` is negative
//! for small `t > 0`, checked by exact substitution.

pub mod poly;
pub mod realroots;
pub mod geometry;
pub mod series;
pub mod curve;
pub mod quasiform;
pub mod substitution;
pub mod decision;
pub mod oracle;
