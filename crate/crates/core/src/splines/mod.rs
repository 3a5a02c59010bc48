//! B-spline bases on the open uniform knot vector of [0, 1].

mod cardinal;
pub(crate) mod knots;
mod piecewise;

pub use cardinal::{cardinal_bspline, cardinal_piecewise};
pub use knots::{BSplineSpace, KnotVector, MAX_DEGREE, MAX_INTERVALS, MIN_DEGREE, MIN_INTERVALS};
pub(crate) use piecewise::horner;
pub use piecewise::PiecewisePolynomial;
