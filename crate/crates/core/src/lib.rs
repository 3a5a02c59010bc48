//! Spline collocation for the one-dimensional Riesz fractional diffusion
//! equation on [0, 1] with absorbing boundary conditions.
//!
//! The crate builds the collocation matrix of a uniform B-spline space at
//! the Greville abscissae, splits it into a Toeplitz part and a low-rank
//! correction, evaluates the spectral symbol of the Toeplitz family and
//! checks everything against independent quadrature and manufactured
//! solutions.

pub mod assembly;
pub mod cli;
pub mod error;
pub mod fracderiv;
pub mod manufactured;
pub mod special;
pub mod spectra;
pub mod splines;
pub mod symbol;

pub use error::{Error, Result};
