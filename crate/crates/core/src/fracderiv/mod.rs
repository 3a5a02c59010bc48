//! Riemann–Liouville and Caputo derivatives of cardinal B-splines and of
//! piecewise polynomials, with quadrature-based cross-checks.

mod caputo;
mod cardinal;
mod identity;
mod order;
mod quadrature;

pub use caputo::{
    caputo_left_piecewise, caputo_right_piecewise, rl_left_piecewise, rl_right_piecewise,
    FractionalPiecewise,
};
pub use cardinal::{left_rl_cardinal, right_rl_cardinal, CardinalDerivative};
pub use identity::inner_product_check;
pub use order::{rl_left_from_caputo, rl_right_from_caputo, BoundaryData, FractionalOrder};
pub use quadrature::{
    adaptive_gauss, caputo_by_quadrature, gauss_jacobi_oracle, rl_by_quadrature, GaussJacobi,
};
