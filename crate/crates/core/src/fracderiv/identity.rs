use crate::error::{Error, Result};

use super::cardinal::CardinalDerivative;
use super::order::FractionalOrder;
use super::quadrature::adaptive_gauss;

/// Both sides of the fractional inner-product identity
///
/// `int D_left^a1 phi_p1(x) D_right^a2 phi_p2(x + k) dx = D_left^(a1+a2) phi_(p1+p2+1)(p2 + 1 - k)`.
///
/// The left side is integrated numerically over `[0, p2 + 1 - k]`, where
/// the integrand lives, on unit panels with adaptive Gauss–Legendre.
pub fn inner_product_check(
    p1: usize,
    p2: usize,
    alpha1: f64,
    alpha2: f64,
    k: i64,
) -> Result<(f64, f64)> {
    for (p, a) in [(p1, alpha1), (p2, alpha2)] {
        if !(0.0..=2.0).contains(&a) {
            return Err(Error::FractionalOrder(a));
        }
        if a > 0.0 && a >= p as f64 {
            return Err(Error::OrderNotBelowDegree {
                alpha: a,
                degree: p,
            });
        }
    }
    let left = CardinalDerivative::new(p1, &FractionalOrder::new(alpha1)?)?;
    let right = CardinalDerivative::new(p2, &FractionalOrder::new(alpha2)?)?;
    let sum = FractionalOrder::unrestricted(alpha1 + alpha2)?;
    let rhs = CardinalDerivative::new(p1 + p2 + 1, &sum)?.left((p2 as i64 + 1 - k) as f64);

    let upper = p2 as i64 + 1 - k;
    if upper <= 0 {
        return Ok((0.0, rhs));
    }
    let kf = k as f64;
    let integrand = |x: f64| left.left(x) * right.right(x + kf);
    let panels = upper as usize;
    let tol = 1e-10 / panels as f64;
    let lhs = (0..panels)
        .map(|j| adaptive_gauss(&integrand, j as f64, j as f64 + 1.0, tol))
        .sum();
    Ok((lhs, rhs))
}
