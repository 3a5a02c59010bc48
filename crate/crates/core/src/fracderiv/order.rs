use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::special::recip_gamma;
use crate::splines::PiecewisePolynomial;

const GAMMA_CACHE: usize = 24;

/// A validated fractional order `alpha` with cached reciprocal gamma values.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalOrder {
    alpha: f64,
    prefactor: f64,
    // recip[k] = 1 / Gamma(k + 1 - alpha)
    recip: Vec<f64>,
}

impl FractionalOrder {
    /// Any order in `[0, 2]`; used by the symbol and identity code.
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=2.0).contains(&alpha) {
            return Err(Error::FractionalOrder(alpha));
        }
        Self::unrestricted(alpha)
    }

    /// Any finite nonnegative order; only needed when orders are added.
    pub fn unrestricted(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::FractionalOrder(alpha));
        }
        let recip = (0..GAMMA_CACHE)
            .map(|k| recip_gamma(k as f64 + 1.0 - alpha))
            .collect();
        Ok(Self {
            alpha,
            prefactor: 1.0 / (2.0 * (PI * alpha / 2.0).cos()),
            recip,
        })
    }

    /// An order usable for the Riesz problem: `1 < alpha < 2`, away from the
    /// pole of the prefactor.
    pub fn riesz(alpha: f64) -> Result<Self> {
        let order = Self::new(alpha)?;
        order.ensure_riesz()?;
        Ok(order)
    }

    pub fn ensure_riesz(&self) -> Result<()> {
        let a = self.alpha;
        if a > 1.0 && a < 2.0 && (PI * a / 2.0).cos().abs() > 1e-12 {
            Ok(())
        } else {
            Err(Error::FractionalOrder(a))
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `1 / (2 cos(pi alpha / 2))`.
    pub fn riesz_prefactor(&self) -> f64 {
        self.prefactor
    }

    /// `1 / Gamma(k + 1 - alpha)`.
    pub fn recip_gamma_shift(&self, k: usize) -> f64 {
        self.recip
            .get(k)
            .copied()
            .unwrap_or_else(|| recip_gamma(k as f64 + 1.0 - self.alpha))
    }
}

/// One-sided limits of a function and its first derivative at the ends of
/// its domain, used to convert Caputo values into Riemann–Liouville ones.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BoundaryData {
    pub left_value: f64,
    pub left_slope: f64,
    pub right_value: f64,
    pub right_slope: f64,
}

impl BoundaryData {
    pub fn from_piecewise(f: &PiecewisePolynomial) -> Self {
        let (left_value, left_slope) = f.left_limits();
        let (right_value, right_slope) = f.right_limits();
        Self {
            left_value,
            left_slope,
            right_value,
            right_slope,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        [
            self.left_value,
            self.left_slope,
            self.right_value,
            self.right_slope,
        ]
        .iter()
        .all(|v| *v == 0.0)
    }
}

/// Left Riemann–Liouville value from the Caputo value (`m = 2`).
pub fn rl_left_from_caputo(
    caputo_value: f64,
    bdata: &BoundaryData,
    order: &FractionalOrder,
    x: f64,
    a: f64,
) -> Result<f64> {
    let d = x - a;
    if d < 0.0 {
        return Err(Error::Domain(x));
    }
    let (u, du) = (bdata.left_value, bdata.left_slope);
    if d == 0.0 {
        return if u == 0.0 && du == 0.0 {
            Ok(caputo_value)
        } else {
            Err(Error::SingularCorrection)
        };
    }
    let alpha = order.alpha();
    let mut v = caputo_value;
    if u != 0.0 {
        v += u * d.powf(-alpha) * order.recip_gamma_shift(0);
    }
    if du != 0.0 {
        v += du * d.powf(1.0 - alpha) * order.recip_gamma_shift(1);
    }
    Ok(v)
}

/// Right Riemann–Liouville value from the Caputo value (`m = 2`).
pub fn rl_right_from_caputo(
    caputo_value: f64,
    bdata: &BoundaryData,
    order: &FractionalOrder,
    x: f64,
    b: f64,
) -> Result<f64> {
    let d = b - x;
    if d < 0.0 {
        return Err(Error::Domain(x));
    }
    let (u, du) = (bdata.right_value, bdata.right_slope);
    if d == 0.0 {
        return if u == 0.0 && du == 0.0 {
            Ok(caputo_value)
        } else {
            Err(Error::SingularCorrection)
        };
    }
    let alpha = order.alpha();
    let mut v = caputo_value;
    if u != 0.0 {
        v += u * d.powf(-alpha) * order.recip_gamma_shift(0);
    }
    if du != 0.0 {
        v -= du * d.powf(1.0 - alpha) * order.recip_gamma_shift(1);
    }
    Ok(v)
}
