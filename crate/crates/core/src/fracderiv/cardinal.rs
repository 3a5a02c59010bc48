use crate::error::{Error, Result};
use crate::special::{binomial, recip_gamma};
use crate::splines::{cardinal_bspline, MAX_DEGREE};

use super::order::FractionalOrder;
use super::quadrature::GaussJacobi;

const FAR_NODES: usize = 16;

/// Riemann–Liouville derivatives of the cardinal B-spline `phi_p` on the
/// whole real line.
///
/// Near the support the closed truncated-power sum is used. Beyond
/// `t = p + 2` that sum cancels badly, so the convolution form
/// `(1/Gamma(-alpha)) int_0^{p+1} phi_p(s) (t - s)^(-alpha-1) ds`
/// is evaluated with Gauss–Legendre on each unit panel instead.
#[derive(Debug, Clone)]
pub struct CardinalDerivative {
    p: usize,
    alpha: f64,
    lead: f64,
    signed_binomials: Vec<f64>,
    far_recip: f64,
    // (node, weight * phi_p(node))
    far: Vec<(f64, f64)>,
}

impl CardinalDerivative {
    pub fn new(p: usize, order: &FractionalOrder) -> Result<Self> {
        // sums of two spline degrees appear in the inner-product identity
        if p > 2 * MAX_DEGREE + 1 {
            return Err(Error::Degree(p));
        }
        let alpha = order.alpha();
        if alpha > 0.0 && alpha >= p as f64 {
            return Err(Error::OrderNotBelowDegree { alpha, degree: p });
        }
        let signed_binomials = (0..=p + 1)
            .map(|j| if j % 2 == 0 { 1.0 } else { -1.0 } * binomial(p + 1, j))
            .collect();
        let rule = GaussJacobi::legendre(FAR_NODES)?;
        let far = (0..=p)
            .flat_map(|panel| {
                rule.nodes()
                    .iter()
                    .zip(rule.weights())
                    .map(move |(t, w)| {
                        let s = panel as f64 + 0.5 * (t + 1.0);
                        (s, 0.5 * w * cardinal_bspline(p, s))
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        Ok(Self {
            p,
            alpha,
            lead: recip_gamma(p as f64 - alpha + 1.0),
            signed_binomials,
            far_recip: recip_gamma(-alpha),
            far,
        })
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Left derivative `D^alpha_{-inf} phi_p (t)`.
    pub fn left(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let p = self.p;
        if t <= (p + 2) as f64 {
            let e = p as f64 - self.alpha;
            let s: f64 = self
                .signed_binomials
                .iter()
                .enumerate()
                .take_while(|(j, _)| (*j as f64) < t)
                .map(|(j, c)| c * (t - j as f64).powf(e))
                .sum();
            return self.lead * s;
        }
        if self.far_recip == 0.0 {
            return 0.0;
        }
        let e = -self.alpha - 1.0;
        self.far_recip
            * self
                .far
                .iter()
                .map(|(s, w)| w * (t - s).powf(e))
                .sum::<f64>()
    }

    /// Right derivative `D^alpha_{+inf} phi_p (t) = left(p + 1 - t)`.
    pub fn right(&self, t: f64) -> f64 {
        self.left((self.p + 1) as f64 - t)
    }
}

/// Left Riemann–Liouville derivative of `phi_p` at `t`.
pub fn left_rl_cardinal(p: usize, order: &FractionalOrder, t: f64) -> Result<f64> {
    Ok(CardinalDerivative::new(p, order)?.left(t))
}

/// Right Riemann–Liouville derivative of `phi_p` at `t`.
pub fn right_rl_cardinal(p: usize, order: &FractionalOrder, t: f64) -> Result<f64> {
    Ok(CardinalDerivative::new(p, order)?.right(t))
}
