use crate::error::{Error, Result};
use crate::splines::knots::shift_expansion;
use crate::splines::PiecewisePolynomial;

use super::order::{rl_left_from_caputo, rl_right_from_caputo, BoundaryData, FractionalOrder};

/// A piecewise polynomial prepared for repeated left/right Caputo and
/// Riemann–Liouville evaluation (`1 < alpha < 2`).
///
/// Every value is a finite sum of closed-form integrals of
/// `(x - y)^(1 - alpha)` against the polynomial pieces of `f''`.
#[derive(Debug, Clone)]
pub struct FractionalPiecewise {
    second: PiecewisePolynomial,
    second_reflected: PiecewisePolynomial,
    bdata: BoundaryData,
    domain: (f64, f64),
}

impl FractionalPiecewise {
    pub fn new(f: &PiecewisePolynomial) -> Self {
        Self {
            second: f.derivative().derivative(),
            second_reflected: f.reflect().derivative().derivative(),
            bdata: BoundaryData::from_piecewise(f),
            domain: f.domain(),
        }
    }

    pub fn boundary_data(&self) -> &BoundaryData {
        &self.bdata
    }

    fn check(&self, order: &FractionalOrder, x: f64) -> Result<()> {
        let alpha = order.alpha();
        if !(alpha > 1.0 && alpha < 2.0) {
            return Err(Error::FractionalOrder(alpha));
        }
        let (a, b) = self.domain;
        if !(a..=b).contains(&x) {
            return Err(Error::Domain(x));
        }
        Ok(())
    }

    pub fn caputo_left(&self, order: &FractionalOrder, x: f64) -> Result<f64> {
        self.check(order, x)?;
        Ok(left_kernel_sum(&self.second, order, x))
    }

    pub fn caputo_right(&self, order: &FractionalOrder, x: f64) -> Result<f64> {
        self.check(order, x)?;
        let (a, b) = self.domain;
        Ok(left_kernel_sum(
            &self.second_reflected,
            order,
            (a + b - x).clamp(a, b),
        ))
    }

    pub fn rl_left(&self, order: &FractionalOrder, x: f64) -> Result<f64> {
        let c = self.caputo_left(order, x)?;
        rl_left_from_caputo(c, &self.bdata, order, x, self.domain.0)
    }

    pub fn rl_right(&self, order: &FractionalOrder, x: f64) -> Result<f64> {
        let c = self.caputo_right(order, x)?;
        rl_right_from_caputo(c, &self.bdata, order, x, self.domain.1)
    }
}

/// Left Caputo derivative `(1/Gamma(2-alpha)) int_a^x (x-y)^(1-alpha) f''(y) dy`
/// in closed form, `1 < alpha < 2`.
pub fn caputo_left_piecewise(
    f: &PiecewisePolynomial,
    order: &FractionalOrder,
    x: f64,
) -> Result<f64> {
    FractionalPiecewise::new(f).caputo_left(order, x)
}

/// Right Caputo derivative `(1/Gamma(2-alpha)) int_x^b (y-x)^(1-alpha) f''(y) dy`.
pub fn caputo_right_piecewise(
    f: &PiecewisePolynomial,
    order: &FractionalOrder,
    x: f64,
) -> Result<f64> {
    FractionalPiecewise::new(f).caputo_right(order, x)
}

pub fn rl_left_piecewise(f: &PiecewisePolynomial, order: &FractionalOrder, x: f64) -> Result<f64> {
    FractionalPiecewise::new(f).rl_left(order, x)
}

pub fn rl_right_piecewise(f: &PiecewisePolynomial, order: &FractionalOrder, x: f64) -> Result<f64> {
    FractionalPiecewise::new(f).rl_right(order, x)
}

fn left_kernel_sum(second: &PiecewisePolynomial, order: &FractionalOrder, x: f64) -> f64 {
    let beta = 1.0 - order.alpha();
    let s: f64 = second
        .pieces()
        .take_while(|(l, _, _)| *l < x)
        .filter(|(_, _, c)| c.iter().any(|v| *v != 0.0))
        .map(|(l, r, c)| kernel_integral(c, l, r, x, beta))
        .sum();
    s * order.recip_gamma_shift(1)
}

/// `int_l^min(r,x) (x - y)^beta sum_m c_m (y - l)^m dy` for `-1 < beta < 0`.
fn kernel_integral(c: &[f64], l: f64, r: f64, x: f64, beta: f64) -> f64 {
    let top = r.min(x);
    let h = top - l;
    if h <= 0.0 {
        return 0.0;
    }
    let d = x - l;
    if r < x && x - r >= h {
        far_series(c, h, d, beta)
    } else {
        near_exact(c, d, x - top, beta)
    }
}

// expand (x - y)^beta = D^beta (1 - s/D)^beta with s = y - l, s/D <= 1/2
fn far_series(c: &[f64], h: f64, d: f64, beta: f64) -> f64 {
    let z = h / d;
    let mut hp = h;
    let ch: Vec<f64> = c
        .iter()
        .map(|v| {
            let t = v * hp;
            hp *= h;
            t
        })
        .collect();
    let scale: f64 = ch.iter().map(|v| v.abs()).sum();
    let mut total = 0.0;
    let mut w = 1.0;
    for k in 0..400 {
        let inner: f64 = ch
            .iter()
            .enumerate()
            .map(|(m, v)| v / (m + k + 1) as f64)
            .sum();
        total += w * inner;
        // remaining terms are bounded by a geometric tail with ratio z
        if w * scale / (k + 1) as f64 * z / (1.0 - z) < 1e-17 * total.abs().max(f64::MIN_POSITIVE) {
            break;
        }
        w *= z * (k as f64 - beta) / (k + 1) as f64;
    }
    d.powf(beta) * total
}

// re-expand in powers of (y - x) = -s and integrate s^(beta+q) over [s_lo, D]
fn near_exact(c: &[f64], d: f64, s_lo: f64, beta: f64) -> f64 {
    let b = shift_expansion(c, d);
    b.iter()
        .enumerate()
        .map(|(q, v)| {
            let e = beta + q as f64 + 1.0;
            let upper = d.powf(e);
            let lower = if s_lo > 0.0 { s_lo.powf(e) } else { 0.0 };
            let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
            sign * v * (upper - lower) / e
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;
    use approx::assert_relative_eq;

    fn ord(alpha: f64) -> FractionalOrder {
        FractionalOrder::new(alpha).unwrap()
    }

    #[test]
    fn quadratic_at_one() {
        let f = PiecewisePolynomial::single(0.0, 1.0, vec![0.0, 0.0, 1.0]).unwrap();
        let v = caputo_left_piecewise(&f, &ord(1.5), 1.0).unwrap();
        assert_relative_eq!(v, 2.0 / gamma(1.5), max_relative = 1e-14);
    }

    #[test]
    fn constant_has_zero_derivative() {
        let f = PiecewisePolynomial::new(vec![0.0, 0.5, 1.0], vec![vec![3.0], vec![3.0]]).unwrap();
        for x in [0.0, 0.2, 0.5, 0.9, 1.0] {
            assert_eq!(caputo_left_piecewise(&f, &ord(1.3), x).unwrap(), 0.0);
            assert_eq!(caputo_right_piecewise(&f, &ord(1.3), x).unwrap(), 0.0);
        }
    }

    #[test]
    fn far_and_near_forms_agree() {
        let c = [0.3, -1.2, 2.0, 0.7];
        for beta in [-0.2, -0.5, -0.8] {
            // x - r = h exactly sits on the switch
            let (l, r, x) = (0.0, 0.25, 0.5);
            let a = far_series(&c, r - l, x - l, beta);
            let b = near_exact(&c, x - l, x - r, beta);
            assert_relative_eq!(a, b, max_relative = 1e-13);
        }
    }

    #[test]
    fn monomials_on_refined_mesh() {
        // y^q split over 7 uneven pieces, left Caputo equals the monomial rule
        let bps = vec![0.0, 0.05, 0.2, 0.21, 0.5, 0.8, 0.93, 1.0];
        for q in 2..=8usize {
            let coeffs = bps
                .windows(2)
                .map(|w| {
                    let mut c = vec![0.0; q + 1];
                    c[q] = 1.0;
                    shift_expansion(&c, w[0])
                })
                .collect();
            let f = PiecewisePolynomial::new(bps.clone(), coeffs).unwrap();
            for alpha in [1.2, 1.5, 1.8] {
                let prep = FractionalPiecewise::new(&f);
                for k in 1..=50 {
                    let x = k as f64 / 50.0;
                    let exact = gamma(q as f64 + 1.0) / gamma(q as f64 + 1.0 - alpha)
                        * x.powf(q as f64 - alpha);
                    let v = prep.rl_left(&ord(alpha), x).unwrap();
                    assert_relative_eq!(v, exact, max_relative = 1e-11);
                }
            }
        }
    }

    #[test]
    fn right_mirrors_left() {
        // f(y) = (1 - y)^3 on [0, 1]: right Caputo = Gamma(4)/Gamma(4 - alpha) (1 - x)^(3 - alpha)
        let f = PiecewisePolynomial::single(0.0, 1.0, vec![1.0, -3.0, 3.0, -1.0]).unwrap();
        let alpha = 1.4;
        for x in [0.0, 0.25, 0.6, 0.99] {
            let v = caputo_right_piecewise(&f, &ord(alpha), x).unwrap();
            let exact = 6.0 / gamma(4.0 - alpha) * (1.0f64 - x).powf(3.0 - alpha);
            assert_relative_eq!(v, exact, max_relative = 1e-12);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let f = PiecewisePolynomial::single(0.0, 1.0, vec![0.0, 0.0, 1.0]).unwrap();
        assert_eq!(
            caputo_left_piecewise(&f, &ord(1.5), 1.5),
            Err(Error::Domain(1.5))
        );
        assert!(caputo_left_piecewise(&f, &ord(0.5), 0.5).is_err());
        assert!(caputo_left_piecewise(&f, &ord(2.0), 0.5).is_err());
    }
}
