use crate::error::Result;
use crate::special::{binomial, gamma};

use super::PiecewisePolynomial;

/// Cardinal B-spline `phi_p(t)`: supported on `[0, p+1]`, built from the
/// indicator of `[0, 1)` by the degree-raising recurrence.
pub fn cardinal_bspline(p: usize, t: f64) -> f64 {
    if !(0.0..=(p + 1) as f64).contains(&t) {
        return 0.0;
    }
    // values[j] holds phi_d(t - j) for the current degree d
    let mut values: Vec<f64> = (0..=p)
        .map(|j| {
            let s = t - j as f64;
            if (0.0..1.0).contains(&s) {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    for d in 1..=p {
        let df = d as f64;
        for j in 0..=p - d {
            let s = t - j as f64;
            values[j] = (s * values[j] + (df + 1.0 - s) * values[j + 1]) / df;
        }
    }
    values[0]
}

/// `phi_p` as a piecewise polynomial on `[0, p + 1]`.
pub fn cardinal_piecewise(p: usize) -> Result<PiecewisePolynomial> {
    let fact = gamma(p as f64 + 1.0);
    let bps: Vec<f64> = (0..=p + 1).map(|k| k as f64).collect();
    let coeffs = (0..=p)
        .map(|k| {
            let mut c = vec![0.0; p + 1];
            for j in 0..=k {
                let w = if j % 2 == 0 { 1.0 } else { -1.0 } * binomial(p + 1, j) / fact;
                let shift = (k - j) as f64;
                for (m, cm) in c.iter_mut().enumerate() {
                    *cm += w * binomial(p, m) * shift.powi((p - m) as i32);
                }
            }
            c
        })
        .collect();
    PiecewisePolynomial::new(bps, coeffs)
}
