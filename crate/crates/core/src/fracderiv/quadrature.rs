use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::special::gamma;
use crate::splines::PiecewisePolynomial;

/// Gauss–Jacobi rule on `[-1, 1]` for the weight `(1 - t)^a (1 + t)^b`,
/// computed from the eigen-decomposition of the Jacobi matrix.
#[derive(Debug, Clone)]
pub struct GaussJacobi {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    a: f64,
    b: f64,
}

impl GaussJacobi {
    pub fn new(n: usize, a: f64, b: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::QuadratureNodes(n));
        }
        if a <= -1.0 || b <= -1.0 {
            return Err(Error::Invalid(format!(
                "Jacobi exponents must exceed -1, got ({a}, {b})"
            )));
        }
        let ab = a + b;
        let mut jac = DMatrix::<f64>::zeros(n, n);
        for k in 0..n {
            let kf = k as f64;
            let s = 2.0 * kf + ab;
            jac[(k, k)] = if k == 0 {
                (b - a) / (ab + 2.0)
            } else {
                (b * b - a * a) / (s * (s + 2.0))
            };
            if k + 1 < n {
                let j = kf + 1.0;
                let s = 2.0 * j + ab;
                let beta = if k == 0 {
                    4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
                } else {
                    4.0 * j * (j + a) * (j + b) * (j + ab) / (s * s * (s + 1.0) * (s - 1.0))
                };
                jac[(k, k + 1)] = beta.sqrt();
                jac[(k + 1, k)] = beta.sqrt();
            }
        }
        let mu0 = 2f64.powf(ab + 1.0) * gamma(a + 1.0) * gamma(b + 1.0) / gamma(ab + 2.0);
        let eig = SymmetricEigen::new(jac);
        let mut pairs: Vec<(f64, f64)> = (0..n)
            .map(|k| (eig.eigenvalues[k], mu0 * eig.eigenvectors[(0, k)].powi(2)))
            .collect();
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
        let (nodes, weights) = pairs.into_iter().unzip();
        Ok(Self {
            nodes,
            weights,
            a,
            b,
        })
    }

    pub fn legendre(n: usize) -> Result<Self> {
        Self::new(n, 0.0, 0.0)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `int_lo^hi (hi - y)^a (y - lo)^b g(y) dy`.
    pub fn integrate(&self, lo: f64, hi: f64, g: impl Fn(f64) -> f64) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let scale = half.powf(1.0 + self.a + self.b);
        let s: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(t, w)| w * g(mid + half * t))
            .sum();
        scale * s
    }
}

/// `int_lo^hi (hi - y)^(1 - alpha) g(y) dy` by an `nodes`-point Gauss–Jacobi
/// rule; exact for polynomial `g` of degree below `2 nodes`.
pub fn gauss_jacobi_oracle(
    g: impl Fn(f64) -> f64,
    alpha: f64,
    interval: (f64, f64),
    nodes: usize,
) -> Result<f64> {
    let e = 1.0 - alpha;
    if !(e > -1.0 && e < 1.0) {
        return Err(Error::FractionalOrder(alpha));
    }
    let (lo, hi) = interval;
    if !(lo < hi) {
        return Err(Error::Invalid(format!("empty interval [{lo}, {hi}]")));
    }
    Ok(GaussJacobi::new(nodes, e, 0.0)?.integrate(lo, hi, g))
}

/// Adaptive composite Gauss–Legendre integration by bisection.
pub fn adaptive_gauss(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> f64 {
    let rule = GaussJacobi::legendre(10).expect("fixed rule");
    adaptive_step(&rule, f, lo, hi, tol, rule.integrate(lo, hi, f), 0)
}

fn adaptive_step(
    rule: &GaussJacobi,
    f: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: f64,
    whole: f64,
    depth: usize,
) -> f64 {
    let mid = 0.5 * (lo + hi);
    let left = rule.integrate(lo, mid, f);
    let right = rule.integrate(mid, hi, f);
    if depth >= 40 || (left + right - whole).abs() <= tol {
        return left + right;
    }
    adaptive_step(rule, f, lo, mid, 0.5 * tol, left, depth + 1)
        + adaptive_step(rule, f, mid, hi, 0.5 * tol, right, depth + 1)
}

/// Caputo derivative of order `alpha` computed by quadrature from the
/// `m`-th derivative, `m = floor(alpha) + 1`:
/// `(1/Gamma(m - alpha)) int_a^x (x - y)^(m - alpha - 1) u^(m)(y) dy`.
///
/// `breakpoints` lists points where `u^(m)` is not smooth. Panels away from
/// `x` are bisected until their length does not exceed their distance to `x`.
pub fn caputo_by_quadrature(
    deriv_m: impl Fn(f64) -> f64,
    breakpoints: &[f64],
    alpha: f64,
    a: f64,
    x: f64,
    nodes: usize,
) -> Result<f64> {
    if alpha < 0.0 {
        return Err(Error::FractionalOrder(alpha));
    }
    if x < a {
        return Err(Error::Domain(x));
    }
    if x == a {
        return Ok(0.0);
    }
    let m = alpha.floor() + 1.0;
    let e = m - alpha - 1.0;
    let mut cuts: Vec<f64> = std::iter::once(a)
        .chain(breakpoints.iter().copied().filter(|&t| t > a && t < x))
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let last = *cuts.last().unwrap();
    let jacobi = GaussJacobi::new(nodes, e, 0.0)?;
    let legendre = GaussJacobi::legendre(nodes)?;
    let kernel = |y: f64| (x - y).powf(e) * deriv_m(y);
    let mut total = jacobi.integrate(last, x, &deriv_m);
    for w in cuts.windows(2) {
        total += graded_panel(&legendre, &kernel, w[0], w[1], x, 0);
    }
    Ok(total / gamma(m - alpha))
}

/// Left and right Riemann–Liouville derivatives of a piecewise polynomial
/// at `x`, `1 < alpha < 2`, from quadrature of the Caputo integrals plus the
/// boundary terms `u(a) d^-alpha / Gamma(1 - alpha) + u'(a) d^(1-alpha) / Gamma(2 - alpha)`.
pub fn rl_by_quadrature(
    f: &PiecewisePolynomial,
    alpha: f64,
    x: f64,
    nodes: usize,
) -> Result<(f64, f64)> {
    if !(alpha > 1.0 && alpha < 2.0) {
        return Err(Error::FractionalOrder(alpha));
    }
    let (a, b) = f.domain();
    if !(x > a && x < b) {
        return Err(Error::Domain(x));
    }
    let g = f.reflect();
    let (f2, g2) = (f.derivative().derivative(), g.derivative().derivative());
    let left = caputo_by_quadrature(|y| f2.eval(y), f.breakpoints(), alpha, a, x, nodes)?;
    let right = caputo_by_quadrature(|y| g2.eval(y), g.breakpoints(), alpha, a, a + b - x, nodes)?;
    let terms = |(u, du): (f64, f64), d: f64| {
        u * d.powf(-alpha) / gamma(1.0 - alpha) + du * d.powf(1.0 - alpha) / gamma(2.0 - alpha)
    };
    // g'(a) = -f'(b)
    Ok((
        left + terms(f.left_limits(), x - a),
        right + terms(g.left_limits(), b - x),
    ))
}

fn graded_panel(
    rule: &GaussJacobi,
    f: &dyn Fn(f64) -> f64,
    l: f64,
    r: f64,
    x: f64,
    depth: usize,
) -> f64 {
    if r - l <= x - r || depth >= 60 {
        return rule.integrate(l, r, f);
    }
    let mid = 0.5 * (l + r);
    graded_panel(rule, f, l, mid, x, depth + 1) + graded_panel(rule, f, mid, r, x, depth + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn legendre_moments() {
        let rule = GaussJacobi::legendre(6).unwrap();
        for k in 0..12 {
            let exact = if k % 2 == 0 {
                2.0 / (k as f64 + 1.0)
            } else {
                0.0
            };
            let got = rule.integrate(-1.0, 1.0, |t| t.powi(k));
            assert!((got - exact).abs() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn jacobi_weight_sum() {
        let rule = GaussJacobi::new(5, -0.5, 0.0).unwrap();
        let s: f64 = rule.weights().iter().sum();
        // int_{-1}^{1} (1 - t)^(-1/2) dt = 2 sqrt(2)
        assert_relative_eq!(s, 2.0 * 2f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn jacobi_sum_exponent_minus_one() {
        // a + b = -1 hits the special first off-diagonal entry
        let rule = GaussJacobi::new(4, -0.5, -0.5).unwrap();
        let s: f64 = rule.weights().iter().sum();
        assert_relative_eq!(s, std::f64::consts::PI, max_relative = 1e-14);
    }

    #[test]
    fn oracle_constant() {
        let v = gauss_jacobi_oracle(|_| 1.0, 1.5, (0.0, 1.0), 1).unwrap();
        assert_relative_eq!(v, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn oracle_cubic() {
        // int_0^1 (1 - y)^(-0.2) y^3 dy = B(4, 0.8)
        let v = gauss_jacobi_oracle(|y| y.powi(3), 1.2, (0.0, 1.0), 2).unwrap();
        assert_relative_eq!(
            v,
            0.3916040100250626566416040100250626566416,
            max_relative = 1e-14
        );
    }

    #[test]
    fn oracle_rejects() {
        assert_eq!(
            gauss_jacobi_oracle(|_| 1.0, 1.5, (0.0, 1.0), 0).unwrap_err(),
            Error::QuadratureNodes(0)
        );
        assert!(gauss_jacobi_oracle(|_| 1.0, 2.0, (0.0, 1.0), 3).is_err());
    }

    #[test]
    fn adaptive_smooth() {
        let v = adaptive_gauss(&|x: f64| x.exp(), 0.0, 2.0, 1e-14);
        assert_relative_eq!(v, 2f64.exp() - 1.0, max_relative = 1e-14);
    }

    #[test]
    fn caputo_quadrature_monomial() {
        // Caputo of y^3 with alpha = 1.5 at x: Gamma(4)/Gamma(2.5) x^1.5
        let x: f64 = 0.7;
        let v = caputo_by_quadrature(|y| 6.0 * y, &[0.25, 0.5], 1.5, 0.0, x, 12).unwrap();
        assert_relative_eq!(v, 6.0 / gamma(2.5) * x.powf(1.5), max_relative = 1e-13);
    }
}
