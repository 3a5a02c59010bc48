//! Manufactured solutions with exact Riesz right-hand sides, the collocation
//! solve, and convergence studies.

use std::f64::consts::PI;

use nalgebra::DVector;
use serde::Serialize;

use crate::assembly::{assemble_matrix, CollocationSystem};
use crate::error::{Error, Result};
use crate::fracderiv::{rl_left_from_caputo, rl_right_from_caputo, BoundaryData, FractionalOrder};
use crate::splines::{horner, BSplineSpace};

const SERIES_DEGREE: usize = 160;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionKind {
    Polynomial,
    EntireSeries,
}

/// Exact solution `u` on [0, 1] with `u(0) = u(1) = 0`, stored as two power
/// series: one in `x` and one in `1 - x`.
#[derive(Debug, Clone)]
pub struct ManufacturedSolution {
    name: &'static str,
    kind: SolutionKind,
    u: fn(f64) -> f64,
    left: Vec<f64>,
    right: Vec<f64>,
}

impl ManufacturedSolution {
    /// `x^3 (1 - x)^3`.
    pub fn poly33() -> Self {
        let coeffs = vec![0.0, 0.0, 0.0, 1.0, -3.0, 3.0, -1.0];
        Self {
            name: "poly33",
            kind: SolutionKind::Polynomial,
            u: |x| (x * (1.0 - x)).powi(3),
            left: coeffs.clone(),
            right: coeffs,
        }
    }

    /// `sin(pi x^2)`.
    pub fn sin_pi_x2() -> Self {
        Self {
            name: "sinpix2",
            kind: SolutionKind::EntireSeries,
            u: |x| (PI * x * x).sin(),
            left: compose_sin(&[0.0, 0.0, PI], SERIES_DEGREE),
            // sin(pi (1 - y)^2) = sin(2 pi y - pi y^2)
            right: compose_sin(&[0.0, 2.0 * PI, -PI], SERIES_DEGREE),
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "poly33" => Some(Self::poly33()),
            "sinpix2" => Some(Self::sin_pi_x2()),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn kind(&self) -> SolutionKind {
        self.kind
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.u)(x)
    }

    /// Coefficients of the expansion in powers of `x`.
    pub fn left_coefficients(&self) -> &[f64] {
        &self.left
    }

    /// Coefficients of the expansion in powers of `1 - x`.
    pub fn right_coefficients(&self) -> &[f64] {
        &self.right
    }

    pub fn boundary_data(&self) -> BoundaryData {
        BoundaryData {
            left_value: self.left[0],
            left_slope: self.left[1],
            right_value: self.right[0],
            right_slope: -self.right[1],
        }
    }

    /// Largest gap between the two expansions and `u` on a uniform grid.
    pub fn expansion_residual(&self) -> f64 {
        (0..=200)
            .map(|k| {
                let x = k as f64 / 200.0;
                let u = self.eval(x);
                (horner(&self.left, x) - u)
                    .abs()
                    .max((horner(&self.right, 1.0 - x) - u).abs())
            })
            .fold(0.0, f64::max)
    }
}

/// Power series of `sin(g(y))` for `g(0) = 0`, truncated at `degree`.
fn compose_sin(g: &[f64], degree: usize) -> Vec<f64> {
    let mut out = vec![0.0; degree + 1];
    let mut power = vec![0.0; degree + 1];
    for (q, v) in g.iter().enumerate().take(degree + 1) {
        power[q] = *v;
    }
    let mut factorial = 1.0;
    for m in 1..=degree {
        factorial *= m as f64;
        if m % 2 == 1 {
            let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
            for (o, v) in out.iter_mut().zip(&power) {
                *o += sign * v / factorial;
            }
        }
        let mut next = vec![0.0; degree + 1];
        for (a, va) in power.iter().enumerate().filter(|(_, v)| **v != 0.0) {
            for (b, vb) in g.iter().enumerate() {
                if a + b <= degree {
                    next[a + b] += va * vb;
                }
            }
        }
        power = next;
    }
    while out.len() > 1 && out.last().is_some_and(|v| v.abs() < 1e-300) {
        out.pop();
    }
    out
}

// Caputo part of the term-wise rule: sum_{q>=2} c_q Gamma(q+1)/Gamma(q+1-alpha) d^(q-alpha)
fn monomial_caputo(coeffs: &[f64], order: &FractionalOrder, d: f64) -> f64 {
    let alpha = order.alpha();
    let mut weight = 2.0 * order.recip_gamma_shift(2);
    let mut total = 0.0;
    let mut dp = d.powf(2.0 - alpha);
    for (q, c) in coeffs.iter().enumerate().skip(2) {
        if q > 2 {
            weight *= q as f64 / (q as f64 - alpha);
            dp *= d;
        }
        total += c * weight * dp;
    }
    total
}

/// Exact right-hand side `pre * (D_left^alpha u + D_right^alpha u)(x)` for
/// `1 < alpha <= 2`, `0 < x < 1`.
pub fn riesz_rhs(sol: &ManufacturedSolution, order: &FractionalOrder, x: f64) -> Result<f64> {
    let alpha = order.alpha();
    if !(alpha > 1.0 && alpha <= 2.0) {
        return Err(Error::FractionalOrder(alpha));
    }
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(x));
    }
    let bd = sol.boundary_data();
    let left = rl_left_from_caputo(monomial_caputo(&sol.left, order, x), &bd, order, x, 0.0)?;
    let right = rl_right_from_caputo(
        monomial_caputo(&sol.right, order, 1.0 - x),
        &bd,
        order,
        x,
        1.0,
    )?;
    Ok(order.riesz_prefactor() * (left + right))
}

/// Dense LU solve of `A c = b` with a pivot-ratio singularity guard.
pub fn solve(system: &CollocationSystem) -> Result<DVector<f64>> {
    let b = system
        .rhs
        .as_ref()
        .ok_or_else(|| Error::Invalid("collocation system has no right-hand side".into()))?;
    let lu = system.matrix.clone().lu();
    let diag = lu.u().diagonal();
    let max = diag.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let min = diag.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
    if max == 0.0 || min < 1e-14 * max {
        return Err(Error::Singular(if max == 0.0 { 0.0 } else { min / max }));
    }
    let c = lu.solve(b).ok_or(Error::Singular(0.0))?;
    let residual = (&system.matrix * &c - b).amax();
    if residual > 1e-10 * b.amax().max(f64::MIN_POSITIVE) {
        return Err(Error::Singular(residual));
    }
    Ok(c)
}

/// Sample points `m / 1023`, `m = 0..1023`.
pub fn error_points() -> impl Iterator<Item = f64> {
    (0..1024).map(|m| m as f64 / 1023.0)
}

/// Maximum of `|sum_j c_j N_{j+1}(x) - u(x)|` over the 1024 sample points.
pub fn error_infinity(space: &BSplineSpace, coeffs: &[f64], u: impl Fn(f64) -> f64) -> f64 {
    error_points()
        .map(|x| (space.combination(2, coeffs, x) - u(x)).abs())
        .fold(0.0, f64::max)
}

/// Conjectured asymptotic order: `p + 2 - alpha` for even `p`, `p + 1 - alpha` for odd `p`.
pub fn order_model(p: usize, alpha: f64) -> f64 {
    if p % 2 == 0 {
        p as f64 + 2.0 - alpha
    } else {
        p as f64 + 1.0 - alpha
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub error: f64,
    /// `log2(e_{n/2} / e_n)`, absent on the first row.
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub solution: &'static str,
    pub p: usize,
    pub alpha: f64,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    pub fn last_order(&self) -> Option<f64> {
        self.rows.last().and_then(|r| r.order)
    }
}

/// Collocation solution for one mesh: the space and the coefficients of
/// `N_2, ..., N_{n+p-1}`.
pub fn solve_manufactured(
    p: usize,
    n: usize,
    order: &FractionalOrder,
    sol: &ManufacturedSolution,
) -> Result<(BSplineSpace, DVector<f64>)> {
    let space = BSplineSpace::new(p, n)?;
    let mut system = assemble_matrix(&space, order)?;
    let rhs = space
        .greville()
        .iter()
        .map(|&x| riesz_rhs(sol, order, x))
        .collect::<Result<Vec<_>>>()?;
    system.rhs = Some(DVector::from_vec(rhs));
    let c = solve(&system)?;
    Ok((space, c))
}

/// Sampled maximum error of the collocation solution for one mesh.
pub fn solve_error(
    p: usize,
    n: usize,
    order: &FractionalOrder,
    sol: &ManufacturedSolution,
) -> Result<f64> {
    let (space, c) = solve_manufactured(p, n, order, sol)?;
    Ok(error_infinity(&space, c.as_slice(), |x| sol.eval(x)))
}

pub fn convergence_study(
    p: usize,
    order: &FractionalOrder,
    sol: &ManufacturedSolution,
    ns: &[usize],
) -> Result<ConvergenceTable> {
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(ns.len());
    for &n in ns {
        let error = solve_error(p, n, order, sol)?;
        let order = rows.last().map(|prev| (prev.error / error).log2());
        rows.push(ConvergenceRow { n, error, order });
    }
    Ok(ConvergenceTable {
        solution: sol.name(),
        p,
        alpha: order.alpha(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fracderiv::caputo_by_quadrature;
    use crate::special::gamma;
    use approx::assert_relative_eq;

    fn ord(alpha: f64) -> FractionalOrder {
        FractionalOrder::new(alpha).unwrap()
    }

    #[test]
    fn expansions_reproduce_u() {
        assert!(ManufacturedSolution::poly33().expansion_residual() < 1e-15);
        assert!(ManufacturedSolution::sin_pi_x2().expansion_residual() < 1e-13);
    }

    #[test]
    fn sin_boundary_data() {
        let bd = ManufacturedSolution::sin_pi_x2().boundary_data();
        assert_eq!(bd.left_value, 0.0);
        assert_eq!(bd.left_slope, 0.0);
        assert!(bd.right_value.abs() < 1e-15);
        assert_relative_eq!(bd.right_slope, -2.0 * PI, max_relative = 1e-15);
    }

    #[test]
    fn poly_left_leading_term() {
        // only x^3 kept: Gamma(4)/Gamma(4 - alpha) x^(3 - alpha)
        let o = ord(1.3);
        let v = monomial_caputo(&[0.0, 0.0, 0.0, 1.0], &o, 0.4);
        assert_relative_eq!(v, 6.0 / gamma(2.7) * 0.4f64.powf(1.7), max_relative = 1e-14);
    }

    fn quadrature_rhs(sol: &ManufacturedSolution, alpha: f64, x: f64) -> f64 {
        // Caputo by quadrature of u'' plus the boundary terms of the RL relation
        let second = |y: f64| match sol.kind() {
            SolutionKind::Polynomial => {
                6.0 * y - 36.0 * y * y + 60.0 * y.powi(3) - 30.0 * y.powi(4)
            }
            SolutionKind::EntireSeries => {
                2.0 * PI * (PI * y * y).cos() - 4.0 * PI * PI * y * y * (PI * y * y).sin()
            }
        };
        let o = ord(alpha);
        let bd = sol.boundary_data();
        let left = caputo_by_quadrature(second, &[], alpha, 0.0, x, 30).unwrap();
        let right =
            caputo_by_quadrature(|z| second(1.0 - z), &[], alpha, 0.0, 1.0 - x, 30).unwrap();
        let left = rl_left_from_caputo(left, &bd, &o, x, 0.0).unwrap();
        let right = rl_right_from_caputo(right, &bd, &o, x, 1.0).unwrap();
        o.riesz_prefactor() * (left + right)
    }

    #[test]
    fn rhs_matches_quadrature() {
        for sol in [
            ManufacturedSolution::poly33(),
            ManufacturedSolution::sin_pi_x2(),
        ] {
            for alpha in [1.2, 1.5, 1.8] {
                for k in 1..20 {
                    let x = k as f64 / 20.0;
                    let exact = riesz_rhs(&sol, &ord(alpha), x).unwrap();
                    let quad = quadrature_rhs(&sol, alpha, x);
                    assert!(
                        (exact - quad).abs() < 1e-9 * (1.0 + quad.abs()),
                        "{} {alpha} {x}",
                        sol.name()
                    );
                }
            }
        }
    }

    #[test]
    fn integer_limit_is_minus_second_derivative() {
        let sol = ManufacturedSolution::poly33();
        for x in [0.1f64, 0.35, 0.5, 0.8] {
            let u2 = 6.0 * x - 36.0 * x * x + 60.0 * x.powi(3) - 30.0 * x.powi(4);
            assert_relative_eq!(
                riesz_rhs(&sol, &ord(2.0), x).unwrap(),
                -u2,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn rhs_rejects_endpoints() {
        let sol = ManufacturedSolution::poly33();
        assert_eq!(riesz_rhs(&sol, &ord(1.5), 0.0), Err(Error::Domain(0.0)));
        assert_eq!(riesz_rhs(&sol, &ord(1.5), 1.0), Err(Error::Domain(1.0)));
        assert!(riesz_rhs(&sol, &ord(0.5), 0.5).is_err());
    }

    #[test]
    fn spline_in_trial_space_is_recovered() {
        let space = BSplineSpace::new(3, 12).unwrap();
        let o = FractionalOrder::riesz(1.6).unwrap();
        let sys = assemble_matrix(&space, &o).unwrap();
        let coeffs = DVector::from_fn(space.trimmed_dim(), |k, _| ((k as f64) * 0.7).sin());
        let b = &sys.matrix * &coeffs;
        let sys = CollocationSystem {
            rhs: Some(b),
            ..sys
        };
        let c = solve(&sys).unwrap();
        assert!((c - coeffs).amax() < 1e-9);
    }

    #[test]
    fn table_cells() {
        let o = FractionalOrder::riesz(1.2).unwrap();
        let t = convergence_study(2, &o, &ManufacturedSolution::poly33(), &[4, 8]).unwrap();
        let e = t.rows[1].error;
        assert!((e - 1.5675e-4).abs() < 0.05 * 1.5675e-4, "{e}");
        assert!((t.rows[1].order.unwrap() - 3.07).abs() < 0.1);
    }

    #[test]
    fn order_model_values() {
        assert_relative_eq!(order_model(2, 1.2), 2.8);
        assert_relative_eq!(order_model(3, 1.2), 2.8);
        assert_relative_eq!(order_model(4, 1.5), 4.5);
    }
}
