//! Dense eigenvalue solvers and the comparison of spectra with symbol samples.

use std::f64::consts::PI;

use nalgebra::{DMatrix, Schur, SymmetricEigen};
use serde::Serialize;

use crate::assembly::{assemble_advection_reaction, assemble_matrix, toeplitz_split};
use crate::error::{Error, Result};
use crate::fracderiv::FractionalOrder;
use crate::splines::BSplineSpace;
use crate::symbol::SymbolEvaluator;

/// Largest order accepted by [`eig_general`].
pub const MAX_GENERAL_ORDER: usize = 1024;

/// Eigenvalues above `(1 + OUTLIER_MARGIN) max f` count as outliers.
pub const OUTLIER_MARGIN: f64 = 0.05;

fn asymmetry(m: &DMatrix<f64>) -> f64 {
    let mut worst = 0.0f64;
    for c in 0..m.ncols() {
        for r in c + 1..m.nrows() {
            worst = worst.max((m[(r, c)] - m[(c, r)]).abs());
        }
    }
    worst
}

/// Eigen-decomposition of a symmetric matrix (Householder tridiagonalisation
/// followed by implicit QR).
pub fn symmetric_eigen(m: &DMatrix<f64>) -> Result<SymmetricEigen<f64, nalgebra::Dyn>> {
    if !m.is_square() {
        return Err(Error::Invalid(format!(
            "{}x{} matrix is not square",
            m.nrows(),
            m.ncols()
        )));
    }
    let skew = asymmetry(m);
    if skew > 1e-12 * m.amax().max(1.0) {
        return Err(Error::NotSymmetric(skew));
    }
    Ok(SymmetricEigen::new(m.clone()))
}

/// Sorted eigenvalues of a symmetric matrix.
pub fn eig_symmetric(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    let mut v: Vec<f64> = symmetric_eigen(m)?.eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralEigenvalues {
    /// Real parts, ascending.
    pub real: Vec<f64>,
    /// Largest `|Im|` among all eigenvalues.
    pub max_imag: f64,
}

/// Eigenvalues of a general real matrix via the real Schur form
/// (Hessenberg reduction and shifted QR).
pub fn eig_general(m: &DMatrix<f64>) -> Result<GeneralEigenvalues> {
    let order = m.nrows();
    if !m.is_square() {
        return Err(Error::Invalid(format!(
            "{}x{} matrix is not square",
            m.nrows(),
            m.ncols()
        )));
    }
    if order > MAX_GENERAL_ORDER {
        return Err(Error::TooLarge(order));
    }
    let sweeps = order.max(1) * 50;
    let schur =
        Schur::try_new(m.clone(), f64::EPSILON, sweeps).ok_or(Error::NoConvergence(sweeps))?;
    let eigs = schur.complex_eigenvalues();
    let max_imag = eigs.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    let mut real: Vec<f64> = eigs.iter().map(|z| z.re).collect();
    real.sort_by(f64::total_cmp);
    Ok(GeneralEigenvalues { real, max_imag })
}

/// `theta_k = k pi / size`, `k = 1..size`.
pub fn symbol_grid(size: usize) -> Vec<f64> {
    (1..=size).map(|k| k as f64 * PI / size as f64).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenReport {
    pub eigenvalues: Vec<f64>,
    pub grid: Vec<f64>,
    /// Symbol samples on the grid, ascending.
    pub symbol_samples: Vec<f64>,
    pub outlier_budget: usize,
    /// Eigenvalues above `(1 + OUTLIER_MARGIN) max f`.
    pub outliers: usize,
    /// Mean `|lambda_(j) - f_(j)|` after dropping the top `outlier_budget` of both.
    pub deviation: f64,
    pub max_imag: f64,
}

/// Compare sorted eigenvalues with sorted symbol samples on the grid.
pub fn compare_to_symbol(eigs: &[f64], ev: &SymbolEvaluator, p: usize) -> Result<EigenReport> {
    let size = eigs.len();
    let grid = symbol_grid(size);
    let mut samples = grid
        .iter()
        .map(|&t| ev.eval(t))
        .collect::<Result<Vec<_>>>()?;
    samples.sort_by(f64::total_cmp);
    let mut eigenvalues = eigs.to_vec();
    eigenvalues.sort_by(f64::total_cmp);
    let budget = 4 * (p.max(1) - 1);
    let kept = size.saturating_sub(budget);
    if kept == 0 {
        return Err(Error::Invalid(format!(
            "order {size} does not exceed the outlier budget {budget}"
        )));
    }
    let deviation = eigenvalues[..kept]
        .iter()
        .zip(&samples[..kept])
        .map(|(l, f)| (l - f).abs())
        .sum::<f64>()
        / kept as f64;
    let ceiling = ev.max().1 * (1.0 + OUTLIER_MARGIN);
    let outliers = eigenvalues.iter().filter(|l| **l > ceiling).count();
    Ok(EigenReport {
        eigenvalues,
        grid,
        symbol_samples: samples,
        outlier_budget: budget,
        outliers,
        deviation,
        max_imag: 0.0,
    })
}

/// Spectra of `T` and of `n^{-alpha}(A + gamma d/dx + rho)` next to the symbol.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumComparison {
    pub p: usize,
    pub n: usize,
    pub alpha: f64,
    pub toeplitz: EigenReport,
    pub collocation: EigenReport,
}

pub fn spectrum_comparison(
    p: usize,
    n: usize,
    alpha: f64,
    gamma: f64,
    rho: f64,
) -> Result<SpectrumComparison> {
    let space = BSplineSpace::new(p, n)?;
    let order = FractionalOrder::riesz(alpha)?;
    let system = assemble_matrix(&space, &order)?;
    let split = toeplitz_split(&system)?;
    let ev = SymbolEvaluator::new(p, alpha)?;
    let t_eigs = eig_symmetric(&split.toeplitz())?;
    let toeplitz = compare_to_symbol(&t_eigs, &ev, p)?;
    let mut scaled = system.matrix;
    if gamma != 0.0 || rho != 0.0 {
        scaled += assemble_advection_reaction(&space, gamma, rho)?;
    }
    scaled *= (n as f64).powf(-alpha);
    let general = eig_general(&scaled)?;
    let mut collocation = compare_to_symbol(&general.real, &ev, p)?;
    collocation.max_imag = general.max_imag;
    Ok(SpectrumComparison {
        p,
        n,
        alpha,
        toeplitz,
        collocation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn identity_spectrum() {
        let v = eig_symmetric(&DMatrix::identity(5, 5)).unwrap();
        assert!(v.iter().all(|l| (l - 1.0).abs() < 1e-15));
    }

    #[test]
    fn two_by_two_toeplitz() {
        let m = DMatrix::from_row_slice(2, 2, &[3.0, 0.5, 0.5, 3.0]);
        let v = eig_symmetric(&m).unwrap();
        assert_relative_eq!(v[0], 2.5, epsilon = 1e-15);
        assert_relative_eq!(v[1], 3.5, epsilon = 1e-15);
        let g = eig_general(&m).unwrap();
        assert_relative_eq!(g.real[0], 2.5, epsilon = 1e-14);
        assert!(g.max_imag < 1e-15);
    }

    #[test]
    fn rejects_asymmetric() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        assert!(matches!(eig_symmetric(&m), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn rotation_has_imaginary_part() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let g = eig_general(&m).unwrap();
        assert_relative_eq!(g.max_imag, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn general_order_cap() {
        let m = DMatrix::<f64>::zeros(MAX_GENERAL_ORDER + 1, MAX_GENERAL_ORDER + 1);
        assert_eq!(eig_general(&m), Err(Error::TooLarge(MAX_GENERAL_ORDER + 1)));
    }

    #[test]
    fn toeplitz_spectrum_inside_symbol_range() {
        let c = spectrum_comparison(3, 31, 1.5, 0.0, 0.0).unwrap();
        let ev = SymbolEvaluator::new(3, 1.5).unwrap();
        let max = ev.max().1;
        for l in &c.toeplitz.eigenvalues {
            assert!(*l >= -1e-8 && *l <= max + 1e-8);
        }
        assert_eq!(c.toeplitz.grid.len(), 32);
        assert!(c.collocation.outliers <= c.collocation.outlier_budget);
    }
}
