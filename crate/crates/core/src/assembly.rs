//! Collocation matrices of the Riesz operator at the Greville abscissae and
//! their Toeplitz-plus-correction structure.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::Result;
use crate::fracderiv::{CardinalDerivative, FractionalOrder, FractionalPiecewise};
use crate::splines::BSplineSpace;

/// Relative singular-value threshold used for numerical rank.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Collocation matrix `A` (and optionally a right-hand side) on the trimmed
/// space `N_2, ..., N_{n+p-1}` at `eta_2, ..., eta_{n+p-1}`.
///
/// Entry `(r, c)` is `N_{c+2}` collocated at `eta_{r+2}`.
#[derive(Debug, Clone)]
pub struct CollocationSystem {
    pub space: BSplineSpace,
    pub order: FractionalOrder,
    pub matrix: DMatrix<f64>,
    pub rhs: Option<DVector<f64>>,
}

impl CollocationSystem {
    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    /// `n^(-alpha) A`.
    pub fn scaled_matrix(&self) -> DMatrix<f64> {
        &self.matrix * (self.space.intervals() as f64).powf(-self.order.alpha())
    }

    pub fn with_rhs(mut self, s: impl Fn(f64) -> f64) -> Self {
        self.rhs = Some(assemble_rhs(&self.space, s));
        self
    }
}

struct Assembler<'a> {
    space: &'a BSplineSpace,
    card: CardinalDerivative,
    n_alpha: f64,
    // lattice[d + size] = phi_p^(alpha)((p+1)/2 + d) for |d| <= size
    lattice: Vec<f64>,
    boundary: Vec<(usize, FractionalPiecewise)>,
    order: &'a FractionalOrder,
}

impl<'a> Assembler<'a> {
    fn new(space: &'a BSplineSpace, order: &'a FractionalOrder) -> Result<Self> {
        order.ensure_riesz()?;
        let p = space.degree();
        let n = space.intervals();
        let size = space.trimmed_dim();
        let card = CardinalDerivative::new(p, order)?;
        let mid = (p + 1) as f64 / 2.0;
        let lattice = (-(size as i64)..=size as i64)
            .map(|d| card.left(mid + d as f64))
            .collect();
        let boundary = (2..=space.dim() - 1)
            .filter(|&j| !space.is_cardinal(j))
            .map(|j| Ok((j, FractionalPiecewise::new(&space.to_piecewise(j)?))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            space,
            card,
            n_alpha: (n as f64).powf(order.alpha()),
            lattice,
            boundary,
            order,
        })
    }

    fn is_regular_row(&self, i: usize) -> bool {
        (self.space.degree()..=self.space.intervals() + 1).contains(&i)
    }

    /// Left and right one-sided derivatives of every trimmed basis function at `eta_i`.
    fn row(&self, i: usize) -> Result<(Vec<f64>, Vec<f64>)> {
        let size = self.space.trimmed_dim();
        let mut left = vec![0.0; size];
        let mut right = vec![0.0; size];
        let regular = self.is_regular_row(i);
        let p = self.space.degree();
        for j in p + 1..=self.space.intervals() {
            let (l, r) = if regular {
                let d = i as i64 - j as i64;
                (
                    self.lattice[(d + size as i64) as usize],
                    self.lattice[(size as i64 - d) as usize],
                )
            } else {
                let t = self.space.cardinal_argument(i, j);
                (self.card.left(t), self.card.right(t))
            };
            left[j - 2] = self.n_alpha * l;
            right[j - 2] = self.n_alpha * r;
        }
        let x = self.space.greville_point(i);
        for (j, f) in &self.boundary {
            left[j - 2] = f.rl_left(self.order, x)?;
            right[j - 2] = f.rl_right(self.order, x)?;
        }
        Ok((left, right))
    }

    fn rows(&self) -> Result<Vec<(Vec<f64>, Vec<f64>)>> {
        (2..self.space.dim())
            .into_par_iter()
            .map(|i| self.row(i))
            .collect()
    }
}

fn from_rows(rows: &[Vec<f64>]) -> DMatrix<f64> {
    let size = rows.len();
    DMatrix::from_fn(size, size, |r, c| rows[r][c])
}

/// The Riesz collocation matrix `A = (A_L + A_R) / (2 cos(pi alpha / 2))`.
pub fn assemble_matrix(space: &BSplineSpace, order: &FractionalOrder) -> Result<CollocationSystem> {
    let rows = Assembler::new(space, order)?.rows()?;
    let pre = order.riesz_prefactor();
    let size = rows.len();
    let matrix = DMatrix::from_fn(size, size, |r, c| pre * (rows[r].0[c] + rows[r].1[c]));
    Ok(CollocationSystem {
        space: space.clone(),
        order: order.clone(),
        matrix,
        rhs: None,
    })
}

/// The one-sided matrices `A_L`, `A_R` (left and right Riemann–Liouville
/// derivatives of the basis at the collocation points, no prefactor).
pub fn assemble_left_right(
    space: &BSplineSpace,
    order: &FractionalOrder,
) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let rows = Assembler::new(space, order)?.rows()?;
    let (left, right): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    Ok((from_rows(&left), from_rows(&right)))
}

/// Symbol coefficients `t_0, ..., t_{count-1}` of the Toeplitz part,
/// `t_k = pre * [phi^(alpha)((p+1)/2 + k) + phi^(alpha)((p+1)/2 - k)]`.
pub fn toeplitz_coefficients(p: usize, order: &FractionalOrder, count: usize) -> Result<Vec<f64>> {
    let card = CardinalDerivative::new(p, order)?;
    let mid = (p + 1) as f64 / 2.0;
    let pre = order.riesz_prefactor();
    Ok((0..count)
        .map(|k| pre * (card.left(mid + k as f64) + card.left(mid - k as f64)))
        .collect())
}

/// `n^(-alpha) A = T + R` with `T` symmetric Toeplitz.
#[derive(Debug, Clone)]
pub struct ToeplitzSplit {
    /// First column `t_0, ..., t_{N-1}` of `T`.
    pub first_column: Vec<f64>,
    pub correction: DMatrix<f64>,
    pub rank_bound: usize,
}

impl ToeplitzSplit {
    pub fn toeplitz(&self) -> DMatrix<f64> {
        let size = self.first_column.len();
        DMatrix::from_fn(size, size, |r, c| self.first_column[r.abs_diff(c)])
    }

    /// Numerical rank of `R` (singular values above `RANK_TOLERANCE * sigma_max`).
    pub fn correction_rank(&self) -> usize {
        numerical_rank(&self.correction, RANK_TOLERANCE)
    }
}

pub fn toeplitz_split(system: &CollocationSystem) -> Result<ToeplitzSplit> {
    let p = system.space.degree();
    let size = system.size();
    let first_column = toeplitz_coefficients(p, &system.order, size)?;
    let scaled = system.scaled_matrix();
    let correction = DMatrix::from_fn(size, size, |r, c| {
        scaled[(r, c)] - first_column[r.abs_diff(c)]
    });
    Ok(ToeplitzSplit {
        first_column,
        correction,
        rank_bound: 4 * (p - 1),
    })
}

pub fn numerical_rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    let sv = m.singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > rel_tol * max).count()
}

/// `b_i = s(eta_{i+1})`, `i = 1..n+p-2`.
pub fn assemble_rhs(space: &BSplineSpace, s: impl Fn(f64) -> f64) -> DVector<f64> {
    DVector::from_iterator(space.trimmed_dim(), space.greville().iter().map(|&x| s(x)))
}

/// Collocation of `gamma u' + rho u`: entries `gamma N_j'(eta_i) + rho N_j(eta_i)`.
pub fn assemble_advection_reaction(
    space: &BSplineSpace,
    gamma: f64,
    rho: f64,
) -> Result<DMatrix<f64>> {
    let size = space.trimmed_dim();
    let mut m = DMatrix::zeros(size, size);
    if gamma == 0.0 && rho == 0.0 {
        return Ok(m);
    }
    for (r, &x) in space.greville().iter().enumerate() {
        for c in 0..size {
            let j = c + 2;
            let mut v = 0.0;
            if rho != 0.0 {
                v += rho * space.eval(j, x)?;
            }
            if gamma != 0.0 {
                v += gamma * space.derivative(j, x, 1)?;
            }
            m[(r, c)] = v;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ord(alpha: f64) -> FractionalOrder {
        FractionalOrder::riesz(alpha).unwrap()
    }

    #[test]
    fn central_diagonal_value() {
        let t = toeplitz_coefficients(2, &ord(1.5), 3).unwrap();
        assert_relative_eq!(
            t[0],
            1.430727453674858035342938218011247496761,
            max_relative = 1e-13
        );
    }

    #[test]
    fn central_entry_scaling() {
        let space = BSplineSpace::new(3, 63).unwrap();
        let o = ord(1.4);
        let sys = assemble_matrix(&space, &o).unwrap();
        let c = CardinalDerivative::new(3, &o).unwrap();
        let expected = 63f64.powf(1.4) * o.riesz_prefactor() * 2.0 * c.left(2.0);
        let i = 30;
        assert_relative_eq!(sys.matrix[(i, i)], expected, max_relative = 1e-13);
    }

    #[test]
    fn interior_block_is_toeplitz() {
        let space = BSplineSpace::new(4, 20).unwrap();
        let sys = assemble_matrix(&space, &ord(1.7)).unwrap();
        let split = toeplitz_split(&sys).unwrap();
        for i in 5..=20 {
            for j in 5..=20 {
                assert!(split.correction[(i - 2, j - 2)].abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn rejects_non_riesz_order() {
        let space = BSplineSpace::new(3, 8).unwrap();
        assert!(assemble_matrix(&space, &FractionalOrder::new(0.5).unwrap()).is_err());
    }

    #[test]
    fn left_matrix_zero_before_support() {
        let space = BSplineSpace::new(3, 16).unwrap();
        let (al, ar) = assemble_left_right(&space, &ord(1.5)).unwrap();
        let knots = space.knots();
        for (r, &x) in space.greville().iter().enumerate() {
            for c in 0..space.trimmed_dim() {
                let j = c + 2;
                if x <= knots.knot(j) {
                    assert_eq!(al[(r, c)], 0.0, "row {r} col {c}");
                }
                if x >= knots.knot(j + 4) {
                    assert_eq!(ar[(r, c)], 0.0, "row {r} col {c}");
                }
            }
        }
    }

    #[test]
    fn reaction_row_sums() {
        let space = BSplineSpace::new(3, 10).unwrap();
        let m = assemble_advection_reaction(&space, 0.0, 1.0).unwrap();
        for (r, &x) in space.greville().iter().enumerate() {
            let removed = space.eval(1, x).unwrap() + space.eval(space.dim(), x).unwrap();
            let s: f64 = m.row(r).iter().sum();
            assert_relative_eq!(s, 1.0 - removed, epsilon = 1e-14);
        }
        assert_eq!(
            assemble_advection_reaction(&space, 0.0, 0.0)
                .unwrap()
                .norm(),
            0.0
        );
    }

    #[test]
    fn rhs_samples_greville_points() {
        let space = BSplineSpace::new(2, 4).unwrap();
        let b = assemble_rhs(&space, |x| 2.0 * x);
        assert_eq!(b.len(), 4);
        for (v, x) in b.iter().zip(space.greville()) {
            assert_eq!(*v, 2.0 * x);
        }
    }
}
