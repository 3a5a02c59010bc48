use crate::error::{Error, Result};
use crate::splines::PiecewisePolynomial;

pub const MIN_DEGREE: usize = 2;
pub const MAX_DEGREE: usize = 10;
pub const MIN_INTERVALS: usize = 2;
pub const MAX_INTERVALS: usize = 4096;

/// Open uniform knot vector on [0, 1].
///
/// Knots use the 1-based numbering `xi_1, ..., xi_{2p+n+1}`: the first and
/// last `p + 1` knots are clamped to 0 and 1, and `xi_{i+p+1} = i / n`.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotVector {
    degree: usize,
    intervals: usize,
    knots: Vec<f64>,
}

impl KnotVector {
    pub fn uniform(degree: usize, intervals: usize) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&degree) {
            return Err(Error::Degree(degree));
        }
        if !(MIN_INTERVALS..=MAX_INTERVALS).contains(&intervals) {
            return Err(Error::MeshSize(intervals));
        }
        let len = 2 * degree + intervals + 1;
        let knots = (1..=len)
            .map(|i| numerator(degree, intervals, i) as f64 / intervals as f64)
            .collect();
        Ok(Self {
            degree,
            intervals,
            knots,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn intervals(&self) -> usize {
        self.intervals
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.knots
    }

    /// Knot `xi_i`, 1-based.
    pub fn knot(&self, i: usize) -> f64 {
        self.knots[i - 1]
    }

    /// Integer `k` with `xi_i = k / n`.
    pub fn numerator(&self, i: usize) -> usize {
        numerator(self.degree, self.intervals, i)
    }

    fn len(&self) -> usize {
        self.knots.len()
    }
}

fn numerator(degree: usize, intervals: usize, i: usize) -> usize {
    (i as isize - degree as isize - 1).clamp(0, intervals as isize) as usize
}

/// Spline space of degree `p` on `n` uniform intervals together with its
/// Greville abscissae.
///
/// The full basis is `N_1, ..., N_{n+p}`; the collocation (trimmed) space
/// drops `N_1` and `N_{n+p}`, keeping the `n + p - 2` functions that vanish
/// at both ends of [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct BSplineSpace {
    knots: KnotVector,
    // sum of knot numerators xi_{i+1} .. xi_{i+p}, i = 2..n+p-1
    greville_sums: Vec<usize>,
    greville: Vec<f64>,
}

impl BSplineSpace {
    pub fn new(degree: usize, intervals: usize) -> Result<Self> {
        let knots = KnotVector::uniform(degree, intervals)?;
        let greville_sums: Vec<usize> = (2..=intervals + degree - 1)
            .map(|i| (i + 1..=i + degree).map(|k| knots.numerator(k)).sum())
            .collect();
        let scale = (degree * intervals) as f64;
        let greville = greville_sums.iter().map(|&s| s as f64 / scale).collect();
        Ok(Self {
            knots,
            greville_sums,
            greville,
        })
    }

    pub fn degree(&self) -> usize {
        self.knots.degree
    }

    pub fn intervals(&self) -> usize {
        self.knots.intervals
    }

    pub fn knots(&self) -> &KnotVector {
        &self.knots
    }

    /// Dimension `n + p` of the full basis.
    pub fn dim(&self) -> usize {
        self.intervals() + self.degree()
    }

    /// Dimension `n + p - 2` of the trimmed collocation space.
    pub fn trimmed_dim(&self) -> usize {
        self.dim() - 2
    }

    /// Greville abscissae `eta_2, ..., eta_{n+p-1}` (the collocation points).
    pub fn greville(&self) -> &[f64] {
        &self.greville
    }

    /// Greville abscissa `eta_i`, `2 <= i <= n + p - 1`.
    pub fn greville_point(&self, i: usize) -> f64 {
        self.greville[i - 2]
    }

    /// Whether `N_i` is a shifted, scaled copy of the cardinal B-spline.
    pub fn is_cardinal(&self, i: usize) -> bool {
        (self.degree() + 1..=self.intervals()).contains(&i)
    }

    /// Argument `n * eta_row - j + p + 1` of the cardinal B-spline that
    /// represents `N_j` when evaluated at the Greville point `eta_row`.
    ///
    /// Computed from integer knot numerators so that interior rows land
    /// exactly on the (half-)integer lattice.
    pub fn cardinal_argument(&self, row: usize, j: usize) -> f64 {
        let p = self.degree() as i64;
        let num = self.greville_sums[row - 2] as i64 + p * (p + 1 - j as i64);
        num as f64 / p as f64
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.dim() {
            Err(Error::BasisIndex {
                index: i,
                dim: self.dim(),
            })
        } else {
            Ok(())
        }
    }

    fn check_point(x: f64) -> Result<()> {
        if (0.0..=1.0).contains(&x) {
            Ok(())
        } else {
            Err(Error::Domain(x))
        }
    }

    /// Value of `N_i^p(x)` by the Cox–de Boor recurrence.
    pub fn eval(&self, i: usize, x: f64) -> Result<f64> {
        self.check_index(i)?;
        Self::check_point(x)?;
        Ok(self.basis(i, self.degree(), x))
    }

    /// Derivative of order `order` of `N_i^p` at `x`, obtained by applying
    /// the degree-lowering differentiation formula recursively.
    pub fn derivative(&self, i: usize, x: f64, order: usize) -> Result<f64> {
        self.check_index(i)?;
        Self::check_point(x)?;
        if order > self.degree() {
            return Err(Error::DerivativeOrder {
                order,
                degree: self.degree(),
            });
        }
        Ok(self.basis_derivative(i, self.degree(), x, order))
    }

    /// Sum of all basis functions weighted by `coeffs`, where `coeffs[k]`
    /// multiplies `N_{first + k}`.
    pub fn combination(&self, first: usize, coeffs: &[f64], x: f64) -> f64 {
        let p = self.degree();
        let n = self.intervals();
        // nonzero functions at x are N_{s-p}..N_s with s the span index
        let k = ((x * n as f64).floor() as usize).min(n - 1);
        let span = k + p + 1;
        (span - p..=span)
            .filter(|&j| j >= first && j < first + coeffs.len())
            .map(|j| coeffs[j - first] * self.basis(j, p, x))
            .sum()
    }

    /// Exact polynomial pieces of `N_i^p` on every mesh interval of [0, 1]
    /// (zero rows outside the support).
    pub fn to_piecewise(&self, i: usize) -> Result<PiecewisePolynomial> {
        self.check_index(i)?;
        let p = self.degree();
        let n = self.intervals();
        let h = 1.0 / n as f64;
        let first = self.knots.numerator(i);
        let last = self.knots.numerator(i + p + 1);
        let breakpoints: Vec<f64> = (0..=n).map(|k| k as f64 / n as f64).collect();
        let mut factorial = vec![1.0; p + 1];
        for r in 1..=p {
            factorial[r] = factorial[r - 1] * r as f64;
        }
        let coeffs = (0..n)
            .map(|k| {
                if k < first || k >= last {
                    return vec![0.0; p + 1];
                }
                let mid = (k as f64 + 0.5) * h;
                let taylor: Vec<f64> = (0..=p)
                    .map(|r| self.basis_derivative(i, p, mid, r) / factorial[r])
                    .collect();
                shift_expansion(&taylor, -0.5 * h)
            })
            .collect();
        PiecewisePolynomial::new(breakpoints, coeffs)
    }

    fn degree_zero(&self, i: usize, x: f64) -> f64 {
        let lo = self.knots.knot(i);
        let hi = self.knots.knot(i + 1);
        if lo < hi && ((lo <= x && x < hi) || (x == 1.0 && hi == 1.0)) {
            1.0
        } else {
            0.0
        }
    }

    /// `N_i^k(x)` on this knot vector for any `k <= p`.
    fn basis(&self, i: usize, k: usize, x: f64) -> f64 {
        let t = &self.knots;
        if i + k + 1 > t.len() {
            return 0.0;
        }
        let mut values: Vec<f64> = (0..=k).map(|m| self.degree_zero(i + m, x)).collect();
        for d in 1..=k {
            for m in 0..=k - d {
                let j = i + m;
                let mut v = 0.0;
                let left = t.knot(j + d) - t.knot(j);
                if left > 0.0 {
                    v += (x - t.knot(j)) / left * values[m];
                }
                let right = t.knot(j + d + 1) - t.knot(j + 1);
                if right > 0.0 {
                    v += (t.knot(j + d + 1) - x) / right * values[m + 1];
                }
                values[m] = v;
            }
        }
        values[0]
    }

    fn basis_derivative(&self, i: usize, k: usize, x: f64, order: usize) -> f64 {
        if order == 0 {
            return self.basis(i, k, x);
        }
        let t = &self.knots;
        let mut v = 0.0;
        let left = t.knot(i + k) - t.knot(i);
        if left > 0.0 {
            v += self.basis_derivative(i, k - 1, x, order - 1) / left;
        }
        let right = t.knot(i + k + 1) - t.knot(i + 1);
        if right > 0.0 {
            v -= self.basis_derivative(i + 1, k - 1, x, order - 1) / right;
        }
        k as f64 * v
    }
}

/// Re-expand `sum_r c_r s^r` in powers of `t = s - shift`.
pub(crate) fn shift_expansion(coeffs: &[f64], shift: f64) -> Vec<f64> {
    // sum_r c_r (t + shift)^r, Horner-style synthetic division
    let mut out = coeffs.to_vec();
    let deg = out.len();
    for start in 0..deg {
        for r in (start..deg - 1).rev() {
            out[r] += shift * out[r + 1];
        }
    }
    out
}
