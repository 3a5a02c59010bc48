use crate::error::{Error, Result};

/// Piecewise polynomial over an ordered breakpoint sequence.
///
/// Row `k` holds coefficients in the local monomial basis `(y - b_k)^m`
/// for the interval `[b_k, b_{k+1}]`. Outside `[b_0, b_last]` the function
/// is extended by zero.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePolynomial {
    breakpoints: Vec<f64>,
    coeffs: Vec<Vec<f64>>,
}

impl PiecewisePolynomial {
    pub fn new(breakpoints: Vec<f64>, coeffs: Vec<Vec<f64>>) -> Result<Self> {
        if breakpoints.len() < 2 || coeffs.len() != breakpoints.len() - 1 {
            return Err(Error::Invalid(format!(
                "{} breakpoints need {} coefficient rows, got {}",
                breakpoints.len(),
                breakpoints.len().saturating_sub(1),
                coeffs.len()
            )));
        }
        if !breakpoints.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Invalid(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        Ok(Self {
            breakpoints,
            coeffs,
        })
    }

    /// Single polynomial `sum_m c_m (y - a)^m` on `[a, b]`.
    pub fn single(a: f64, b: f64, coeffs: Vec<f64>) -> Result<Self> {
        Self::new(vec![a, b], vec![coeffs])
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn coeffs(&self) -> &[Vec<f64>] {
        &self.coeffs
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.breakpoints[0], *self.breakpoints.last().unwrap())
    }

    pub fn num_intervals(&self) -> usize {
        self.coeffs.len()
    }

    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .map(|c| c.len())
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    /// Iterate over `(left, right, coefficients)` per interval.
    pub fn pieces(&self) -> impl DoubleEndedIterator<Item = (f64, f64, &[f64])> + '_ {
        self.breakpoints
            .windows(2)
            .zip(&self.coeffs)
            .map(|(w, c)| (w[0], w[1], c.as_slice()))
    }

    fn locate(&self, x: f64) -> Option<usize> {
        let (a, b) = self.domain();
        if x < a || x > b {
            return None;
        }
        let k = self.breakpoints.partition_point(|&t| t <= x);
        Some(k.saturating_sub(1).min(self.num_intervals() - 1))
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self.locate(x) {
            Some(k) => horner(&self.coeffs[k], x - self.breakpoints[k]),
            None => 0.0,
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                if c.len() <= 1 {
                    vec![0.0]
                } else {
                    c.iter()
                        .enumerate()
                        .skip(1)
                        .map(|(m, v)| m as f64 * v)
                        .collect()
                }
            })
            .collect();
        Self {
            breakpoints: self.breakpoints.clone(),
            coeffs,
        }
    }

    /// `g(y) = f(a + b - y)` on the same domain `[a, b]`.
    pub fn reflect(&self) -> Self {
        let (a, b) = self.domain();
        let breakpoints = self.breakpoints.iter().rev().map(|t| a + b - t).collect();
        let coeffs = self
            .pieces()
            .rev()
            .map(|(l, r, c)| {
                // expand about the right end, then flip the sign of odd powers
                let at_right = crate::splines::knots::shift_expansion(c, r - l);
                at_right
                    .iter()
                    .enumerate()
                    .map(|(m, v)| if m % 2 == 1 { -v } else { *v })
                    .collect()
            })
            .collect();
        Self {
            breakpoints,
            coeffs,
        }
    }

    /// `(f(a+), f'(a+))` at the left end of the domain.
    pub fn left_limits(&self) -> (f64, f64) {
        let c = &self.coeffs[0];
        (
            c.first().copied().unwrap_or(0.0),
            c.get(1).copied().unwrap_or(0.0),
        )
    }

    /// `(f(b-), f'(b-))` at the right end of the domain.
    pub fn right_limits(&self) -> (f64, f64) {
        let k = self.num_intervals() - 1;
        let h = self.breakpoints[k + 1] - self.breakpoints[k];
        let c = &self.coeffs[k];
        let d: Vec<f64> = c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, v)| m as f64 * v)
            .collect();
        (horner(c, h), horner(&d, h))
    }
}

pub(crate) fn horner(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, v| acc * t + v)
}
