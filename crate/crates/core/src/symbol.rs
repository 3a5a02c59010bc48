//! The spectral symbol `f^{p,alpha}` of the Toeplitz family and its bounds.
//!
//! The lattice sum over `l` is evaluated as
//! `|theta|^alpha sinc(theta/2)^{p+1} + (2 sin(theta/2))^{p+1} S(theta)`,
//! where `S` is summed explicitly for `1 <= k <= L` and the remainder is
//! expressed through Hurwitz zeta values.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::Serialize;

use crate::assembly::toeplitz_coefficients;
use crate::error::{Error, Result};
use crate::fracderiv::FractionalOrder;
use crate::special::{hurwitz_zeta, sinc};
use crate::splines::{MAX_DEGREE, MIN_DEGREE};

pub const MIN_TRUNCATION: usize = 16;

/// Evaluator for `f^{p,alpha}` on `[0, pi]`.
#[derive(Debug)]
pub struct SymbolEvaluator {
    p: usize,
    alpha: f64,
    truncation: usize,
    max: OnceLock<(f64, f64)>,
}

impl Clone for SymbolEvaluator {
    fn clone(&self) -> Self {
        let max = OnceLock::new();
        if let Some(m) = self.max.get() {
            let _ = max.set(*m);
        }
        Self {
            p: self.p,
            alpha: self.alpha,
            truncation: self.truncation,
            max,
        }
    }
}

/// One symbol value with the bound on what was left out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolValue {
    pub value: f64,
    pub tail_bound: f64,
}

impl SymbolEvaluator {
    pub fn new(p: usize, alpha: f64) -> Result<Self> {
        Self::with_truncation(p, alpha, MIN_TRUNCATION)
    }

    /// `truncation` explicit terms per side (rounded up to an even count).
    pub fn with_truncation(p: usize, alpha: f64, truncation: usize) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&p) {
            return Err(Error::Degree(p));
        }
        if !(0.0..=2.0).contains(&alpha) {
            return Err(Error::FractionalOrder(alpha));
        }
        if alpha >= p as f64 {
            return Err(Error::OrderNotBelowDegree { alpha, degree: p });
        }
        let truncation = truncation.max(MIN_TRUNCATION).next_multiple_of(2);
        Ok(Self {
            p,
            alpha,
            truncation,
            max: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn eval(&self, theta: f64) -> Result<f64> {
        Ok(self.eval_certified(theta)?.value)
    }

    pub fn eval_certified(&self, theta: f64) -> Result<SymbolValue> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::Angle(theta));
        }
        let q = self.p + 1;
        let main = theta.powf(self.alpha) * sinc(theta / 2.0).powi(q as i32);
        if theta == 0.0 {
            return Ok(SymbolValue {
                value: main,
                tail_bound: 0.0,
            });
        }
        let (s, tail) = self.lattice_remainder(theta);
        let factor = (2.0 * (theta / 2.0).sin()).powi(q as i32);
        Ok(SymbolValue {
            value: main + factor * s,
            tail_bound: factor * tail,
        })
    }

    /// `S(theta)` and the bound on its Euler–Maclaurin error.
    fn lattice_remainder(&self, theta: f64) -> (f64, f64) {
        let q = self.p + 1;
        let sigma = q as f64 - self.alpha;
        let two_pi = 2.0 * PI;
        let big_l = self.truncation;
        let scale = two_pi.powf(-sigma);
        let c = theta / two_pi;
        if q % 2 == 0 {
            let explicit: f64 = (1..=big_l)
                .map(|k| {
                    let kp = two_pi * k as f64;
                    (kp + theta).powf(-sigma) + (kp - theta).powf(-sigma)
                })
                .sum();
            let (z1, e1) = hurwitz_zeta(sigma, big_l as f64 + 1.0 + c);
            let (z2, e2) = hurwitz_zeta(sigma, big_l as f64 + 1.0 - c);
            (explicit + scale * (z1 + z2), scale * (e1 + e2))
        } else {
            let explicit = r_partial(sigma, theta, big_l);
            let a = |c: f64| {
                let lf = big_l as f64;
                let (z1, e1) = hurwitz_zeta(sigma, (lf + 2.0 + c) / 2.0);
                let (z2, e2) = hurwitz_zeta(sigma, (lf + 1.0 + c) / 2.0);
                let w = 2f64.powf(-sigma);
                (w * (z1 - z2), w * (e1 + e2))
            };
            let (ap, ep) = a(c);
            let (am, em) = a(-c);
            (explicit + scale * (ap - am), scale * (ep + em))
        }
    }

    /// `(argmax, max)` of `f` on `[0, pi]`: a 10^4-point scan refined by
    /// golden-section search.
    pub fn max(&self) -> (f64, f64) {
        *self.max.get_or_init(|| {
            let m = 10_000;
            let f = |t: f64| self.eval(t).unwrap_or(f64::NEG_INFINITY);
            let (k, _) = (0..=m).map(|k| (k, f(PI * k as f64 / m as f64))).fold(
                (0, f64::NEG_INFINITY),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
            let h = PI / m as f64;
            let mut lo = (k as f64 - 1.0).max(0.0) * h;
            let mut hi = ((k as f64 + 1.0) * h).min(PI);
            let g = (5f64.sqrt() - 1.0) / 2.0;
            for _ in 0..80 {
                let a = hi - g * (hi - lo);
                let b = lo + g * (hi - lo);
                if f(a) < f(b) {
                    lo = a;
                } else {
                    hi = b;
                }
            }
            let mid = 0.5 * (lo + hi);
            let grid_best = f(k as f64 * h);
            if f(mid) >= grid_best {
                (mid, f(mid))
            } else {
                (k as f64 * h, grid_best)
            }
        })
    }

    /// `f / max f`.
    pub fn normalized(&self, theta: f64) -> Result<f64> {
        Ok(self.eval(theta)? / self.max().1)
    }
}

/// `f^{p,alpha}(theta)`.
pub fn symbol_eval(ev: &SymbolEvaluator, theta: f64) -> Result<f64> {
    ev.eval(theta)
}

// sum_{k=1}^{L} (-1)^k [(2k pi + theta)^-s - (2k pi - theta)^-s]
fn r_partial(sigma: f64, theta: f64, terms: usize) -> f64 {
    (1..=terms)
        .map(|k| {
            let kp = 2.0 * PI * k as f64;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * ((kp + theta).powf(-sigma) - (kp - theta).powf(-sigma))
        })
        .sum()
}

/// `r^{p,alpha}(theta) = sum_{k>=1} (-1)^k [(2k pi + theta)^-(p+1-alpha) - (2k pi - theta)^-(p+1-alpha)]`.
pub fn r_series(p: usize, alpha: f64, theta: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::Angle(theta));
    }
    let sigma = p as f64 + 1.0 - alpha;
    if sigma <= 1.0 {
        return Err(Error::OrderNotBelowDegree { alpha, degree: p });
    }
    let big_l = 2 * MIN_TRUNCATION;
    let two_pi = 2.0 * PI;
    let c = theta / two_pi;
    let a = |c: f64| {
        let lf = big_l as f64;
        2f64.powf(-sigma)
            * (hurwitz_zeta(sigma, (lf + 2.0 + c) / 2.0).0
                - hurwitz_zeta(sigma, (lf + 1.0 + c) / 2.0).0)
    };
    Ok(r_partial(sigma, theta, big_l) + two_pi.powf(-sigma) * (a(c) - a(-c)))
}

/// `f` from the Toeplitz coefficients `t_k`:
/// `[d_0 + 2 sum_{k=1}^{K} d_k cos(k theta)] / (2 - 2 cos theta)` with the
/// second differences `d_k = 2 t_k - t_{k-1} - t_{k+1}`, `0 < theta <= pi`.
pub struct FourierSymbol {
    d: Vec<f64>,
}

impl FourierSymbol {
    pub fn new(p: usize, order: &FractionalOrder, terms: usize) -> Result<Self> {
        let t = toeplitz_coefficients(p, order, terms + 2)?;
        let d = (0..=terms)
            .map(|k| {
                let prev = if k == 0 { t[1] } else { t[k - 1] };
                2.0 * t[k] - prev - t[k + 1]
            })
            .collect();
        Ok(Self { d })
    }

    pub fn eval(&self, theta: f64) -> f64 {
        // Clenshaw-free direct sum with a cosine recurrence
        let (s1, c1) = theta.sin_cos();
        let (mut s, mut c) = (s1, c1);
        let mut total = self.d[0];
        for dk in &self.d[1..] {
            total += 2.0 * dk * c;
            let next_c = c * c1 - s * s1;
            s = s * c1 + c * s1;
            c = next_c;
        }
        total / (2.0 - 2.0 * theta.cos())
    }
}

/// Least-squares slope of `log f` against `log theta` on `[1e-4, 1e-2]`.
pub fn zero_order_fit(ev: &SymbolEvaluator) -> Result<f64> {
    let m = 41;
    let pts = (0..m)
        .map(|k| {
            let lt = (1e-4f64).ln() + (100f64).ln() * k as f64 / (m - 1) as f64;
            Ok((lt, ev.eval(lt.exp())?.ln()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m as f64;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m as f64;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichReport {
    pub lower_bound_holds: bool,
    pub min_lower_gap: f64,
    /// `max (f - lower) / sin(theta/2)^{p+1}` on the given grid.
    pub empirical_constant: f64,
    /// Same quantity on a grid with twice the resolution.
    pub refined_constant: f64,
    pub grid_stable: bool,
}

/// Lower bound `|theta|^alpha sinc(theta/2)^{p+1} <= f` and the empirical
/// upper-bound constant.
pub fn sandwich_check(ev: &SymbolEvaluator, grid: &[f64]) -> Result<SandwichReport> {
    let q = ev.degree() as i32 + 1;
    let probe = |theta: f64| -> Result<(f64, f64)> {
        let f = ev.eval(theta)?;
        let lower = theta.powf(ev.alpha()) * sinc(theta / 2.0).powi(q);
        let s = (theta / 2.0).sin().powi(q);
        Ok((f - lower, if s > 0.0 { (f - lower) / s } else { 0.0 }))
    };
    let mut min_gap = f64::INFINITY;
    let mut constant = 0.0f64;
    for &t in grid {
        let (gap, c) = probe(t)?;
        min_gap = min_gap.min(gap);
        constant = constant.max(c);
    }
    let mut refined = constant;
    for w in grid.windows(2) {
        let (_, c) = probe(0.5 * (w[0] + w[1]))?;
        refined = refined.max(c);
    }
    let tol = 1e-13;
    Ok(SandwichReport {
        lower_bound_holds: min_gap >= -tol,
        min_lower_gap: min_gap,
        empirical_constant: constant,
        refined_constant: refined,
        grid_stable: constant.is_finite()
            && (refined - constant) <= 1e-3 * constant.abs().max(1e-300),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayReport {
    /// `f(pi) / f(pi/2)`.
    pub ratio: f64,
    /// `f(pi) / max f`.
    pub normalized_ratio: f64,
    /// `2^{(2 alpha + 1 - p) / 2}`.
    pub bound: f64,
    pub holds: bool,
}

pub fn decay_bound(p: usize, alpha: f64) -> f64 {
    2f64.powf((2.0 * alpha + 1.0 - p as f64) / 2.0)
}

pub fn decay_ratio_check(ev: &SymbolEvaluator) -> Result<DecayReport> {
    let at_pi = ev.eval(PI)?;
    let ratio = at_pi / ev.eval(PI / 2.0)?;
    let normalized_ratio = at_pi / ev.max().1;
    let bound = decay_bound(ev.degree(), ev.alpha());
    Ok(DecayReport {
        ratio,
        normalized_ratio,
        bound,
        holds: normalized_ratio <= ratio * (1.0 + 1e-12) && ratio <= bound * (1.0 + 1e-12),
    })
}

/// `f^{p,0} <= f^{p,alpha} <= f^{p,2}` on a grid inside `[1, pi]`, `p` odd.
pub fn odd_degree_bound_check(p: usize, alpha: f64, grid: &[f64]) -> Result<bool> {
    if p % 2 == 0 {
        return Err(Error::Invalid(format!(
            "odd-degree bound needs odd p, got {p}"
        )));
    }
    if let Some(t) = grid.iter().find(|t| !(1.0..=PI).contains(*t)) {
        return Err(Error::Angle(*t));
    }
    let f0 = SymbolEvaluator::new(p, 0.0)?;
    let fa = SymbolEvaluator::new(p, alpha)?;
    let f2 = SymbolEvaluator::new(p, 2.0)?;
    for &t in grid {
        let (lo, mid, hi) = (f0.eval(t)?, fa.eval(t)?, f2.eval(t)?);
        let tol = 1e-14 * hi.abs().max(lo.abs());
        if mid < lo - tol || mid > hi + tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `a = (pi^4 / 48)^{1/alpha}`.
pub fn even_bound_threshold(alpha: f64) -> f64 {
    (PI.powi(4) / 48.0).powf(1.0 / alpha)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvenBoundReport {
    pub threshold: f64,
    /// `f^{p,0} <= f^{p,alpha}` on `[a, pi]`.
    pub holds_above_threshold: bool,
    /// The same inequality on `[1, a]`, which the proof does not cover.
    pub holds_between_one_and_threshold: bool,
    pub min_gap_above: f64,
    pub min_gap_between: f64,
}

/// `f^{p,0} <= f^{p,alpha}` on `points` uniform samples of `[a, pi]`, and
/// on `[1, a]`, `p` even.
pub fn even_degree_bound_check(p: usize, alpha: f64, points: usize) -> Result<EvenBoundReport> {
    if p % 2 == 1 {
        return Err(Error::Invalid(format!(
            "even-degree bound needs even p, got {p}"
        )));
    }
    let f0 = SymbolEvaluator::new(p, 0.0)?;
    let fa = SymbolEvaluator::new(p, alpha)?;
    let a = even_bound_threshold(alpha);
    let points = points.max(2);
    let min_gap = |lo: f64, hi: f64| -> Result<f64> {
        let mut m = f64::INFINITY;
        for k in 0..points {
            let t = lo + (hi - lo) * k as f64 / (points - 1) as f64;
            let g = fa.eval(t)? - f0.eval(t)?;
            m = m.min(g / f0.eval(t)?.max(f64::MIN_POSITIVE));
        }
        Ok(m)
    };
    let above = min_gap(a.min(PI), PI)?;
    let between = if a > 1.0 {
        min_gap(1.0, a.min(PI))?
    } else {
        f64::INFINITY
    };
    Ok(EvenBoundReport {
        threshold: a,
        holds_above_threshold: above >= -1e-12,
        holds_between_one_and_threshold: between >= -1e-12,
        min_gap_above: above,
        min_gap_between: between,
    })
}

/// Uniform grid of `points` angles on `[lo, hi]`.
pub fn uniform_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => vec![],
        1 => vec![lo],
        _ => (0..points)
            .map(|k| lo + (hi - lo) * k as f64 / (points - 1) as f64)
            .collect(),
    }
}
