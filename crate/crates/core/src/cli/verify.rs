//! Randomized invariant suite behind `fracolloc verify`.

use std::f64::consts::PI;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::SCHEMA_VERSION;
use crate::assembly::{
    assemble_left_right, assemble_matrix, toeplitz_coefficients, toeplitz_split, CollocationSystem,
};
use crate::error::{Error, Result};
use crate::fracderiv::{
    adaptive_gauss, caputo_left_piecewise, caputo_right_piecewise, gauss_jacobi_oracle,
    inner_product_check, left_rl_cardinal, right_rl_cardinal, rl_by_quadrature, rl_left_piecewise,
    rl_right_piecewise, CardinalDerivative, FractionalOrder, FractionalPiecewise,
};
use crate::manufactured::{convergence_study, order_model, riesz_rhs, solve, ManufacturedSolution};
use crate::special::{binomial, gamma, sinc};
use crate::spectra::{
    compare_to_symbol, eig_general, eig_symmetric, spectrum_comparison, symmetric_eigen,
};
use crate::splines::{cardinal_bspline, cardinal_piecewise, BSplineSpace, PiecewisePolynomial};
use crate::symbol::{
    decay_bound, decay_ratio_check, even_degree_bound_check, odd_degree_bound_check, r_series,
    sandwich_check, uniform_grid, zero_order_fit, FourierSymbol, SymbolEvaluator,
};

const ALPHAS: [f64; 3] = [1.2, 1.5, 1.8];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Splines,
    Fracderiv,
    Symbol,
    Assembly,
    Spectra,
    Manufactured,
    All,
}

impl Suite {
    const PARTS: [Suite; 6] = [
        Suite::Splines,
        Suite::Fracderiv,
        Suite::Symbol,
        Suite::Assembly,
        Suite::Spectra,
        Suite::Manufactured,
    ];

    fn name(self) -> &'static str {
        match self {
            Suite::Splines => "splines",
            Suite::Fracderiv => "fracderiv",
            Suite::Symbol => "symbol",
            Suite::Assembly => "assembly",
            Suite::Spectra => "spectra",
            Suite::Manufactured => "manufactured",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::PARTS
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    /// Worst measured deviation (or violation count).
    pub measured: f64,
    /// Largest accepted value of `measured`.
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub suite: Suite,
    pub seed: u64,
    pub total: usize,
    pub failed: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

struct Recorder {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Recorder {
    fn at_most(&mut self, name: impl Into<String>, measured: f64, tolerance: f64) {
        let passed = measured.is_finite() && measured <= tolerance;
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            measured,
            tolerance,
            passed,
        });
    }

    fn violations(&mut self, name: impl Into<String>, count: usize) {
        self.at_most(name, count as f64, 0.0);
    }
}

/// Runs the invariants of `suite` with randomized samples drawn from `seed`.
pub fn cmd_verify(suite: Suite, seed: u64) -> Result<VerifyReport> {
    let parts: Vec<Suite> = if suite == Suite::All {
        Suite::PARTS.to_vec()
    } else {
        vec![suite]
    };
    let mut checks = Vec::new();
    for part in parts {
        // each part has its own stream so that suites are reproducible alone
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ (part as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let mut rec = Recorder {
            suite: part.name(),
            checks: Vec::new(),
        };
        match part {
            Suite::Splines => splines(&mut rec, &mut rng)?,
            Suite::Fracderiv => fracderiv(&mut rec, &mut rng)?,
            Suite::Symbol => symbol(&mut rec)?,
            Suite::Assembly => assembly(&mut rec, &mut rng)?,
            Suite::Spectra => spectra(&mut rec)?,
            Suite::Manufactured => manufactured(&mut rec, &mut rng)?,
            Suite::All => unreachable!(),
        }
        checks.extend(rec.checks);
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        suite,
        seed,
        total: checks.len(),
        failed,
        passed: failed == 0,
        checks,
    })
}

fn max_abs(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().map(f64::abs).fold(0.0, f64::max)
}

fn splines(rec: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut bad = 0;
    for (p, n) in [(2, 2), (3, 7), (5, 16), (10, 64)] {
        let space = BSplineSpace::new(p, n)?;
        let k = space.knots();
        bad += (1..=p + 1).filter(|&i| k.knot(i) != 0.0).count();
        bad += (p + n + 1..=2 * p + n + 1)
            .filter(|&i| k.knot(i) != 1.0)
            .count();
        bad += (0..=n)
            .filter(|&i| k.knot(i + p + 1) != i as f64 / n as f64)
            .count();
        bad += k.as_slice().windows(2).filter(|w| w[0] > w[1]).count();
    }
    rec.violations("knots: clamped ends, interior i/n, non-decreasing", bad);

    let (mut order_bad, mut formula) = (0, 0.0f64);
    for p in 2..=8 {
        for n in [4, 16, 64] {
            let space = BSplineSpace::new(p, n)?;
            let g = space.greville();
            order_bad += g.windows(2).filter(|w| w[0] >= w[1]).count();
            order_bad += g.iter().filter(|x| !(**x > 0.0 && **x < 1.0)).count();
            order_bad += usize::from(g.len() != n + p - 2);
            for i in p + 1..=n {
                let expected = i as f64 / n as f64 - (p + 1) as f64 / (2 * n) as f64;
                formula = formula.max((space.greville_point(i) - expected).abs());
            }
        }
    }
    rec.violations("greville: increasing inside (0,1), n+p-2 points", order_bad);
    rec.at_most("greville: interior points i/n - (p+1)/(2n)", formula, 1e-15);

    for p in 2..=8 {
        let mut worst = 0.0f64;
        for n in [4, 16, 64] {
            let space = BSplineSpace::new(p, n)?;
            for _ in 0..200 {
                let x: f64 = rng.random();
                let s: f64 = (1..=space.dim())
                    .map(|i| space.eval(i, x))
                    .sum::<Result<f64>>()?;
                worst = worst.max((s - 1.0).abs());
            }
        }
        rec.at_most(format!("partition of unity p={p}"), worst, 1e-13);
    }

    let mut leak = 0.0f64;
    for p in 2..=6 {
        let space = BSplineSpace::new(p, 16)?;
        let k = space.knots();
        for i in 1..=space.dim() {
            for x in [k.knot(i) - 1e-9, k.knot(i + p + 1) + 1e-9] {
                if (0.0..=1.0).contains(&x) {
                    leak = leak.max(space.eval(i, x)?.abs());
                }
            }
        }
    }
    rec.at_most(
        "local support: zero just outside [xi_i, xi_{i+p+1}]",
        leak,
        0.0,
    );

    for p in [2, 4, 7] {
        let space = BSplineSpace::new(p, 8)?;
        let pieces = (1..=space.dim())
            .map(|i| space.to_piecewise(i))
            .collect::<Result<Vec<_>>>()?;
        let mut worst = 0.0f64;
        for _ in 0..1000 {
            let x: f64 = rng.random();
            let i = rng.random_range(1..=space.dim());
            worst = worst.max((pieces[i - 1].eval(x) - space.eval(i, x)?).abs());
        }
        rec.at_most(
            format!("piecewise form agrees with recurrence p={p}"),
            worst,
            1e-13,
        );
    }

    let mut worst = 0.0f64;
    for p in 2..=6 {
        let n = 16;
        let space = BSplineSpace::new(p, n)?;
        for _ in 0..500 {
            let x: f64 = rng.random();
            for i in p + 1..=n {
                let c = cardinal_bspline(p, n as f64 * x - i as f64 + p as f64 + 1.0);
                worst = worst.max((space.eval(i, x)? - c).abs());
            }
        }
    }
    rec.at_most("interior basis is a scaled cardinal B-spline", worst, 1e-13);

    for p in 2..=6 {
        let n = 16;
        let space = BSplineSpace::new(p, n)?;
        let bound = 4.0 * (p * (p - 1) * n * n) as f64;
        let mut ratio = 0.0f64;
        for x in uniform_grid(0.0, 1.0, 2000) {
            for i in 1..=space.dim() {
                ratio = ratio.max(space.derivative(i, x, 2)?.abs() / bound);
            }
        }
        rec.at_most(
            format!("second derivative below 4p(p-1)n^2 p={p}"),
            ratio,
            1.0,
        );
    }

    let space = BSplineSpace::new(3, 8)?;
    let mut worst = 0.0f64;
    for i in 1..=space.dim() {
        let d = |x: f64| space.derivative(i, x, 1).unwrap_or(f64::NAN);
        let integral: f64 = (0..8)
            .map(|k| adaptive_gauss(&d, k as f64 / 8.0, (k + 1) as f64 / 8.0, 1e-15))
            .sum();
        worst = worst.max((integral - (space.eval(i, 1.0)? - space.eval(i, 0.0)?)).abs());
    }
    rec.at_most(
        "integral of the derivative equals the end values",
        worst,
        1e-13,
    );

    let mut worst = 0.0f64;
    for p in 0..=8 {
        let mid = (p + 1) as f64 / 2.0;
        for _ in 0..50 {
            let s = rng.random_range(0.0..mid + 1.0);
            worst = worst.max((cardinal_bspline(p, mid + s) - cardinal_bspline(p, mid - s)).abs());
        }
    }
    rec.at_most(
        "cardinal B-spline symmetric about its midpoint",
        worst,
        1e-14,
    );

    let s24 = BSplineSpace::new(2, 4)?;
    let s38 = BSplineSpace::new(3, 8)?;
    let boundary: f64 = (2..=10).map(|i| s38.eval(i, 0.0)).sum::<Result<f64>>()?;
    let errs = [
        cardinal_bspline(0, 0.5) - 1.0,
        cardinal_bspline(2, 1.5) - 0.75,
        s24.eval(4, 0.5)? - 0.5,
        s24.derivative(2, 0.0, 1)? - 8.0,
        s24.greville_point(2) - 0.125,
        boundary,
        s38.eval(s38.dim(), 1.0)? - 1.0,
    ];
    rec.at_most("hand-computed basis values", max_abs(errs), 1e-14);
    Ok(())
}

/// `y^q` on `pieces` equal intervals of `[0, 1]`.
fn monomial(q: usize, pieces: usize) -> Result<PiecewisePolynomial> {
    let bps: Vec<f64> = (0..=pieces).map(|k| k as f64 / pieces as f64).collect();
    let coeffs = bps[..pieces]
        .iter()
        .map(|&l| {
            (0..=q)
                .map(|m| binomial(q, m) * l.powi((q - m) as i32))
                .collect()
        })
        .collect();
    PiecewisePolynomial::new(bps, coeffs)
}

/// A random `f = sum b_q y^q + sum a_kq (y - tau_k)_+^q`, `q >= 2`, in both
/// truncated-power form and piecewise form.
struct TruncatedPowers {
    terms: Vec<(f64, usize, f64)>,
    piecewise: PiecewisePolynomial,
}

impl TruncatedPowers {
    fn random(rng: &mut ChaCha8Rng) -> Result<Self> {
        let degree = rng.random_range(2..=6);
        let mut taus: Vec<f64> = (0..rng.random_range(1..=4))
            .map(|_| rng.random_range(0.05..0.95))
            .collect();
        taus.sort_by(f64::total_cmp);
        let mut terms = Vec::new();
        for tau in std::iter::once(0.0).chain(taus.iter().copied()) {
            for q in 2..=degree {
                terms.push((tau, q, rng.random_range(-1.0..1.0)));
            }
        }
        let bps: Vec<f64> = std::iter::once(0.0).chain(taus).chain([1.0]).collect();
        let coeffs = bps[..bps.len() - 1]
            .iter()
            .map(|&l| {
                let mut c = vec![0.0; degree + 1];
                for &(tau, q, w) in terms.iter().filter(|t| t.0 <= l) {
                    for (m, cm) in c.iter_mut().enumerate().take(q + 1) {
                        *cm += w * binomial(q, m) * (l - tau).powi((q - m) as i32);
                    }
                }
                c
            })
            .collect();
        Ok(Self {
            terms,
            piecewise: PiecewisePolynomial::new(bps, coeffs)?,
        })
    }

    /// Left Riemann–Liouville derivative from the power rule on each term.
    fn rl_left(&self, alpha: f64, x: f64) -> f64 {
        self.terms
            .iter()
            .filter(|t| x > t.0)
            .map(|&(tau, q, w)| {
                w * gamma(q as f64 + 1.0) / gamma(q as f64 + 1.0 - alpha)
                    * (x - tau).powf(q as f64 - alpha)
            })
            .sum()
    }
}

fn fracderiv(rec: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    for alpha in ALPHAS {
        let order = FractionalOrder::new(alpha)?;
        let mut worst = 0.0f64;
        for q in 0..=8 {
            let f = monomial(q, 5)?;
            let c = gamma(q as f64 + 1.0) / gamma(q as f64 + 1.0 - alpha);
            for _ in 0..50 {
                let x: f64 = rng.random_range(0.01..1.0);
                let exact = c * x.powf(q as f64 - alpha);
                worst = worst.max(((rl_left_piecewise(&f, &order, x)? - exact) / exact).abs());
            }
        }
        rec.at_most(
            format!("power rule for y^q, q<=8, alpha={alpha}"),
            worst,
            1e-11,
        );
    }

    let mut mismatched = 0;
    for p in 2..=6 {
        for alpha in ALPHAS {
            let order = FractionalOrder::new(alpha)?;
            for _ in 0..20 {
                let t = rng.random_range(-1.0..p as f64 + 8.0);
                let r = right_rl_cardinal(p, &order, t)?;
                mismatched += usize::from(
                    r.to_bits() != left_rl_cardinal(p, &order, p as f64 + 1.0 - t)?.to_bits(),
                );
            }
        }
    }
    rec.violations(
        "right derivative is the reflected left derivative",
        mismatched,
    );

    let mut worst = 0.0f64;
    for p in 2..=5 {
        let phi = cardinal_piecewise(p)?;
        for alpha in ALPHAS {
            let order = FractionalOrder::new(alpha)?;
            for _ in 0..4 {
                let t = rng.random_range(0.05..p as f64 + 0.95);
                let (l, r) = rl_by_quadrature(&phi, alpha, t, 16)?;
                worst = worst.max((left_rl_cardinal(p, &order, t)? - l).abs());
                worst = worst.max((right_rl_cardinal(p, &order, t)? - r).abs());
            }
        }
    }
    rec.at_most("cardinal derivatives match quadrature", worst, 1e-9);

    let mut worst = 0.0f64;
    for _ in 0..20 {
        let f = TruncatedPowers::random(rng)?;
        let g = f.piecewise.reflect();
        let alpha = rng.random_range(1.05..1.95);
        let order = FractionalOrder::new(alpha)?;
        let scale = 1.0 + f.terms.iter().map(|t| t.2.abs()).sum::<f64>();
        for _ in 0..10 {
            let x = rng.random_range(0.01..0.99);
            let exact = f.rl_left(alpha, x);
            worst =
                worst.max((caputo_left_piecewise(&f.piecewise, &order, x)? - exact).abs() / scale);
            worst = worst.max((rl_left_piecewise(&f.piecewise, &order, x)? - exact).abs() / scale);
            worst = worst.max((caputo_right_piecewise(&g, &order, 1.0 - x)? - exact).abs() / scale);
            worst = worst.max((rl_right_piecewise(&g, &order, 1.0 - x)? - exact).abs() / scale);
        }
    }
    rec.at_most(
        "Caputo and RL agree under zero boundary data (20 random splines)",
        worst,
        1e-11,
    );

    let alphas = [0.0, 0.4, 0.9];
    for p1 in 2..=4 {
        let mut worst = 0.0f64;
        for p2 in 2..=4 {
            for a1 in alphas {
                for a2 in alphas {
                    for k in -3..=3 {
                        let (lhs, rhs) = inner_product_check(p1, p2, a1, a2, k)?;
                        worst = worst.max((lhs - rhs).abs());
                    }
                }
            }
        }
        rec.at_most(
            format!("inner product of fractional cardinal splines p1={p1}"),
            worst,
            1e-8,
        );
    }

    let (mut zero, mut one) = (0.0f64, 0.0f64);
    for p in 2..=6 {
        let d0 = CardinalDerivative::new(p, &FractionalOrder::new(0.0)?)?;
        let d1 = CardinalDerivative::new(p, &FractionalOrder::new(1.0)?)?;
        for t in uniform_grid(-0.5, p as f64 + 1.5, 97) {
            zero = zero.max((d0.left(t) - cardinal_bspline(p, t)).abs());
            let slope = cardinal_bspline(p - 1, t) - cardinal_bspline(p - 1, t - 1.0);
            one = one.max((d1.left(t) - slope).abs());
        }
    }
    rec.at_most("order 0 derivative is the cardinal B-spline", zero, 1e-10);
    rec.at_most("order 1 derivative is the classical derivative", one, 1e-10);

    let one_moment = gauss_jacobi_oracle(|_| 1.0, 1.5, (0.0, 1.0), 8)?;
    rec.at_most(
        "Gauss-Jacobi moment of (1-y)^(-1/2)",
        (one_moment - 2.0).abs(),
        1e-13,
    );
    let beta = |a: f64, b: f64| gamma(a) * gamma(b) / gamma(a + b);
    let cubic = gauss_jacobi_oracle(|y| y.powi(3), 1.2, (0.0, 1.0), 6)?;
    rec.at_most(
        "Gauss-Jacobi cubic moment equals B(4, 0.8)",
        (cubic / beta(4.0, 0.8) - 1.0).abs(),
        1e-13,
    );
    let c: Vec<f64> = (0..8).map(|_| rng.random_range(-1.0..1.0)).collect();
    let septic = gauss_jacobi_oracle(
        |y| c.iter().rev().fold(0.0, |acc, v| acc * y + v),
        1.7,
        (0.0, 1.0),
        4,
    )?;
    let exact: f64 = c
        .iter()
        .enumerate()
        .map(|(m, v)| v * beta(m as f64 + 1.0, 0.3))
        .sum();
    rec.at_most(
        "Gauss-Jacobi exact for degree 7 with 4 nodes",
        (septic - exact).abs(),
        1e-12,
    );

    let (p, n) = (3, 8);
    let space = BSplineSpace::new(p, n)?;
    let f = FractionalPiecewise::new(&space.to_piecewise(2)?);
    let mut worst = 0.0f64;
    for alpha in ALPHAS {
        let order = FractionalOrder::new(alpha)?;
        for &x in space.greville() {
            let correction = f.rl_left(&order, x)? - f.caputo_left(&order, x)?;
            let expected = (p * n) as f64 * x.powf(1.0 - alpha) / gamma(2.0 - alpha);
            worst = worst.max((correction - expected).abs() / expected.abs());
        }
    }
    rec.at_most(
        "left boundary term of N_2 is pn x^(1-alpha)/Gamma(2-alpha)",
        worst,
        1e-12,
    );

    let (p, n) = (3, 16);
    let space = BSplineSpace::new(p, n)?;
    let mut worst = 0.0f64;
    for alpha in ALPHAS {
        let order = FractionalOrder::new(alpha)?;
        let scale = (n as f64).powf(alpha);
        for j in [p + 1, 9, n] {
            let f = FractionalPiecewise::new(&space.to_piecewise(j)?);
            for i in 2..space.dim() {
                let x = space.greville_point(i);
                let mapped = scale * left_rl_cardinal(p, &order, space.cardinal_argument(i, j))?;
                worst = worst.max((f.rl_left(&order, x)? - mapped).abs() / scale);
            }
        }
    }
    rec.at_most(
        "interior basis derivative is n^alpha times the cardinal one",
        worst,
        1e-11,
    );
    Ok(())
}

fn symbol(rec: &mut Recorder) -> Result<()> {
    let grid = uniform_grid(1e-6, PI, 500);
    for p in 2..=5 {
        let mut worst = 0.0f64;
        for alpha in ALPHAS {
            let ev = SymbolEvaluator::new(p, alpha)?;
            let doubled = SymbolEvaluator::with_truncation(p, alpha, 2 * ev.truncation())?;
            for &t in &grid {
                let (a, b) = (ev.eval(t)?, doubled.eval(t)?);
                worst = worst.max((a - b).abs() / b.abs());
            }
        }
        rec.at_most(
            format!("doubling the truncation changes f by < 1e-12 p={p}"),
            worst,
            1e-12,
        );
    }

    let mut worst = 0.0f64;
    for p in 2..=8 {
        for alpha in ALPHAS {
            let ev = SymbolEvaluator::new(p, alpha)?;
            for &t in grid.iter().step_by(5) {
                let v = ev.eval_certified(t)?;
                worst = worst.max(v.tail_bound / v.value);
            }
        }
    }
    rec.at_most("certified tail below 1e-12 of the value", worst, 1e-12);

    let fourier_grid: Vec<f64> = (1..=200).map(|k| k as f64 * PI / 200.0).collect();
    for p in 2..=5 {
        let mut worst = 0.0f64;
        for alpha in ALPHAS {
            let ev = SymbolEvaluator::new(p, alpha)?;
            let fs = FourierSymbol::new(p, &FractionalOrder::new(alpha)?, 20_000)?;
            for &t in &fourier_grid {
                worst = worst.max((fs.eval(t) - ev.eval(t)?).abs());
            }
        }
        rec.at_most(
            format!("series and Toeplitz-coefficient routes agree p={p}"),
            worst,
            1e-10,
        );
    }

    let mut lowest = f64::INFINITY;
    for p in 2..=8 {
        for alpha in [0.0, 0.5, 1.0, 1.2, 1.5, 1.8, 2.0] {
            if alpha >= p as f64 {
                continue;
            }
            let ev = SymbolEvaluator::new(p, alpha)?;
            for t in uniform_grid(0.0, PI, 200) {
                lowest = lowest.min(ev.eval(t)?);
            }
        }
    }
    rec.at_most("symbol is non-negative", (-lowest).max(0.0), 0.0);

    let fs = FourierSymbol::new(3, &FractionalOrder::new(1.5)?, 2000)?;
    rec.at_most(
        "symbol is even",
        max_abs(fourier_grid.iter().map(|&t| fs.eval(t) - fs.eval(-t))),
        1e-14,
    );

    let mut worst = 0.0f64;
    for p in 2..=6 {
        for alpha in ALPHAS {
            worst = worst.max((zero_order_fit(&SymbolEvaluator::new(p, alpha)?)? - alpha).abs());
        }
    }
    rec.at_most("zero at theta = 0 has order alpha", worst, 0.02);

    let endpoints = [(3, 1.5, 0.0), (4, 1.2, 0.0), (2, 0.0, 1.0)].map(|(p, a, want)| {
        SymbolEvaluator::new(p, a)
            .and_then(|ev| ev.eval(0.0))
            .map(|v| (v - want).abs())
    });
    rec.at_most(
        "f(0) = 0 for alpha > 0 and 1 for alpha = 0",
        max_abs(endpoints.into_iter().collect::<Result<Vec<_>>>()?),
        1e-15,
    );

    let (mut excess, mut non_mono_p, mut non_mono_alpha) = (f64::NEG_INFINITY, 0, 0);
    let alphas: Vec<f64> = (1..=9).map(|k| 1.0 + 0.1 * k as f64).collect();
    let mut ratios = vec![vec![0.0; alphas.len()]; 9];
    for p in 2..=8 {
        for (j, &alpha) in alphas.iter().enumerate() {
            let r = decay_ratio_check(&SymbolEvaluator::new(p, alpha)?)?;
            excess = excess.max(r.ratio / decay_bound(p, alpha) - 1.0);
            ratios[p][j] = r.ratio;
        }
    }
    for p in 3..=8 {
        for j in 0..alphas.len() {
            non_mono_p += usize::from(ratios[p][j] >= ratios[p - 1][j]);
            if j > 0 {
                non_mono_alpha += usize::from(ratios[p][j] <= ratios[p][j - 1]);
            }
        }
    }
    rec.at_most("f(pi)/f(pi/2) below 2^((2 alpha + 1 - p)/2)", excess, 1e-12);
    rec.violations("f(pi)/f(pi/2) decreasing in p", non_mono_p);
    rec.violations(
        "f(pi)/f(pi/2) decreasing as alpha decreases",
        non_mono_alpha,
    );

    let high = uniform_grid(1.0, PI, 2000);
    let mut odd_fail = 0;
    for p in [3, 5, 7] {
        for alpha in ALPHAS {
            odd_fail += usize::from(!odd_degree_bound_check(p, alpha, &high)?);
        }
    }
    rec.violations(
        "f^{p,0} <= f^{p,alpha} <= f^{p,2} on [1, pi], odd p",
        odd_fail,
    );

    let mut even_gap = f64::INFINITY;
    for p in [2, 4, 6, 8] {
        for alpha in ALPHAS {
            even_gap = even_gap.min(even_degree_bound_check(p, alpha, 2000)?.min_gap_above);
        }
    }
    rec.at_most(
        "f^{p,0} <= f^{p,alpha} on [a, pi], even p",
        (-even_gap).max(0.0),
        1e-12,
    );

    let mut failures = 0;
    let mut gap = f64::INFINITY;
    for p in 2..=6 {
        for alpha in ALPHAS {
            let r = sandwich_check(
                &SymbolEvaluator::new(p, alpha)?,
                &uniform_grid(1e-3, PI, 400),
            )?;
            failures += usize::from(!r.grid_stable);
            gap = gap.min(r.min_lower_gap);
        }
    }
    rec.at_most(
        "lower bound |theta|^alpha sinc^(p+1) <= f",
        (-gap).max(0.0),
        1e-13,
    );
    rec.violations("upper-bound constant finite and grid-stable", failures);

    rec.at_most(
        "r(0) = 0",
        max_abs([r_series(2, 1.5, 0.0)?, r_series(5, 1.2, 0.0)?]),
        1e-15,
    );
    let mut drops = 0;
    let mut decomposition = 0.0f64;
    for p in [2, 4, 6, 8] {
        for alpha in ALPHAS {
            let ev = SymbolEvaluator::new(p, alpha)?;
            let r = uniform_grid(PI / 100.0, PI, 100)
                .into_iter()
                .map(|t| r_series(p, alpha, t))
                .collect::<Result<Vec<_>>>()?;
            drops += r.windows(2).filter(|w| w[0] >= w[1]).count();
            for t in uniform_grid(0.01, PI, 100) {
                let q = (p + 1) as i32;
                let rebuilt = t.powf(alpha) * sinc(t / 2.0).powi(q)
                    + (2.0 * (t / 2.0).sin()).powi(q) * r_series(p, alpha, t)?;
                decomposition = decomposition.max((rebuilt - ev.eval(t)?).abs());
            }
        }
    }
    rec.violations("r series strictly increasing on (0, pi]", drops);
    rec.at_most(
        "f = |theta|^alpha sinc^(p+1) + (2 sin)^(p+1) r, even p",
        decomposition,
        1e-11,
    );
    Ok(())
}

fn assembly(rec: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    for (p, n, alpha) in [(2, 16, 1.5), (3, 12, 1.2), (4, 20, 1.8), (5, 10, 1.4)] {
        let space = BSplineSpace::new(p, n)?;
        let order = FractionalOrder::riesz(alpha)?;
        let system = assemble_matrix(&space, &order)?;
        let scale = (n as f64).powf(alpha);
        let size = system.size();
        let mut worst = 0.0f64;
        for _ in 0..50 {
            let (r, c) = (rng.random_range(0..size), rng.random_range(0..size));
            let (l, rt) = rl_by_quadrature(
                &space.to_piecewise(c + 2)?,
                alpha,
                space.greville_point(r + 2),
                16,
            )?;
            let oracle = order.riesz_prefactor() * (l + rt);
            worst = worst.max((system.matrix[(r, c)] - oracle).abs() / scale);
        }
        rec.at_most(
            format!("entries match quadrature p={p} n={n} alpha={alpha}"),
            worst,
            1e-8,
        );
    }

    let mut worst = 0.0f64;
    for p in 2..=6 {
        for alpha in ALPHAS {
            let order = FractionalOrder::riesz(alpha)?;
            let card = CardinalDerivative::new(p, &order)?;
            let mid = (p + 1) as f64 / 2.0;
            let t0 = toeplitz_coefficients(p, &order, 1)?[0];
            for k in 1..40 {
                let plus = card.left(mid + k as f64) + card.right(mid + k as f64);
                let minus = card.left(mid - k as f64) + card.right(mid - k as f64);
                worst = worst.max(order.riesz_prefactor() * (plus - minus) / t0);
            }
        }
    }
    rec.at_most("Toeplitz coefficients t_k = t_-k", worst, 1e-13);

    for p in 2..=5 {
        let space = BSplineSpace::new(p, 32)?;
        let system = assemble_matrix(&space, &FractionalOrder::riesz(1.5)?)?;
        let split = toeplitz_split(&system)?;
        let mut worst = 0.0f64;
        for i in p + 1..=32 {
            for j in p + 1..=32 {
                worst = worst.max(split.correction[(i - 2, j - 2)].abs());
            }
        }
        rec.at_most(format!("interior block equals T p={p}"), worst, 1e-12);
        let rank = split.correction_rank();
        rec.at_most(
            format!("rank of R below 4(p-1) p={p}"),
            rank as f64,
            split.rank_bound as f64,
        );
    }

    let mut change = 0.0f64;
    for p in 2..=4 {
        for alpha in ALPHAS {
            let order = FractionalOrder::riesz(alpha)?;
            let norms = [64, 128].map(|n| {
                let (al, _) = assemble_left_right(&BSplineSpace::new(p, n)?, &order)?;
                let al = al * (n as f64).powf(-alpha);
                Ok::<_, Error>((inf_norm(&al), inf_norm(&al.transpose())))
            });
            let [(i1, o1), (i2, o2)] = [norms[0].clone()?, norms[1].clone()?];
            change = change
                .max(((i2 - i1) / i1).abs())
                .max(((o2 - o1) / o1).abs());
        }
    }
    rec.at_most("n^-alpha A_L norms stable from n=64 to 128", change, 0.1);

    let order = FractionalOrder::riesz(1.3)?;
    let (p, n) = (3, 24);
    let a1 = assemble_matrix(&BSplineSpace::new(p, n)?, &order)?.matrix;
    let a2 = assemble_matrix(&BSplineSpace::new(p, 2 * n)?, &order)?.matrix;
    let factor = 2f64.powf(1.3);
    let mut worst = 0.0f64;
    for i in p + 1..=n {
        for j in p + 1..=n {
            let (i2, j2) = (i + n / 2, j + n / 2);
            if a1[(i - 2, j - 2)] != 0.0 {
                worst = worst.max((a2[(i2 - 2, j2 - 2)] / a1[(i - 2, j - 2)] - factor).abs());
            }
        }
    }
    rec.at_most("central entries scale as n^alpha", worst, 1e-12);
    Ok(())
}

fn inf_norm(m: &DMatrix<f64>) -> f64 {
    m.row_iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn spectra(rec: &mut Recorder) -> Result<()> {
    let (p, n, alpha) = (3, 31, 1.5);
    let system = assemble_matrix(&BSplineSpace::new(p, n)?, &FractionalOrder::riesz(alpha)?)?;
    let t = toeplitz_split(&system)?.toeplitz();
    let sym = eig_symmetric(&t)?;
    let gen = eig_general(&t)?;
    let diff = max_abs(sym.iter().zip(&gen.real).map(|(a, b)| a - b)).max(gen.max_imag);
    rec.at_most("symmetric and general solvers agree on T", diff, 1e-8);

    let decomposition = symmetric_eigen(&t)?;
    let scale = t.norm();
    let mut residual = 0.0f64;
    for k in (0..t.nrows()).step_by(3).take(10) {
        let v = decomposition.eigenvectors.column(k);
        residual = residual.max((&t * v - v * decomposition.eigenvalues[k]).norm() / scale);
    }
    rec.at_most("eigenpair residuals of T", residual, 1e-9);

    let mut outside = 0.0f64;
    for p in 2..=5 {
        for alpha in ALPHAS {
            let c = spectrum_comparison(p, 40, alpha, 0.0, 0.0)?;
            let max = SymbolEvaluator::new(p, alpha)?.max().1;
            for l in &c.toeplitz.eigenvalues {
                outside = outside.max(-l).max(l - max);
            }
        }
    }
    rec.at_most("eigenvalues of T inside [min f, max f]", outside, 1e-8);

    let mut excess = 0usize;
    let mut imag = 0.0f64;
    for (p, n) in [(3, 31), (4, 30)] {
        for alpha in [1.2, 1.8] {
            let small = spectrum_comparison(p, n, alpha, 0.0, 0.0)?;
            let large = spectrum_comparison(p, 2 * n, alpha, 0.0, 0.0)?;
            let (s, l) = (&small.collocation, &large.collocation);
            excess +=
                s.outliers.saturating_sub(s.outlier_budget) + l.outliers.saturating_sub(s.outliers);
            let spread = l.eigenvalues.last().copied().unwrap_or(1.0).abs().max(1.0);
            imag = imag.max(s.max_imag.max(l.max_imag) / spread);
        }
    }
    rec.violations("outliers within 4(p-1) and not growing with n", excess);
    rec.at_most("eigenvalues of n^-alpha A are real", imag, 1e-8);

    let ev = SymbolEvaluator::new(3, 1.5)?;
    let dev = [63, 126].map(|n| {
        let system = assemble_matrix(&BSplineSpace::new(3, n)?, &FractionalOrder::riesz(1.5)?)?;
        let g = eig_general(&system.scaled_matrix())?;
        Ok::<_, Error>(compare_to_symbol(&g.real, &ev, 3)?.deviation)
    });
    let [d1, d2] = [dev[0].clone()?, dev[1].clone()?];
    rec.at_most(
        "deviation from the symbol shrinks when n doubles",
        d2 / d1,
        1.0 - f64::EPSILON,
    );
    Ok(())
}

fn manufactured(rec: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut worst = 0.0f64;
    for (p, n, alpha) in [(2, 12, 1.3), (3, 16, 1.7), (5, 9, 1.5)] {
        let system = assemble_matrix(&BSplineSpace::new(p, n)?, &FractionalOrder::riesz(alpha)?)?;
        let c = DVector::from_fn(system.size(), |_, _| rng.random_range(-1.0..1.0));
        let rhs = &system.matrix * &c;
        let recovered = solve(&CollocationSystem {
            rhs: Some(rhs),
            ..system
        })?;
        worst = worst.max((recovered - c).amax());
    }
    rec.at_most(
        "spline right-hand side recovers its coefficients",
        worst,
        1e-9,
    );

    let order = FractionalOrder::new(2.0)?;
    let second: [(ManufacturedSolution, fn(f64) -> f64); 2] = [
        (ManufacturedSolution::poly33(), |x| {
            6.0 * x - 36.0 * x * x + 60.0 * x.powi(3) - 30.0 * x.powi(4)
        }),
        (ManufacturedSolution::sin_pi_x2(), |x| {
            2.0 * PI * (PI * x * x).cos() - 4.0 * PI * PI * x * x * (PI * x * x).sin()
        }),
    ];
    let mut worst = 0.0f64;
    for (sol, d2) in &second {
        for x in uniform_grid(0.05, 0.95, 19) {
            worst = worst.max((riesz_rhs(sol, &order, x)? + d2(x)).abs() / (1.0 + d2(x).abs()));
        }
    }
    rec.at_most("alpha = 2 right-hand side is -u''", worst, 1e-10);

    let sol = ManufacturedSolution::poly33();
    let mut worst = 0.0f64;
    for p in 2..=5 {
        for alpha in ALPHAS {
            let t = convergence_study(p, &FractionalOrder::riesz(alpha)?, &sol, &[32, 64])?;
            worst = worst.max((t.last_order().unwrap_or(f64::NAN) - order_model(p, alpha)).abs());
        }
    }
    rec.at_most("observed order within 0.3 of the model", worst, 0.3);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::PARTS {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn splines_suite_passes_and_is_deterministic() {
        let a = cmd_verify(Suite::Splines, 7).unwrap();
        let b = cmd_verify(Suite::Splines, 7).unwrap();
        assert_eq!(a, b);
        assert!(
            a.passed,
            "{:#?}",
            a.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>()
        );
    }

    #[test]
    fn truncated_powers_match_piecewise() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = TruncatedPowers::random(&mut rng).unwrap();
        for x in uniform_grid(0.0, 1.0, 33) {
            let direct: f64 = f
                .terms
                .iter()
                .filter(|t| x > t.0)
                .map(|&(tau, q, w)| w * (x - tau).powi(q as i32))
                .sum();
            assert!((direct - f.piecewise.eval(x)).abs() < 1e-12);
        }
    }
}
