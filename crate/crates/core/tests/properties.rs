use std::f64::consts::PI;

use fracolloc::assembly::{assemble_matrix, toeplitz_split};
use fracolloc::fracderiv::{rl_by_quadrature, FractionalOrder, FractionalPiecewise};
use fracolloc::spectra::{eig_general, eig_symmetric};
use fracolloc::splines::{cardinal_bspline, BSplineSpace, PiecewisePolynomial};
use fracolloc::symbol::{r_series, FourierSymbol, SymbolEvaluator};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn alpha_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1.2), Just(1.5), Just(1.8)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_of_unity(p in 2usize..=7, n in 2usize..=40, x in 0.0f64..=1.0) {
        let s = BSplineSpace::new(p, n).unwrap();
        let sum: f64 = (1..=s.dim()).map(|i| s.eval(i, x).unwrap()).sum();
        prop_assert!((sum - 1.0).abs() < 1e-13, "sum = {}", sum);
    }

    #[test]
    fn local_support(p in 2usize..=6, n in 2usize..=30, x in 0.0f64..=1.0) {
        let s = BSplineSpace::new(p, n).unwrap();
        for i in 1..=s.dim() {
            let (lo, hi) = (s.knots().knot(i), s.knots().knot(i + p + 1));
            let v = s.eval(i, x).unwrap();
            prop_assert!(v >= -1e-15);
            if x < lo || x > hi {
                prop_assert_eq!(v, 0.0);
            }
        }
    }

    #[test]
    fn cardinal_symmetry(p in 2usize..=8, u in 0.0f64..=1.0) {
        let t = u * (p + 1) as f64;
        let (a, b) = (cardinal_bspline(p, t), cardinal_bspline(p, (p + 1) as f64 - t));
        prop_assert!((a - b).abs() < 1e-13);
    }

    #[test]
    fn reflection_swaps_sides(
        coeffs in prop::collection::vec(-2.0f64..2.0, 3..6),
        a in -1.0f64..0.5,
        len in 0.5f64..2.0,
        u in 0.05f64..0.95,
        alpha in 1.05f64..1.95,
    ) {
        let f = PiecewisePolynomial::single(a, a + len, coeffs).unwrap();
        let g = f.reflect();
        let o = FractionalOrder::new(alpha).unwrap();
        let x = a + u * len;
        let right = FractionalPiecewise::new(&f).rl_right(&o, x).unwrap();
        let left = FractionalPiecewise::new(&g).rl_left(&o, 2.0 * a + len - x).unwrap();
        prop_assert!((right - left).abs() <= 1e-11 * right.abs().max(1.0));
    }

    #[test]
    fn closed_form_matches_quadrature(
        coeffs in prop::collection::vec(-2.0f64..2.0, 3..6),
        u in 0.05f64..0.95,
        alpha in 1.05f64..1.95,
    ) {
        let f = PiecewisePolynomial::single(0.0, 1.0, coeffs).unwrap();
        let o = FractionalOrder::new(alpha).unwrap();
        let fp = FractionalPiecewise::new(&f);
        let (l, r) = rl_by_quadrature(&f, alpha, u, 20).unwrap();
        let (lc, rc) = (fp.rl_left(&o, u).unwrap(), fp.rl_right(&o, u).unwrap());
        prop_assert!((l - lc).abs() <= 1e-9 * l.abs().max(1.0), "left {} vs {}", l, lc);
        prop_assert!((r - rc).abs() <= 1e-9 * r.abs().max(1.0), "right {} vs {}", r, rc);
    }

    #[test]
    fn symbol_truncation_doubling(p in 2usize..=6, alpha in alpha_strategy(), theta in 0.01f64..=PI) {
        let a = SymbolEvaluator::with_truncation(p, alpha, 16).unwrap().eval(theta).unwrap();
        let b = SymbolEvaluator::with_truncation(p, alpha, 32).unwrap().eval(theta).unwrap();
        prop_assert!(a > 0.0);
        prop_assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn r_series_alternating_bound(p in 2usize..=6, alpha in alpha_strategy(), theta in 0.01f64..=PI) {
        let r = r_series(p, alpha, theta).unwrap();
        let sigma = p as f64 + 1.0 - alpha;
        let first = (2.0 * PI - theta).powf(-sigma) - (2.0 * PI + theta).powf(-sigma);
        prop_assert!(r > 0.0 && r <= first * (1.0 + 1e-12), "r = {}, first = {}", r, first);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn assembled_entries_match_quadrature(
        p in 2usize..=5,
        n in 4usize..=24,
        alpha in 1.1f64..1.9,
        ru in 0.0f64..1.0,
        cu in 0.0f64..1.0,
    ) {
        let s = BSplineSpace::new(p, n).unwrap();
        let o = FractionalOrder::riesz(alpha).unwrap();
        let sys = assemble_matrix(&s, &o).unwrap();
        let size = s.trimmed_dim();
        let (r, c) = (((ru * size as f64) as usize).min(size - 1), ((cu * size as f64) as usize).min(size - 1));
        let f = s.to_piecewise(c + 2).unwrap();
        let (l, rr) = rl_by_quadrature(&f, alpha, s.greville_point(r + 2), 24).unwrap();
        let expected = o.riesz_prefactor() * (l + rr);
        let scale = (n as f64).powf(alpha);
        prop_assert!((sys.matrix[(r, c)] - expected).abs() <= 1e-8 * scale,
            "entry ({}, {}): {} vs {}", r, c, sys.matrix[(r, c)], expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn correction_rank_bounded(p in 2usize..=5, n in 8usize..=48, alpha in alpha_strategy()) {
        let s = BSplineSpace::new(p, n).unwrap();
        let split = toeplitz_split(&assemble_matrix(&s, &FractionalOrder::riesz(alpha).unwrap()).unwrap()).unwrap();
        prop_assert!(split.correction_rank() <= 4 * (p - 1));
    }

    #[test]
    fn fourier_route_matches(p in 2usize..=5, alpha in alpha_strategy(), theta in 0.05f64..=PI) {
        let ev = SymbolEvaluator::new(p, alpha).unwrap();
        let fourier = FourierSymbol::new(p, &FractionalOrder::new(alpha).unwrap(), 20000).unwrap();
        let (a, b) = (ev.eval(theta).unwrap(), fourier.eval(theta));
        prop_assert!((a - b).abs() < 1e-8, "theta {}: {} vs {}", theta, a, b);
    }

    #[test]
    fn eigensolvers_agree(size in 2usize..=24, seed in prop::collection::vec(-1.0f64..1.0, 576)) {
        let m = DMatrix::from_fn(size, size, |r, c| seed[r.min(c) * 24 + r.max(c)]);
        let sym = eig_symmetric(&m).unwrap();
        let gen = eig_general(&m).unwrap();
        prop_assert!(gen.max_imag < 1e-8);
        for (a, b) in sym.iter().zip(&gen.real) {
            prop_assert!((a - b).abs() < 1e-10 * size as f64);
        }
    }
}
