//! Reference values computed independently in 40-digit arithmetic, and
//! hand-checked small cases.

use std::f64::consts::PI;

use approx::assert_relative_eq;
use fracolloc::assembly::toeplitz_coefficients;
use fracolloc::fracderiv::{
    gauss_jacobi_oracle, left_rl_cardinal, right_rl_cardinal, rl_left_from_caputo,
    rl_right_from_caputo, BoundaryData, FractionalOrder, FractionalPiecewise,
};
use fracolloc::manufactured::{solve_error, ManufacturedSolution};
use fracolloc::special::gamma;
use fracolloc::splines::{cardinal_bspline, BSplineSpace, PiecewisePolynomial};
use fracolloc::symbol::{decay_ratio_check, zero_order_fit, SymbolEvaluator};

fn ord(alpha: f64) -> FractionalOrder {
    FractionalOrder::new(alpha).unwrap()
}

#[test]
fn cardinal_left_derivative_quadratic() {
    let v = left_rl_cardinal(2, &ord(1.5), 1.5).unwrap();
    assert_relative_eq!(
        v,
        -1.011677084523254150578697775478732478298,
        max_relative = 1e-13
    );
    // truncated-power form by hand
    let hand = (1.5f64.sqrt() - 3.0 * 0.5f64.sqrt()) / (PI.sqrt() / 2.0);
    assert_relative_eq!(v, hand, max_relative = 1e-14);
}

#[test]
fn cardinal_derivative_cubic() {
    assert_relative_eq!(
        left_rl_cardinal(3, &ord(1.5), 2.0).unwrap(),
        -0.8813189501137259147100447553407504926304,
        max_relative = 1e-13
    );
    assert_relative_eq!(
        right_rl_cardinal(3, &ord(1.3), 2.1).unwrap(),
        -0.237164646623445124877991779072417315935,
        max_relative = 1e-13
    );
}

#[test]
fn toeplitz_diagonal_quadratic() {
    let t = toeplitz_coefficients(2, &ord(1.5), 4).unwrap();
    assert_relative_eq!(
        t[0],
        1.430727453674858035342938218011247496761,
        max_relative = 1e-13
    );
}

#[test]
fn symbol_at_half_pi() {
    let ev = SymbolEvaluator::new(3, 1.5).unwrap();
    assert_relative_eq!(
        ev.eval(PI / 2.0).unwrap(),
        1.428448235232250712251182159340776,
        max_relative = 1e-12
    );
}

#[test]
fn caputo_of_square() {
    let f = PiecewisePolynomial::single(0.0, 1.0, vec![0.0, 0.0, 1.0]).unwrap();
    let v = FractionalPiecewise::new(&f)
        .caputo_left(&ord(1.5), 1.0)
        .unwrap();
    assert_relative_eq!(
        v,
        2.256758334191025147792317806243090343376,
        max_relative = 1e-14
    );
    assert_relative_eq!(v, 2.0 / gamma(1.5), max_relative = 1e-14);
}

#[test]
fn boundary_corrections() {
    let o = ord(1.5);
    // u(0) = 0, u'(0) = 24: 24 x^(1-alpha) / Gamma(2-alpha) at x = 0.3
    let left = BoundaryData {
        left_value: 0.0,
        left_slope: 24.0,
        right_value: 0.0,
        right_slope: 0.0,
    };
    assert_relative_eq!(
        rl_left_from_caputo(0.0, &left, &o, 0.3, 0.0).unwrap(),
        24.72154892948413314190033505993529043751,
        max_relative = 1e-13
    );
    // u(1) = 0, u'(1) = -2 pi
    let right = BoundaryData {
        left_value: 0.0,
        left_slope: 0.0,
        right_value: 0.0,
        right_slope: -2.0 * PI,
    };
    assert_relative_eq!(
        rl_right_from_caputo(0.0, &right, &o, 0.3, 1.0).unwrap(),
        4.23697510265438121323167487974885174749,
        max_relative = 1e-13
    );
}

#[test]
fn gauss_jacobi_beta_integral() {
    // int_0^1 (1-y)^(-0.2) y^3 dy = B(4, 0.8)
    let v = gauss_jacobi_oracle(|y| y * y * y, 1.2, (0.0, 1.0), 4).unwrap();
    assert_relative_eq!(
        v,
        0.3916040100250626566416040100250626566416,
        max_relative = 1e-13
    );
}

#[test]
fn decay_ratio_degree_eight() {
    let r = decay_ratio_check(&SymbolEvaluator::new(8, 1.2).unwrap()).unwrap();
    assert_relative_eq!(
        r.bound,
        0.2030630990890588806524273456938204128213,
        max_relative = 1e-14
    );
    assert!(r.holds);
    assert!(r.ratio <= r.bound);
}

#[test]
fn decay_bound_cubic_second_derivative() {
    let r = decay_ratio_check(&SymbolEvaluator::new(3, 2.0).unwrap()).unwrap();
    assert_relative_eq!(r.bound, 2.0, max_relative = 1e-15);
    assert!(r.holds);
}

#[test]
fn small_quadratic_space() {
    let s = BSplineSpace::new(2, 4).unwrap();
    assert_relative_eq!(s.greville_point(2), 0.125, max_relative = 1e-15);
    assert_relative_eq!(s.derivative(2, 0.0, 1).unwrap(), 8.0, max_relative = 1e-14);
    assert_relative_eq!(cardinal_bspline(2, 1.5), 0.75, max_relative = 1e-15);
    assert_eq!(s.dim(), 6);
    assert_eq!(s.trimmed_dim(), 4);
}

#[test]
fn low_frequency_exponent() {
    for (p, alpha, tol) in [(3, 1.5, 0.02), (5, 1.2, 0.02), (4, 2.0, 0.02)] {
        let fit = zero_order_fit(&SymbolEvaluator::new(p, alpha).unwrap()).unwrap();
        assert!((fit - alpha).abs() < tol, "p={p} alpha={alpha} fit={fit}");
    }
}

#[test]
fn tabulated_errors_coarse_meshes() {
    // published errors, three significant digits
    let poly = ManufacturedSolution::poly33();
    for (p, alpha, n, expected) in [
        (2, 1.2, 8, 1.5675e-4),
        (3, 1.5, 16, 2.8530e-5),
        (2, 1.8, 32, 9.3400e-6),
    ] {
        let e = solve_error(p, n, &ord(alpha), &poly).unwrap();
        assert_relative_eq!(e, expected, max_relative = 5e-3);
    }
}
