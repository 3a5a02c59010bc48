//! Left and right Riemann–Liouville derivatives of cardinal B-splines and
//! of spline basis functions, checked against quadrature.
//!
//! cargo run --example fractional_derivatives [alpha]

use fracolloc::fracderiv::{
    inner_product_check, rl_by_quadrature, CardinalDerivative, FractionalOrder, FractionalPiecewise,
};
use fracolloc::splines::BSplineSpace;

fn main() -> fracolloc::Result<()> {
    let alpha: f64 = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("alpha"))
        .unwrap_or(1.5);
    let order = FractionalOrder::new(alpha)?;

    let p = 3;
    let card = CardinalDerivative::new(p, &order)?;
    println!("cardinal B-spline p={p}, alpha={alpha}");
    println!("     t        left       right");
    for k in 0..=12 {
        let t = -1.0 + 0.5 * k as f64;
        println!("{t:6.2} {:11.6} {:11.6}", card.left(t), card.right(t));
    }

    let space = BSplineSpace::new(p, 8)?;
    let f = space.to_piecewise(2)?;
    let exact = FractionalPiecewise::new(&f);
    println!("\nN_2 on 8 intervals: closed form vs quadrature");
    for &x in &space.greville()[..4] {
        let (l, r) = rl_by_quadrature(&f, alpha, x, 20)?;
        println!(
            "x={x:.4}  left {:.12} ({:.1e})  right {:.12} ({:.1e})",
            exact.rl_left(&order, x)?,
            (exact.rl_left(&order, x)? - l).abs(),
            exact.rl_right(&order, x)?,
            (exact.rl_right(&order, x)? - r).abs(),
        );
    }

    println!("\ninner products of fractional cardinal splines (p1 = p2 = 3)");
    for k in -2..=2 {
        let (lhs, rhs) = inner_product_check(3, 3, 0.7, 0.7, k)?;
        println!("k={k:2}  integral {lhs:.12}  closed form {rhs:.12}");
    }
    Ok(())
}
