//! Knots, Greville points and basis values of a small spline space.
//!
//! cargo run --example spline_basis [p] [n]

use fracolloc::splines::{cardinal_bspline, BSplineSpace};

fn main() -> fracolloc::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().expect("integer argument"));
    let p = args.next().unwrap_or(3);
    let n = args.next().unwrap_or(8);
    let space = BSplineSpace::new(p, n)?;

    println!("knots    {:?}", space.knots().as_slice());
    println!("greville {:.4?}", space.greville());
    println!(
        "basis N_1..N_{} ({} kept for collocation)",
        space.dim(),
        space.trimmed_dim()
    );

    println!("\n     x   sum N_i   N_2(x)   N_2'(x)");
    for k in 0..=10 {
        let x = k as f64 / 10.0;
        let sum: f64 = (1..=space.dim())
            .map(|i| space.eval(i, x))
            .sum::<fracolloc::Result<f64>>()?;
        println!(
            "{x:6.2} {sum:9.6} {:8.5} {:9.4}",
            space.eval(2, x)?,
            space.derivative(2, x, 1)?
        );
    }

    let i = p + 1;
    let x = 0.3 * (p + 1) as f64 / n as f64;
    let mapped = cardinal_bspline(p, n as f64 * x - i as f64 + p as f64 + 1.0);
    println!(
        "\nN_{i}({x:.4}) = {:.15}  phi_{p}(nx - i + p + 1) = {mapped:.15}",
        space.eval(i, x)?
    );

    let piece = space.to_piecewise(2)?;
    println!("N_2 on the first interval: {:?}", piece.coeffs()[0]);
    Ok(())
}
