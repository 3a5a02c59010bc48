//! Normalized symbol on [0, pi] for several degrees, as CSV on stdout.
//!
//! cargo run --release --example symbol_plot [alpha] > symbol.csv

use std::f64::consts::PI;

use fracolloc::symbol::{uniform_grid, zero_order_fit, SymbolEvaluator};

fn main() -> fracolloc::Result<()> {
    let alpha: f64 = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("alpha"))
        .unwrap_or(1.5);
    let degrees = [3, 5, 8];
    let evs = degrees
        .iter()
        .map(|&p| SymbolEvaluator::new(p, alpha))
        .collect::<fracolloc::Result<Vec<_>>>()?;

    for ev in &evs {
        let (at, max) = ev.max();
        eprintln!(
            "p={} max f = {max:.6} at {at:.4}, f(pi)/max f = {:.3e}, zero order {:.4}",
            ev.degree(),
            ev.eval(PI)? / max,
            zero_order_fit(ev)?
        );
    }
    println!("theta,{}", degrees.map(|p| format!("p{p}")).join(","));
    for t in uniform_grid(0.0, PI, 201) {
        let row = evs
            .iter()
            .map(|ev| ev.normalized(t).map(|v| format!("{v:.9e}")))
            .collect::<fracolloc::Result<Vec<_>>>()?;
        println!("{t:.9e},{}", row.join(","));
    }
    Ok(())
}
