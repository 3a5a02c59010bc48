//! Lower bound, decay at pi and the high-frequency comparisons with the
//! alpha = 0 and alpha = 2 symbols.
//!
//! cargo run --release --example bounds

use std::f64::consts::PI;

use fracolloc::symbol::{
    decay_ratio_check, even_degree_bound_check, odd_degree_bound_check, sandwich_check,
    uniform_grid, SymbolEvaluator,
};

fn main() -> fracolloc::Result<()> {
    println!(" p  alpha   f(pi)/f(pi/2)     bound   lower  C*");
    for p in 2..=8 {
        for alpha in [1.2, 1.5, 1.8] {
            let ev = SymbolEvaluator::new(p, alpha)?;
            let d = decay_ratio_check(&ev)?;
            let s = sandwich_check(&ev, &uniform_grid(1e-3, PI, 400))?;
            println!(
                "{p:2} {alpha:6.1} {:15.6e} {:9.4e} {:>7} {:.3}",
                d.ratio, d.bound, s.lower_bound_holds, s.empirical_constant
            );
        }
    }

    let grid = uniform_grid(1.0, PI, 2000);
    for p in [3, 5, 7] {
        println!(
            "odd p={p}: f0 <= f <= f2 on [1, pi]: {}",
            odd_degree_bound_check(p, 1.5, &grid)?
        );
    }
    for p in [2, 4, 6, 8] {
        let r = even_degree_bound_check(p, 1.5, 2000)?;
        println!(
            "even p={p}: a = {:.4}, holds on [a, pi]: {}, on [1, a]: {}",
            r.threshold, r.holds_above_threshold, r.holds_between_one_and_threshold
        );
    }
    Ok(())
}
