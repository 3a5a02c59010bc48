//! Errors and observed orders for both manufactured solutions on the
//! (alpha, p) grid, n = 4..64.
//!
//! cargo run --release --example convergence_tables [poly33|sinpix2]

use fracolloc::fracderiv::FractionalOrder;
use fracolloc::manufactured::{convergence_study, order_model, ManufacturedSolution};

fn main() -> fracolloc::Result<()> {
    let which = std::env::args().nth(1);
    let solutions = match which.as_deref() {
        Some(name) => vec![ManufacturedSolution::by_name(name).expect("unknown solution")],
        None => vec![
            ManufacturedSolution::poly33(),
            ManufacturedSolution::sin_pi_x2(),
        ],
    };
    let ns = [4, 8, 16, 32, 64];
    for sol in &solutions {
        println!("u = {}", sol.name());
        for alpha in [1.2, 1.5, 1.8] {
            let order = FractionalOrder::riesz(alpha)?;
            let tables = (2..=5)
                .map(|p| convergence_study(p, &order, sol, &ns))
                .collect::<fracolloc::Result<Vec<_>>>()?;
            println!("  alpha = {alpha}");
            for (k, n) in ns.iter().enumerate() {
                print!("  {n:>4}");
                for t in &tables {
                    let row = &t.rows[k];
                    match row.order {
                        Some(o) => print!("  {:.4e} {:>5.2}", row.error, o),
                        None => print!("  {:.4e}      ", row.error),
                    }
                }
                println!();
            }
            print!("  model");
            for p in 2..=5 {
                print!("  {:>17.1}", order_model(p, alpha));
            }
            println!();
        }
    }
    Ok(())
}
