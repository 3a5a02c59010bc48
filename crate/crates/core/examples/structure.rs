//! Toeplitz part and low-rank correction of the collocation matrix.
//!
//! cargo run --release --example structure [p] [n] [alpha]

use fracolloc::assembly::{assemble_matrix, toeplitz_split};
use fracolloc::fracderiv::FractionalOrder;
use fracolloc::splines::BSplineSpace;

fn main() -> fracolloc::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p = args.first().map_or(3, |a| a.parse().expect("p"));
    let n = args.get(1).map_or(32, |a| a.parse().expect("n"));
    let alpha = args.get(2).map_or(1.5, |a| a.parse().expect("alpha"));

    let space = BSplineSpace::new(p, n)?;
    let system = assemble_matrix(&space, &FractionalOrder::riesz(alpha)?)?;
    let split = toeplitz_split(&system)?;
    println!("order {}  p={p} n={n} alpha={alpha}", system.size());
    println!("t_0..t_5 = {:.6?}", &split.first_column[..6]);

    let r = &split.correction;
    println!("nonzero pattern of R (|r| > 1e-12):");
    for i in 0..r.nrows() {
        let row: String = (0..r.ncols())
            .map(|j| if r[(i, j)].abs() > 1e-12 { '#' } else { '.' })
            .collect();
        println!("  {row}");
    }
    println!(
        "rank R = {}  (bound {})",
        split.correction_rank(),
        split.rank_bound
    );
    Ok(())
}
