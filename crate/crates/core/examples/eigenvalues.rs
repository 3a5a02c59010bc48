//! Eigenvalues of T and of n^-alpha A against symbol samples, with and
//! without advection and reaction terms.
//!
//! cargo run --release --example eigenvalues [p] [n] [alpha]

use fracolloc::spectra::spectrum_comparison;

fn main() -> fracolloc::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p = args.first().map_or(3, |a| a.parse().expect("p"));
    let n = args.get(1).map_or(63, |a| a.parse().expect("n"));
    let alpha = args.get(2).map_or(1.5, |a| a.parse().expect("alpha"));

    for size in [n, 2 * n] {
        let c = spectrum_comparison(p, size, alpha, 0.0, 0.0)?;
        println!(
            "n={size:4}  deviation T {:.3e}  A {:.3e}  outliers {} (budget {})",
            c.toeplitz.deviation,
            c.collocation.deviation,
            c.collocation.outliers,
            c.collocation.outlier_budget
        );
    }
    let c = spectrum_comparison(p, n, alpha, 1.0, 1.0)?;
    println!(
        "with u' + u:  deviation {:.3e}  max |Im| {:.3e}",
        c.collocation.deviation, c.collocation.max_imag
    );

    let c = spectrum_comparison(p, n, alpha, 0.0, 0.0)?;
    println!("\n   k   eig T      eig A      f(theta)");
    let size = c.toeplitz.eigenvalues.len();
    for k in (0..size).step_by((size / 16).max(1)).chain([size - 1]) {
        println!(
            "{:4}  {:.6}  {:.6}  {:.6}",
            k + 1,
            c.toeplitz.eigenvalues[k],
            c.collocation.eigenvalues[k],
            c.toeplitz.symbol_samples[k]
        );
    }
    Ok(())
}
