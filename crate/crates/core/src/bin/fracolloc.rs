use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fracolloc::cli::{self, CommandOutput, Format, Suite};
use fracolloc::Error;

#[derive(Parser)]
#[command(
    name = "fracolloc",
    version,
    about = "B-spline collocation for the Riesz fractional diffusion problem"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Output file; reports go to `<out>.json` (stderr without --out).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Symbol values on a uniform grid of [0, pi].
    Symbol {
        #[arg(long = "p")]
        p: usize,
        #[arg(long = "alpha", required = true)]
        alpha: Vec<f64>,
        #[arg(long, default_value_t = 512)]
        resolution: usize,
        #[command(flatten)]
        output: Output,
    },
    /// High-frequency bounds on [1, pi] with verdicts.
    Bounds {
        #[arg(long = "p")]
        p: usize,
        #[arg(long = "alpha")]
        alpha: f64,
        #[arg(long, default_value_t = 2000)]
        resolution: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Sorted spectra of T and n^-alpha A next to symbol samples.
    Eigs {
        #[arg(long = "p")]
        p: usize,
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "alpha", required = true)]
        alpha: Vec<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Errors and observed orders for a manufactured solution.
    Convergence {
        /// poly33 or sinpix2
        #[arg(long, default_value = "poly33")]
        solution: String,
        #[arg(long = "p", default_values_t = [2, 3, 4, 5])]
        p: Vec<usize>,
        #[arg(long = "n", default_values_t = [4, 8, 16, 32, 64])]
        n: Vec<usize>,
        #[arg(long = "alpha", default_values_t = [1.2, 1.5, 1.8])]
        alpha: Vec<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Randomized invariant checks, JSON report.
    Verify {
        /// splines, fracderiv, symbol, assembly, spectra, manufactured or all
        #[arg(default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write(out: Option<&PathBuf>, table: &str, report: Option<&str>) -> std::io::Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, table)?;
            if let Some(r) = report {
                let mut name = path.clone().into_os_string();
                name.push(".json");
                std::fs::write(name, r)?;
            }
        }
        None => {
            print!("{table}");
            if let Some(r) = report {
                eprint!("{r}");
            }
        }
    }
    Ok(())
}

fn run(command: Command) -> Result<(CommandOutput, Option<PathBuf>), Error> {
    let (result, out): (CommandOutput, Option<PathBuf>) = match command {
        Command::Symbol {
            p,
            alpha,
            resolution,
            output,
        } => (
            cli::cmd_symbol(p, &alpha, resolution, output.format)?,
            output.out,
        ),
        Command::Bounds {
            p,
            alpha,
            resolution,
            output,
        } => (
            cli::cmd_bounds(p, alpha, resolution, output.format)?,
            output.out,
        ),
        Command::Eigs {
            p,
            n,
            alpha,
            output,
        } => (cli::cmd_eigs(p, n, &alpha, output.format)?, output.out),
        Command::Convergence {
            solution,
            p,
            n,
            alpha,
            output,
        } => (
            cli::cmd_convergence(&solution, &p, &alpha, &n, output.format)?,
            output.out,
        ),
        Command::Verify { suite, seed, out } => {
            let report = cli::cmd_verify(suite, seed)?;
            let json = serde_json::to_string_pretty(&report).expect("serializable report") + "\n";
            (
                CommandOutput {
                    table: json,
                    report: None,
                    passed: report.passed,
                },
                out,
            )
        }
    };
    Ok((result, out))
}

fn main() -> ExitCode {
    let args = Cli::parse();
    if let Err(e) = cli::configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(args.command) {
        Ok((result, out)) => {
            if let Err(e) = write(out.as_ref(), &result.table, result.report.as_deref()) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(u8::from(!result.passed))
        }
        Err(e) => {
            eprintln!("error: {e}");
            let usage = matches!(
                e,
                Error::Degree(_)
                    | Error::MeshSize(_)
                    | Error::FractionalOrder(_)
                    | Error::OrderNotBelowDegree { .. }
                    | Error::Angle(_)
                    | Error::Invalid(_)
                    | Error::TooLarge(_)
            );
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}
