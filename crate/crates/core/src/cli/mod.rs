//! Experiment commands behind the `fracolloc` binary.
//!
//! Every command returns its table as a string (CSV or JSON); commands with
//! verdicts also return a JSON report. CSV files have a one-line header and
//! numbers in scientific notation with 10 significant digits.
//!
//! | command       | CSV columns                                            |
//! |---------------|--------------------------------------------------------|
//! | `symbol`      | `theta,f_a<alpha>...`                                  |
//! | `bounds`      | `theta,f_a0,f_a<alpha>,f_a2` (odd p)                   |
//! |               | `theta,f_a0,f_a<alpha>,above_threshold` (even p)       |
//! | `eigs`        | `index,toeplitz,collocation,symbol`                    |
//! | `convergence` | `alpha,p,n,error,order`                                |

mod verify;

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fracderiv::FractionalOrder;
use crate::manufactured::{convergence_study, ManufacturedSolution};
use crate::spectra::{spectrum_comparison, EigenReport};
use crate::symbol::{
    decay_ratio_check, even_bound_threshold, even_degree_bound_check, odd_degree_bound_check,
    sandwich_check, uniform_grid, DecayReport, EvenBoundReport, SandwichReport, SymbolEvaluator,
};

pub use verify::{cmd_verify, Check, Suite, VerifyReport};

/// Version of every JSON document written by the commands.
pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "COLLOC_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(Error::Invalid(format!("unknown format '{s}' (csv|json)"))),
        }
    }
}

/// Sizes the global rayon pool from `COLLOC_THREADS`, if set. Returns the
/// thread count that was requested.
pub fn configure_threads() -> Result<Option<usize>> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(None);
    };
    let threads: usize =
        raw.trim().parse().ok().filter(|t| *t > 0).ok_or_else(|| {
            Error::Invalid(format!("{THREADS_ENV}={raw} is not a positive integer"))
        })?;
    // a pool that is already running keeps its size
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(Some(threads))
}

/// Output of a command: the table and, where the command has verdicts, a
/// JSON report.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub table: String,
    pub report: Option<String>,
    pub passed: bool,
}

impl CommandOutput {
    fn table(table: String) -> Self {
        Self {
            table,
            report: None,
            passed: true,
        }
    }
}

fn num(x: f64) -> String {
    format!("{x:.9e}")
}

fn alpha_label(alpha: f64) -> String {
    format!("f_a{alpha}")
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn csv(header: &[String], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn require_alphas(alphas: &[f64]) -> Result<()> {
    if alphas.is_empty() {
        return Err(Error::Invalid("at least one --alpha is required".into()));
    }
    Ok(())
}

/// `f^{p,alpha}` for every alpha on `resolution` uniform angles of `[0, pi]`.
pub fn cmd_symbol(
    p: usize,
    alphas: &[f64],
    resolution: usize,
    format: Format,
) -> Result<CommandOutput> {
    require_alphas(alphas)?;
    if resolution < 2 {
        return Err(Error::Invalid(format!(
            "resolution {resolution} must be at least 2"
        )));
    }
    let evs = alphas
        .iter()
        .map(|&a| SymbolEvaluator::new(p, a))
        .collect::<Result<Vec<_>>>()?;
    let theta = uniform_grid(0.0, PI, resolution);
    let columns = evs
        .par_iter()
        .map(|ev| {
            theta
                .iter()
                .map(|&t| ev.eval(t))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let table = match format {
        Format::Csv => {
            let header: Vec<String> = std::iter::once("theta".to_string())
                .chain(alphas.iter().map(|a| alpha_label(*a)))
                .collect();
            let rows: Vec<Vec<String>> = theta
                .iter()
                .enumerate()
                .map(|(k, t)| {
                    std::iter::once(num(*t))
                        .chain(columns.iter().map(|c| num(c[k])))
                        .collect()
                })
                .collect();
            csv(&header, &rows)
        }
        Format::Json => to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "p": p,
            "alpha": alphas,
            "theta": theta,
            "f": columns,
        })),
    };
    Ok(CommandOutput::table(table))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub schema_version: u32,
    pub p: usize,
    pub alpha: f64,
    pub sandwich: SandwichReport,
    pub decay: DecayReport,
    /// `f^{p,0} <= f^{p,alpha} <= f^{p,2}` on the grid, odd `p`.
    pub odd_bound: Option<bool>,
    pub even_bound: Option<EvenBoundReport>,
    pub passed: bool,
}

/// High-frequency bounds for one `(p, alpha)` on `resolution` angles of `[1, pi]`.
pub fn cmd_bounds(
    p: usize,
    alpha: f64,
    resolution: usize,
    format: Format,
) -> Result<CommandOutput> {
    if resolution < 2 {
        return Err(Error::Invalid(format!(
            "resolution {resolution} must be at least 2"
        )));
    }
    let ev = SymbolEvaluator::new(p, alpha)?;
    let f0 = SymbolEvaluator::new(p, 0.0)?;
    let f2 = SymbolEvaluator::new(p, 2.0)?;
    let theta = uniform_grid(1.0, PI, resolution);
    let odd = p % 2 == 1;
    let a = even_bound_threshold(alpha);
    let rows = theta
        .par_iter()
        .map(|&t| {
            let last = if odd {
                f2.eval(t)?
            } else {
                f64::from(u8::from(t >= a))
            };
            Ok([t, f0.eval(t)?, ev.eval(t)?, last])
        })
        .collect::<Result<Vec<_>>>()?;

    let sandwich = sandwich_check(&ev, &uniform_grid(1e-3, PI, resolution.max(200)))?;
    let decay = decay_ratio_check(&ev)?;
    let (odd_bound, even_bound) = if odd {
        (Some(odd_degree_bound_check(p, alpha, &theta)?), None)
    } else {
        (None, Some(even_degree_bound_check(p, alpha, resolution)?))
    };
    let passed = sandwich.lower_bound_holds
        && sandwich.grid_stable
        && decay.holds
        && odd_bound.unwrap_or(true)
        && even_bound.as_ref().is_none_or(|r| r.holds_above_threshold);
    let report = BoundsReport {
        schema_version: SCHEMA_VERSION,
        p,
        alpha,
        sandwich,
        decay,
        odd_bound,
        even_bound,
        passed,
    };

    let last = if odd {
        "f_a2".to_string()
    } else {
        "above_threshold".to_string()
    };
    let table = match format {
        Format::Csv => {
            let header = [
                "theta".to_string(),
                "f_a0".to_string(),
                alpha_label(alpha),
                last,
            ];
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let tail = if odd {
                        num(r[3])
                    } else {
                        format!("{}", r[3] as u8)
                    };
                    vec![num(r[0]), num(r[1]), num(r[2]), tail]
                })
                .collect();
            csv(&header, &body)
        }
        Format::Json => to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "p": p,
            "alpha": alpha,
            "threshold": if odd { None } else { Some(a) },
            "theta": theta,
            "f_a0": rows.iter().map(|r| r[1]).collect::<Vec<_>>(),
            "f_alpha": rows.iter().map(|r| r[2]).collect::<Vec<_>>(),
            last: rows.iter().map(|r| r[3]).collect::<Vec<_>>(),
        })),
    };
    Ok(CommandOutput {
        table,
        report: Some(to_json(&report)),
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct ReportSummary {
    outlier_budget: usize,
    outliers: usize,
    deviation: f64,
    max_imag: f64,
}

impl From<&EigenReport> for ReportSummary {
    fn from(r: &EigenReport) -> Self {
        Self {
            outlier_budget: r.outlier_budget,
            outliers: r.outliers,
            deviation: r.deviation,
            max_imag: r.max_imag,
        }
    }
}

/// Sorted spectra of `T` and `n^{-alpha} A` next to sorted symbol samples,
/// one CSV per alpha (concatenated, each with its header) or one JSON array.
pub fn cmd_eigs(p: usize, n: usize, alphas: &[f64], format: Format) -> Result<CommandOutput> {
    require_alphas(alphas)?;
    let comparisons = alphas
        .par_iter()
        .map(|&a| spectrum_comparison(p, n, a, 0.0, 0.0))
        .collect::<Result<Vec<_>>>()?;
    let mut table = String::new();
    let mut reports = Vec::new();
    for c in &comparisons {
        let (t, a) = (&c.toeplitz, &c.collocation);
        match format {
            Format::Csv => {
                if alphas.len() > 1 {
                    writeln!(table, "# alpha={}", c.alpha).unwrap();
                }
                let header = ["index", "toeplitz", "collocation", "symbol"].map(String::from);
                let rows: Vec<Vec<String>> = (0..t.eigenvalues.len())
                    .map(|k| {
                        vec![
                            (k + 1).to_string(),
                            num(t.eigenvalues[k]),
                            num(a.eigenvalues[k]),
                            num(t.symbol_samples[k]),
                        ]
                    })
                    .collect();
                table.push_str(&csv(&header, &rows));
            }
            Format::Json => {}
        }
        reports.push(json!({
            "alpha": c.alpha,
            "toeplitz": ReportSummary::from(t),
            "collocation": ReportSummary::from(a),
        }));
    }
    let report =
        to_json(&json!({ "schema_version": SCHEMA_VERSION, "p": p, "n": n, "spectra": reports }));
    if format == Format::Json {
        table = to_json(
            &json!({ "schema_version": SCHEMA_VERSION, "p": p, "n": n, "spectra": comparisons }),
        );
    }
    Ok(CommandOutput {
        table,
        report: Some(report),
        passed: true,
    })
}

/// Errors and observed orders in long form over the `(alpha, p)` grid.
pub fn cmd_convergence(
    solution: &str,
    ps: &[usize],
    alphas: &[f64],
    ns: &[usize],
    format: Format,
) -> Result<CommandOutput> {
    require_alphas(alphas)?;
    if ps.is_empty() || ns.is_empty() {
        return Err(Error::Invalid(
            "convergence needs at least one degree and one mesh size".into(),
        ));
    }
    let sol = ManufacturedSolution::by_name(solution)
        .ok_or_else(|| Error::Invalid(format!("unknown solution '{solution}' (poly33|sinpix2)")))?;
    let cells: Vec<(f64, usize)> = alphas
        .iter()
        .flat_map(|&a| ps.iter().map(move |&p| (a, p)))
        .collect();
    let tables = cells
        .par_iter()
        .map(|&(a, p)| convergence_study(p, &FractionalOrder::riesz(a)?, &sol, ns))
        .collect::<Result<Vec<_>>>()?;
    let table = match format {
        Format::Csv => {
            let header = ["alpha", "p", "n", "error", "order"].map(String::from);
            let rows: Vec<Vec<String>> = tables
                .iter()
                .flat_map(|t| {
                    t.rows.iter().map(move |r| {
                        vec![
                            num(t.alpha),
                            t.p.to_string(),
                            r.n.to_string(),
                            num(r.error),
                            r.order.map(num).unwrap_or_default(),
                        ]
                    })
                })
                .collect();
            csv(&header, &rows)
        }
        Format::Json => to_json(
            &json!({ "schema_version": SCHEMA_VERSION, "solution": solution, "tables": tables }),
        ),
    };
    Ok(CommandOutput::table(table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_csv_shape() {
        let out = cmd_symbol(3, &[1.5], 10, Format::Csv).unwrap();
        let lines: Vec<&str> = out.table.lines().collect();
        assert_eq!(lines[0], "theta,f_a1.5");
        assert_eq!(lines.len(), 11);
        let theta: Vec<f64> = lines[1..]
            .iter()
            .map(|l| l.split(',').next().unwrap().parse().unwrap())
            .collect();
        assert!(theta.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(lines[1], "0.000000000e0,0.000000000e0");
    }

    #[test]
    fn bounds_verdicts() {
        let odd = cmd_bounds(3, 1.5, 50, Format::Csv).unwrap();
        assert!(odd.passed);
        assert!(odd.table.starts_with("theta,f_a0,f_a1.5,f_a2\n"));
        let even = cmd_bounds(4, 1.3, 50, Format::Json).unwrap();
        assert!(even.passed);
        let report: serde_json::Value =
            serde_json::from_str(even.report.as_deref().unwrap()).unwrap();
        assert_eq!(report["schema_version"], 1);
        assert_eq!(report["even_bound"]["holds_above_threshold"], true);
    }

    #[test]
    fn convergence_long_form() {
        let out = cmd_convergence("poly33", &[2], &[1.2], &[4, 8], Format::Csv).unwrap();
        let lines: Vec<&str> = out.table.lines().collect();
        assert_eq!(lines[0], "alpha,p,n,error,order");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].ends_with(','));
        assert!(cmd_convergence("cosx", &[2], &[1.2], &[4], Format::Csv).is_err());
    }

    #[test]
    fn eigs_csv_rows() {
        let out = cmd_eigs(2, 8, &[1.5], Format::Csv).unwrap();
        assert_eq!(out.table.lines().count(), 1 + 8);
        assert!(out.report.unwrap().contains("\"deviation\""));
    }

    #[test]
    fn format_parse() {
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
    }
}
