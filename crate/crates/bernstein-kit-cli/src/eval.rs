use clap::{Args, Subcommand};
use serde_json::json;

use bernstein_kit::basis::{alternating_sum, eval_closed_form};
use bernstein_kit::stochastic::{binomial_pmf, szasz_basis, SzaszBasisParams};
use bernstein_kit::{BasisIndex, BezierCurve, Interval, Rational, Scalar};

use crate::io_util::{csv_table, pretty_json, read_json, write_output, CliError};
use crate::{parse_scalar, Backend, Format, OutputOpts};

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(subcommand)]
    object: EvalObject,
}

#[derive(Args, Debug, Clone)]
struct GridOpts {
    /// Interval left endpoint
    #[arg(long, default_value = "0")]
    a: String,
    /// Interval right endpoint
    #[arg(long, default_value = "1")]
    b: String,
    /// Number of grid points, endpoints included
    #[arg(long, default_value_t = 11)]
    grid: usize,
    /// Number backend
    #[arg(long, value_enum, default_value = "float")]
    backend: Backend,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Subcommand, Debug)]
enum EvalObject {
    /// Tabulate one basis function Y_k^n(x; a, b, m)
    Basis {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: i64,
        /// Normalization exponent (defaults to n)
        #[arg(long)]
        m: Option<i32>,
        #[command(flatten)]
        grid: GridOpts,
    },
    /// Tabulate the alternating-sum closed form ((a+b-2x)/(b-a))^n
    Altsum {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        grid: GridOpts,
    },
    /// Tabulate the binomial pmf (Y_0^n, ..., Y_n^n) at m = n
    Pmf {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        grid: GridOpts,
    },
    /// Tabulate a Szasz-Mirakjan type basis function (float backend)
    Szasz {
        /// Operator parameter (positive)
        #[arg(long)]
        n: u32,
        /// Basis index i
        #[arg(long)]
        i: u32,
        #[command(flatten)]
        grid: GridOpts,
    },
    /// Sample a Bezier curve from a JSON control-point file
    Curve {
        /// Curve JSON: {"a":..., "b":..., "points":[[...],...]}
        #[arg(long)]
        points_file: std::path::PathBuf,
        /// Number of grid points, endpoints included
        #[arg(long, default_value_t = 11)]
        grid: usize,
        /// Number backend
        #[arg(long, value_enum, default_value = "float")]
        backend: Backend,
        #[command(flatten)]
        output: OutputOpts,
    },
}

fn check_grid(count: usize) -> Result<(), CliError> {
    if count < 2 {
        return Err(CliError::Usage(
            "--grid must be at least 2 (endpoints are inclusive)".into(),
        ));
    }
    Ok(())
}

fn parse_interval<S: Scalar>(opts: &GridOpts) -> Result<Interval<S>, CliError> {
    let a = parse_scalar::<S>("--a", &opts.a)?;
    let b = parse_scalar::<S>("--b", &opts.b)?;
    Interval::new(a, b).map_err(|_| CliError::Usage("--a and --b must differ (a != b)".into()))
}

/// Tabulate `columns(x)` over the grid points and render CSV or JSON.
fn emit_table<S: Scalar>(
    object: &str,
    value_names: Vec<String>,
    opts: &GridOpts,
    xs: Vec<S>,
    mut row_values: impl FnMut(&S) -> Result<Vec<S>, CliError>,
) -> Result<(), CliError> {
    let mut rows: Vec<(S, Vec<S>)> = Vec::with_capacity(xs.len());
    for x in xs {
        let values = row_values(&x)?;
        rows.push((x, values));
    }
    let text = match opts.output.format {
        Format::Csv => {
            let mut header = vec!["x".to_string()];
            header.extend(value_names);
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|(x, vs)| {
                    let mut row = vec![x.to_string()];
                    row.extend(vs.iter().map(|v| v.to_string()));
                    row
                })
                .collect();
            csv_table(&header, &body)
        }
        Format::Json => {
            let json_rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|(x, vs)| {
                    let mut row = vec![x.to_json()];
                    row.extend(vs.iter().map(Scalar::to_json));
                    serde_json::Value::Array(row)
                })
                .collect();
            pretty_json(&json!({
                "object": object,
                "backend": S::backend_name(),
                "columns": std::iter::once("x".to_string())
                    .chain(value_names)
                    .collect::<Vec<_>>(),
                "rows": json_rows,
            }))
        }
    };
    write_output(&opts.output.out, &text)
}

pub fn run(args: EvalArgs) -> Result<(), CliError> {
    match args.object {
        EvalObject::Basis { n, k, m, grid } => match grid.backend {
            Backend::Rational => basis_table::<Rational>(n, k, m, &grid),
            Backend::Float => basis_table::<f64>(n, k, m, &grid),
        },
        EvalObject::Altsum { n, grid } => match grid.backend {
            Backend::Rational => altsum_table::<Rational>(n, &grid),
            Backend::Float => altsum_table::<f64>(n, &grid),
        },
        EvalObject::Pmf { n, grid } => match grid.backend {
            Backend::Rational => pmf_table::<Rational>(n, &grid),
            Backend::Float => pmf_table::<f64>(n, &grid),
        },
        EvalObject::Szasz { n, i, grid } => {
            if grid.backend == Backend::Rational {
                return Err(CliError::Usage(
                    "--backend rational is not available for szasz (transcendental values)".into(),
                ));
            }
            szasz_table(n, i, &grid)
        }
        EvalObject::Curve {
            points_file,
            grid,
            backend,
            output,
        } => {
            let value = read_json(&points_file)?;
            let opts = GridOpts {
                a: "0".into(),
                b: "1".into(),
                grid,
                backend,
                output,
            };
            match backend {
                Backend::Rational => curve_table::<Rational>(&value, &opts),
                Backend::Float => curve_table::<f64>(&value, &opts),
            }
        }
    }
}

fn basis_table<S: Scalar>(n: u32, k: i64, m: Option<i32>, opts: &GridOpts) -> Result<(), CliError> {
    check_grid(opts.grid)?;
    let iv = parse_interval::<S>(opts)?;
    let idx = BasisIndex::new(n, k, m.unwrap_or(n as i32));
    emit_table(
        "basis",
        vec!["value".into()],
        opts,
        iv.grid(opts.grid),
        |x| Ok(vec![eval_closed_form(idx, x, &iv)]),
    )
}

fn altsum_table<S: Scalar>(n: u32, opts: &GridOpts) -> Result<(), CliError> {
    check_grid(opts.grid)?;
    let iv = parse_interval::<S>(opts)?;
    emit_table(
        "altsum",
        vec!["value".into()],
        opts,
        iv.grid(opts.grid),
        |x| Ok(vec![alternating_sum(n, x, &iv)]),
    )
}

fn pmf_table<S: Scalar>(n: u32, opts: &GridOpts) -> Result<(), CliError> {
    check_grid(opts.grid)?;
    let iv = parse_interval::<S>(opts)?;
    let names = (0..=n).map(|k| format!("p{k}")).collect();
    emit_table("pmf", names, opts, iv.grid(opts.grid), |x| {
        binomial_pmf(n, x, &iv).map_err(|e| CliError::Usage(e.to_string()))
    })
}

fn szasz_table(n: u32, i: u32, opts: &GridOpts) -> Result<(), CliError> {
    check_grid(opts.grid)?;
    let iv = parse_interval::<f64>(opts)?;
    let params = SzaszBasisParams::new(n, iv.clone())
        .map_err(|e| CliError::Usage(format!("invalid --n: {e}")))?;
    emit_table(
        "szasz",
        vec!["value".into()],
        opts,
        iv.grid(opts.grid),
        |x| Ok(vec![szasz_basis(&params, i, *x)]),
    )
}

fn curve_table<S: Scalar>(value: &serde_json::Value, opts: &GridOpts) -> Result<(), CliError> {
    check_grid(opts.grid)?;
    let curve = BezierCurve::<S>::from_json(value)
        .map_err(|e| CliError::Usage(format!("invalid curve file: {e}")))?;
    let names = (0..curve.dimension()).map(|d| format!("c{d}")).collect();
    emit_table(
        "curve",
        names,
        opts,
        curve.interval().grid(opts.grid),
        |x| Ok(curve.eval(x)),
    )
}
