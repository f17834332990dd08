use clap::{Args, Subcommand};
use serde_json::json;

use bernstein_kit::{BernsteinPoly, Error, Interval, Rational, Scalar};

use crate::io_util::{pretty_json, read_json, write_output, CliError};
use crate::{Backend, OutputOpts};

#[derive(Args, Debug)]
pub struct ConvertArgs {
    #[command(subcommand)]
    transform: Transform,
}

#[derive(Args, Debug, Clone)]
struct FileOpts {
    /// Input polynomial JSON: {"a":..., "b":..., "m":..., "coeffs":[...]}
    #[arg(long)]
    input: std::path::PathBuf,
    /// Number backend for parsing and arithmetic
    #[arg(long, value_enum, default_value = "float")]
    backend: Backend,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Subcommand, Debug)]
enum Transform {
    /// Degree-elevate the polynomial
    Elevate {
        #[arg(long, default_value_t = 1)]
        times: u32,
        #[command(flatten)]
        file: FileOpts,
    },
    /// Multiply by ((x-a)/(b-a))^d
    Mulxi {
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[command(flatten)]
        file: FileOpts,
    },
    /// Multiply by ((b-x)/(b-a))^d
    Muleta {
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[command(flatten)]
        file: FileOpts,
    },
    /// Divide exactly by ((x-a)/(b-a))^j
    Divxi {
        #[arg(long, default_value_t = 1)]
        j: u32,
        #[command(flatten)]
        file: FileOpts,
    },
    /// Divide exactly by ((b-x)/(b-a))^j
    Diveta {
        #[arg(long, default_value_t = 1)]
        j: u32,
        #[command(flatten)]
        file: FileOpts,
    },
    /// Expand into monomial coefficients of x
    ToMonomial {
        #[command(flatten)]
        file: FileOpts,
    },
    /// Rebuild Bernstein form from {"a":..., "b":..., "monomial":[...]}
    FromMonomial {
        /// Target degree (defaults to the monomial degree)
        #[arg(long)]
        n: Option<u32>,
        #[command(flatten)]
        file: FileOpts,
    },
}

fn division_error(e: Error) -> CliError {
    match e {
        Error::NotDivisible { .. } => CliError::Failure(e.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

fn apply<S: Scalar>(
    transform: &Transform,
    input: &serde_json::Value,
) -> Result<serde_json::Value, CliError> {
    match transform {
        Transform::FromMonomial { n, file: _ } => {
            let obj = input
                .as_object()
                .ok_or_else(|| CliError::Usage("monomial JSON must be an object".into()))?;
            let get = |name: &str| {
                obj.get(name)
                    .ok_or_else(|| CliError::Usage(format!("monomial JSON missing field {name:?}")))
            };
            let a = S::from_json(get("a")?).map_err(|e| CliError::Usage(e.to_string()))?;
            let b = S::from_json(get("b")?).map_err(|e| CliError::Usage(e.to_string()))?;
            let interval = Interval::new(a, b).map_err(|e| CliError::Usage(e.to_string()))?;
            let coeffs = get("monomial")?
                .as_array()
                .ok_or_else(|| CliError::Usage("field \"monomial\" must be an array".into()))?
                .iter()
                .map(S::from_json)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let degree = n.unwrap_or((coeffs.len().max(1) - 1) as u32);
            let poly = BernsteinPoly::from_monomial(&coeffs, interval, degree)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(poly.to_json())
        }
        other => {
            let poly = BernsteinPoly::<S>::from_json(input)
                .map_err(|e| CliError::Usage(format!("invalid polynomial file: {e}")))?;
            match other {
                Transform::Elevate { times, .. } => Ok(poly.elevate(*times).to_json()),
                Transform::Mulxi { d, .. } => Ok(poly.multiply_by_xi_power(*d).to_json()),
                Transform::Muleta { d, .. } => Ok(poly.multiply_by_eta_power(*d).to_json()),
                Transform::Divxi { j, .. } => poly
                    .divide_by_xi_power(*j)
                    .map(|q| q.to_json())
                    .map_err(division_error),
                Transform::Diveta { j, .. } => poly
                    .divide_by_eta_power(*j)
                    .map(|q| q.to_json())
                    .map_err(division_error),
                Transform::ToMonomial { .. } => {
                    let mono = poly.to_monomial();
                    Ok(json!({
                        "a": poly.interval().a().to_json(),
                        "b": poly.interval().b().to_json(),
                        "monomial": mono.iter().map(Scalar::to_json).collect::<Vec<_>>(),
                    }))
                }
                Transform::FromMonomial { .. } => unreachable!(),
            }
        }
    }
}

fn file_opts(transform: &Transform) -> &FileOpts {
    match transform {
        Transform::Elevate { file, .. }
        | Transform::Mulxi { file, .. }
        | Transform::Muleta { file, .. }
        | Transform::Divxi { file, .. }
        | Transform::Diveta { file, .. }
        | Transform::ToMonomial { file }
        | Transform::FromMonomial { file, .. } => file,
    }
}

pub fn run(args: ConvertArgs) -> Result<(), CliError> {
    let opts = file_opts(&args.transform).clone();
    let input = read_json(&opts.input)?;
    let result = match opts.backend {
        Backend::Rational => apply::<Rational>(&args.transform, &input)?,
        Backend::Float => apply::<f64>(&args.transform, &input)?,
    };
    write_output(&opts.output.out, &pretty_json(&result))
}
