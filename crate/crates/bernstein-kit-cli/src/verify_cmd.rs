use clap::Args;

use bernstein_kit::verify::{run_orthogonality_suite, run_suite, Suite, SuiteReport};
use bernstein_kit::{Rational, Scalar};

use crate::io_util::{pretty_json, write_output, CliError};
use crate::{effective_max_n, parse_scalar, Backend};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite: recurrence, derivatives, subdivision, product, algebra,
    /// elevation, distribution, orthogonality, or all
    #[arg(long)]
    suite: String,
    /// Number backend for the identity checks
    #[arg(long, value_enum, default_value = "rational")]
    backend: Backend,
    /// Degree cap (bounded by BERNSTEIN_KIT_MAX_N, default 10)
    #[arg(long)]
    max_n: Option<u32>,
    /// Identity tolerance; must be 0 for the rational backend and positive
    /// for the float backend (default 1e-9)
    #[arg(long)]
    tol: Option<String>,
    /// Restrict the orthogonality suite to one family (bernstein | szasz)
    #[arg(long)]
    family: Option<String>,
    /// Restrict the orthogonality suite to one weight sequence
    /// (derived | example)
    #[arg(long)]
    weights: Option<String>,
    /// Report path (stdout when omitted); the report is always JSON
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

fn validate_family_filters(args: &VerifyArgs, suite: Suite) -> Result<(), CliError> {
    if args.family.is_some() || args.weights.is_some() {
        if suite != Suite::Orthogonality {
            return Err(CliError::Usage(
                "--family/--weights apply only to --suite orthogonality".into(),
            ));
        }
        if let Some(f) = &args.family {
            if f != "bernstein" && f != "szasz" {
                return Err(CliError::Usage(format!(
                    "invalid value for --family: {f:?} (expected bernstein or szasz)"
                )));
            }
        }
        if let Some(w) = &args.weights {
            if w != "derived" && w != "example" {
                return Err(CliError::Usage(format!(
                    "invalid value for --weights: {w:?} (expected derived or example)"
                )));
            }
        }
    }
    Ok(())
}

fn run_backend<S: Scalar>(args: &VerifyArgs, suite: Suite, tol: S) -> SuiteReport {
    let max_n = effective_max_n(args.max_n).expect("validated earlier");
    if suite == Suite::Orthogonality && (args.family.is_some() || args.weights.is_some()) {
        run_orthogonality_suite::<S>(max_n, &tol, args.family.as_deref(), args.weights.as_deref())
    } else {
        run_suite::<S>(suite, max_n, &tol)
    }
}

pub fn run(args: VerifyArgs) -> Result<(), CliError> {
    let suite = Suite::parse(&args.suite).ok_or_else(|| {
        CliError::Usage(format!(
            "invalid value for --suite: {:?} (expected one of recurrence, derivatives, \
             subdivision, product, algebra, elevation, distribution, orthogonality, all)",
            args.suite
        ))
    })?;
    validate_family_filters(&args, suite)?;
    effective_max_n(args.max_n)?;

    let report = match args.backend {
        Backend::Rational => {
            let zero = Rational::from_int(0);
            let tol = match &args.tol {
                None => zero,
                Some(raw) => {
                    let tol = parse_scalar::<Rational>("--tol", raw)?;
                    if tol != zero {
                        return Err(CliError::Usage(
                            "--tol must be 0 in the rational backend (identities are exact)".into(),
                        ));
                    }
                    tol
                }
            };
            run_backend::<Rational>(&args, suite, tol)
        }
        Backend::Float => {
            let tol = match &args.tol {
                None => 1e-9_f64,
                Some(raw) => parse_scalar::<f64>("--tol", raw)?,
            };
            if tol.is_nan() || tol <= 0.0 {
                return Err(CliError::Usage(
                    "--tol must be positive in the float backend".into(),
                ));
            }
            run_backend::<f64>(&args, suite, tol)
        }
    };

    write_output(&args.out, &pretty_json(&report.to_json()))?;
    if report.pass {
        Ok(())
    } else {
        let failing: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.identity.as_str())
            .collect();
        Err(CliError::Failure(format!(
            "verification FAILED: {}",
            failing.join(", ")
        )))
    }
}
