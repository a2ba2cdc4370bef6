//! `qxi`: expansion, identity verification, congruence checking, scanning,
//! and the full verification suite for the coefficients of xi(q).
//!
//! Exit codes: 0 success, 1 mathematical failure, 2 usage or parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qseries::congruence::{primitive_filter, scan, verify_congruence, CongruenceClaim};
use qseries::expr::{self, Expr};
use qseries::series::{ExactInts, Mod, Ring, Series};
use qseries::suite::{full_report, SuiteConfig};

#[derive(Parser)]
#[command(name = "qxi", version, about = "A laboratory for the q-series of the mock theta function xi")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of an expression.
    Expand {
        expression: String,
        #[arg(long, default_value_t = 200)]
        order: usize,
        /// Reduce coefficients modulo m.
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check an identity "LHS == RHS [order N] [mod m]".
    Verify {
        identity: String,
        /// Comparison order; overrides an [order N] clause.
        #[arg(long)]
        order: Option<usize>,
        /// Compare modulo m; overrides a [mod m] clause.
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Check that an expression vanishes on an arithmetic progression.
    Congruence {
        expression: String,
        /// The progression An+B, written "A,B".
        #[arg(long, value_parser = parse_progression)]
        progression: (usize, usize),
        #[arg(long = "mod")]
        modulus: u64,
        /// Number of progression terms to check.
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
    /// Search for vanishing arithmetic progressions modulo m.
    Scan {
        expression: String,
        #[arg(long = "mod")]
        modulus: u64,
        /// Largest progression step A to try.
        #[arg(long = "max-A")]
        max_step: usize,
        /// Number of progression terms a class must satisfy.
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the full catalog of identities, congruences, characterizations,
    /// and conjectures.
    PaperSuite {
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Divide all section orders by this factor.
        #[arg(long, default_value_t = 1)]
        order_scale: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn parse_progression(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| "expected \"A,B\"".to_owned())?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad step '{a}'"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad offset '{b}'"))?;
    if a == 0 || b >= a {
        return Err(format!("progression must satisfy 0 <= B < A, got A={a}, B={b}"));
    }
    Ok((a, b))
}

const USAGE_ERROR: u8 = 2;
const MATH_FAILURE: u8 = 1;

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(USAGE_ERROR)
}

fn parse_expression(text: &str) -> Result<Expr, ExitCode> {
    expr::parse(text).map_err(usage_error)
}

fn eval_exact(e: &Expr, order: usize) -> Result<Series<ExactInts>, ExitCode> {
    expr::evaluate(&ExactInts, e, order).map_err(usage_error)
}

fn eval_mod(e: &Expr, modulus: u64, order: usize) -> Result<Series<Mod>, ExitCode> {
    if !(2..1 << 32).contains(&modulus) {
        return Err(usage_error(format!("modulus must satisfy 2 <= m < 2^32, got {modulus}")));
    }
    expr::evaluate(&Mod::new(modulus), e, order).map_err(usage_error)
}

#[derive(Serialize)]
struct ExpansionDoc {
    expression: String,
    order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    modulus: Option<u64>,
    coeffs: Vec<String>,
}

fn coeff_strings<R: Ring>(s: &Series<R>) -> Vec<String> {
    let ring = s.ring();
    s.coeffs().iter().map(|c| ring.elem_to_string(c)).collect()
}

fn cmd_expand(expression: &str, order: usize, modulus: Option<u64>, format: Format) -> Result<(), ExitCode> {
    let e = parse_expression(expression)?;
    let coeffs = match modulus {
        Some(m) => coeff_strings(&eval_mod(&e, m, order)?),
        None => coeff_strings(&eval_exact(&e, order)?),
    };
    match format {
        Format::Text => {
            for (n, c) in coeffs.iter().enumerate() {
                println!("{n} {c}");
            }
        }
        Format::Json => {
            let doc = ExpansionDoc {
                expression: expr::print(&e),
                order,
                modulus,
                coeffs,
            };
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    Ok(())
}

fn cmd_verify(identity: &str, order: Option<usize>, modulus: Option<u64>) -> Result<(), ExitCode> {
    let check = match expr::parse_corpus_line(identity) {
        Ok(Some(check)) => check,
        Ok(None) => return Err(usage_error("empty identity")),
        Err(e) => return Err(usage_error(e)),
    };
    let order = order.or(check.order).unwrap_or(200);
    let modulus = modulus.or(check.modulus);
    let mismatch = match modulus {
        Some(m) => {
            let lhs = eval_mod(&check.lhs, m, order)?;
            let rhs = eval_mod(&check.rhs, m, order)?;
            lhs.first_mismatch(&rhs, order).expect("same ring")
                .map(|n| (n, lhs.ring().elem_to_string(lhs.coeff(n)), rhs.ring().elem_to_string(rhs.coeff(n))))
        }
        None => {
            let lhs = eval_exact(&check.lhs, order)?;
            let rhs = eval_exact(&check.rhs, order)?;
            lhs.first_mismatch(&rhs, order).expect("same ring")
                .map(|n| (n, lhs.ring().elem_to_string(lhs.coeff(n)), rhs.ring().elem_to_string(rhs.coeff(n))))
        }
    };
    match mismatch {
        None => {
            match modulus {
                Some(m) => println!("ok to order {order} (mod {m})"),
                None => println!("ok to order {order}"),
            }
            Ok(())
        }
        Some((n, l, r)) => {
            println!("mismatch at q^{n}: lhs {l}, rhs {r}");
            Err(ExitCode::from(MATH_FAILURE))
        }
    }
}

fn cmd_congruence(
    expression: &str,
    (step, offset): (usize, usize),
    modulus: u64,
    count: usize,
) -> Result<(), ExitCode> {
    let e = parse_expression(expression)?;
    if count == 0 {
        return Err(usage_error("count must be >= 1"));
    }
    let order = step * (count - 1) + offset;
    let series = eval_mod(&e, modulus, order)?;
    let claim = CongruenceClaim::plain(step, offset, modulus);
    let verdict = verify_congruence(&series, &claim, count).map_err(usage_error)?;
    match verdict.first_failure {
        None => {
            println!("{step}n+{offset} == 0 (mod {modulus}) holds for {count} terms");
            Ok(())
        }
        Some(n) => {
            let value = series.coeff(step * n + offset);
            println!(
                "{step}n+{offset} (mod {modulus}) fails at n={n}: coefficient of q^{} is {value}",
                step * n + offset
            );
            Err(ExitCode::from(MATH_FAILURE))
        }
    }
}

#[derive(Serialize)]
struct ScanDoc {
    expression: String,
    modulus: u64,
    max_step: usize,
    count: usize,
    classes: Vec<CongruenceClaim>,
    primitive: Vec<CongruenceClaim>,
}

fn cmd_scan(
    expression: &str,
    modulus: u64,
    max_step: usize,
    count: usize,
    format: Format,
) -> Result<(), ExitCode> {
    let e = parse_expression(expression)?;
    if max_step == 0 {
        return Err(usage_error("max-A must be >= 1"));
    }
    let order = max_step * count.max(1) - 1;
    let series = eval_mod(&e, modulus, order)?;
    let classes = scan(&series, max_step, count).map_err(usage_error)?;
    let primitive = primitive_filter(&classes);
    match format {
        Format::Text => {
            println!("classes ({}):", classes.len());
            for c in &classes {
                println!("  {}n+{} == 0 (mod {modulus})", c.step, c.offset);
            }
            println!("primitive ({}):", primitive.len());
            for c in &primitive {
                println!("  {}n+{} == 0 (mod {modulus})", c.step, c.offset);
            }
        }
        Format::Json => {
            let doc = ScanDoc {
                expression: expr::print(&e),
                modulus,
                max_step,
                count,
                classes,
                primitive,
            };
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    Ok(())
}

fn cmd_paper_suite(
    report_path: Option<&PathBuf>,
    order_scale: usize,
    format: Format,
) -> Result<(), ExitCode> {
    if order_scale == 0 {
        return Err(usage_error("order-scale must be >= 1"));
    }
    let cfg = SuiteConfig::scaled(order_scale);
    let report = full_report(&cfg);
    let json = serde_json::to_string_pretty(&report).expect("serializable");
    if let Some(path) = report_path {
        std::fs::write(path, &json).map_err(usage_error)?;
    }
    match format {
        Format::Text => {
            for r in &report.results {
                let status = match r.status {
                    qseries::suite::Status::Pass => "pass",
                    qseries::suite::Status::Fail => "fail",
                    qseries::suite::Status::Skipped => "skipped",
                };
                let note = r.adjudication.as_deref().map(|a| format!("  [{a}]")).unwrap_or_default();
                println!("{:<24} {status}{note}", r.id);
            }
            println!(
                "pass {}  fail {}  skipped {}",
                report.summary.pass, report.summary.fail, report.summary.skipped
            );
        }
        Format::Json => println!("{json}"),
    }
    if report.has_blocking_failure() {
        Err(ExitCode::from(MATH_FAILURE))
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Expand { expression, order, modulus, format } => {
            cmd_expand(expression, *order, *modulus, *format)
        }
        Command::Verify { identity, order, modulus } => cmd_verify(identity, *order, *modulus),
        Command::Congruence { expression, progression, modulus, count } => {
            cmd_congruence(expression, *progression, *modulus, *count)
        }
        Command::Scan { expression, modulus, max_step, count, format } => {
            cmd_scan(expression, *modulus, *max_step, *count, *format)
        }
        Command::PaperSuite { report, order_scale, format } => {
            cmd_paper_suite(report.as_ref(), *order_scale, *format)
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}
