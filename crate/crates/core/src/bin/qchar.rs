use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qchar::borel::{borel_classes, Channel};
use qchar::bundles::VirtualBundle;
use qchar::character::bo;
use qchar::gw::{gw_equal, witt_equal, Backend, GWElement};
use qchar::localization::localize;
use qchar::operations::{chi_eval, omega_s2, psi};
use qchar::parse::{parse_bundle, parse_expression, parse_form, Parsed};
use qchar::poly::AmbientSpec;
use qchar::verify::run_verify;
use qchar::{Error, Result};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Parser)]
#[command(
    name = "qchar",
    version,
    about = "Exact Borel classes, power operations and Borel character values"
)]
struct Cli {
    /// q or fp:<prime>, prime not 2 or 3
    #[arg(long, global = true, default_value = "q")]
    backend: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a form (or report a bundle's rank); with a second form, compare the two
    Gw { expr: String, other: Option<String> },
    /// Borel classes b_1..b_D of a bundle
    Borel {
        #[arg(long)]
        bundle: String,
        #[arg(long)]
        ambient: Option<String>,
        #[arg(long, default_value = "gw")]
        channel: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// The additive operation chi~_{2n} of a bundle
    Chi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bundle: String,
        #[arg(long)]
        ambient: Option<String>,
        #[arg(long, default_value = "gw")]
        channel: String,
    },
    /// Coefficient of the desuspended operation chi~_{2n+4}
    Omega {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "gw")]
        channel: String,
    },
    /// The form psi_{2n+4} for odd n
    Psi {
        #[arg(long)]
        n: usize,
    },
    /// Borel character components through a total degree
    Bo {
        #[arg(long)]
        bundle: String,
        #[arg(long)]
        ambient: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// Run a verification suite
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
}

fn ambient_for(v: &VirtualBundle, given: Option<&str>, degree: usize) -> Result<Arc<AmbientSpec>> {
    let a = match given {
        Some(text) => AmbientSpec::parse(text)?,
        None => {
            let d =
                u32::try_from(degree + 1).map_err(|_| Error::InvalidIndex(degree.to_string()))?;
            AmbientSpec::hp_power(Some(d), v.max_index().max(1))?
        }
    };
    Ok(Arc::new(a))
}

fn emit(format: Format, text: String, latex: String, json: Value) {
    match format {
        Format::Text => print!("{}", with_newline(text)),
        Format::Latex => print!("{}", with_newline(latex)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&json).expect("serializable")
        ),
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn describe(x: &GWElement) -> (String, String, Value) {
    let mut text = format!("{x}\nrank {}", x.rank());
    for o in x.backend().orderings() {
        if let Ok(s) = x.signature(&o) {
            text.push_str(&format!("\nsignature at {} {s}", o.label));
        }
    }
    (text, x.to_latex(), x.to_json())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let backend: Backend = cli.backend.parse()?;
    let f = cli.format;
    match cli.command {
        Command::Gw { expr, other } => {
            let a = match parse_expression(&expr, backend)? {
                Parsed::Form(a) => a,
                Parsed::Bundle(v) => {
                    emit(
                        f,
                        format!("bundle {v}\nrank {}", v.rank()),
                        v.to_string(),
                        json!({ "bundle": v.to_json(), "rank": v.rank().to_string() }),
                    );
                    return Ok(ExitCode::SUCCESS);
                }
            };
            match other {
                None => {
                    let (t, l, j) = describe(&a);
                    emit(f, t, l, j);
                }
                Some(other) => {
                    let b = parse_form(&other, backend)?;
                    let (ge, we) = (gw_equal(&a, &b)?, witt_equal(&a, &b)?);
                    emit(
                        f,
                        format!("{a}\n{b}\nequal in GW: {ge}\nequal in W: {we}"),
                        format!("{} \\quad {}", a.to_latex(), b.to_latex()),
                        json!({ "lhs": a.to_json(), "rhs": b.to_json(), "gw_equal": ge, "witt_equal": we }),
                    );
                }
            }
        }
        Command::Borel {
            bundle,
            ambient,
            channel,
            max_degree,
        } => {
            let v = parse_bundle(&bundle)?;
            let a = ambient_for(&v, ambient.as_deref(), max_degree)?;
            let b = borel_classes(&v, &a, channel.parse::<Channel>()?, backend, max_degree)?;
            emit(f, b.to_text(), b.to_latex(), b.to_json());
        }
        Command::Chi {
            n,
            bundle,
            ambient,
            channel,
        } => {
            let v = parse_bundle(&bundle)?;
            let a = ambient_for(&v, ambient.as_deref(), n)?;
            let p = chi_eval(n, &v, &a, channel.parse()?, backend)?;
            emit(f, p.to_text(), p.to_latex(), p.to_json());
        }
        Command::Omega { n, channel } => {
            let c = omega_s2(n, channel.parse()?, backend)?;
            emit(f, c.value.to_string(), c.value.to_latex(), c.to_json());
        }
        Command::Psi { n } => {
            let p = psi(n, backend)?;
            let (mut t, l, mut j) = describe(&p);
            if let Ok(loc) = localize(&p) {
                t.push_str(&format!("\nlocalized {loc}"));
                j = json!({ "value": j, "localized": loc.to_json() });
            }
            emit(f, t, l, j);
        }
        Command::Bo {
            bundle,
            ambient,
            max_degree,
        } => {
            let v = parse_bundle(&bundle)?;
            let a = ambient_for(&v, ambient.as_deref(), max_degree)?;
            let value = bo(&v, &a, backend, max_degree)?;
            emit(f, value.to_text(), value.to_latex(), value.to_json());
        }
        Command::Verify { suite } => {
            let report = run_verify(&suite, backend)?;
            let text = report.to_text();
            emit(f, text.clone(), text, report.to_json());
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    if let Ok(n) = std::env::var("QCHAR_THREADS") {
        match n.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => eprintln!("warning: ignoring QCHAR_THREADS={n}"),
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
