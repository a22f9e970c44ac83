//! `tforge`: build Sheffer/Riordan triangles, compute exact closed-form
//! diagonal generating functions, and verify them against the triangles.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tforge_core::catalog::{self, TriangleSpec};
use tforge_core::diagonal::{
    riordan_diag_gfs_with_order, sheffer_diag_gfs_with_order, verify_stack_with_order,
    Normalization, RiordanMode,
};
use tforge_core::output::{
    render_catalog, render_stack, render_triangle, render_verify, OutputFormat,
};
use tforge_core::triangle::Triangle;
use tforge_core::TriangleKind;
use tforge_core::DEFAULT_ORDER;

#[derive(Parser)]
#[command(
    name = "tforge",
    version,
    about = "Exact Sheffer/Riordan triangle engine: triangles, diagonal \
             generating functions, and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in triangle catalog.
    Catalog {
        /// Output format: json, csv or markdown.
        #[arg(long, default_value = "markdown")]
        format: String,
    },
    /// Build a triangle and print its rows.
    Triangle {
        /// Catalog name, e.g. "stirling2" or "S2[3,1]".
        #[arg(long, conflicts_with = "spec")]
        name: Option<String>,
        /// Inline spec: "sheffer: g=<expr>, f=<expr>[, params: d=2,a=1]"
        /// (or "riordan: ...").
        #[arg(long)]
        spec: Option<String>,
        #[arg(long, default_value_t = 16)]
        rows: usize,
        #[arg(long, default_value = "markdown")]
        format: String,
    },
    /// Closed-form diagonal generating functions of a triangle.
    #[command(name = "diag-gf")]
    DiagGf {
        #[arg(long, conflicts_with = "spec")]
        name: Option<String>,
        #[arg(long)]
        spec: Option<String>,
        /// Largest diagonal index to compute.
        #[arg(long, default_value_t = 6)]
        dmax: usize,
        /// egf (Sheffer), lgf-pascal or eegf-factorial (Riordan);
        /// "auto" picks by kind.
        #[arg(long, default_value = "auto")]
        mode: String,
        /// none, or narayana (divide row d by (d+1)*t for d >= 1).
        #[arg(long, default_value = "none")]
        normalize: String,
        /// Number of expansion terms to print per diagonal.
        #[arg(long, default_value_t = 8)]
        expand: usize,
        #[arg(long, default_value = "markdown")]
        format: String,
    },
    /// Expand every closed form and compare it with the triangle.
    Verify {
        /// Catalog name, or "all" for the whole catalog.
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 6)]
        dmax: usize,
        #[arg(long, default_value_t = 12)]
        mmax: usize,
        #[arg(long, default_value = "markdown")]
        format: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// Working truncation order in the y direction; TFORGE_ORDER overrides
/// the default of 12.
fn working_order() -> Result<usize, String> {
    match std::env::var("TFORGE_ORDER") {
        Ok(text) => text
            .parse::<usize>()
            .map_err(|_| format!("TFORGE_ORDER must be a positive integer, got {text:?}")),
        Err(_) => Ok(DEFAULT_ORDER),
    }
}

fn parse_format(text: &str) -> Result<OutputFormat, String> {
    text.parse::<OutputFormat>().map_err(|e| e.to_string())
}

fn resolve_spec(name: &Option<String>, spec: &Option<String>) -> Result<TriangleSpec, String> {
    match (name, spec) {
        (Some(n), None) => catalog::lookup(n).map_err(|e| e.to_string()),
        (None, Some(s)) => TriangleSpec::parse_inline(s).map_err(|e| e.to_string()),
        _ => Err("exactly one of --name or --spec is required".to_string()),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Catalog { format } => {
            let format = parse_format(&format)?;
            print!("{}", ensure_newline(render_catalog(format)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Triangle { name, spec, rows, format } => {
            let format = parse_format(&format)?;
            if rows == 0 {
                return Err("--rows must be at least 1".to_string());
            }
            let spec = resolve_spec(&name, &spec)?;
            let tri = Triangle::build(&spec, rows).map_err(|e| e.to_string())?;
            print!("{}", ensure_newline(render_triangle(&tri, format)));
            Ok(ExitCode::SUCCESS)
        }
        Command::DiagGf { name, spec, dmax, mode, normalize, expand, format } => {
            let format = parse_format(&format)?;
            let spec = resolve_spec(&name, &spec)?;
            let order = Some(working_order()?);
            let stack = match (mode.as_str(), spec.kind) {
                ("auto", TriangleKind::Sheffer) | ("egf", _) => {
                    sheffer_diag_gfs_with_order(&spec, dmax, order)
                }
                ("auto", TriangleKind::Riordan) | ("lgf-pascal", _) => {
                    riordan_diag_gfs_with_order(&spec, dmax, RiordanMode::LgfPascal, order)
                }
                ("eegf-factorial", _) => {
                    riordan_diag_gfs_with_order(&spec, dmax, RiordanMode::EegfFactorial, order)
                }
                (other, _) => {
                    return Err(format!(
                        "unknown mode {other:?}: expected auto, egf, lgf-pascal or eegf-factorial"
                    ))
                }
            }
            .map_err(|e| e.to_string())?;
            let normalize = match normalize.as_str() {
                "none" => Normalization::None,
                "narayana" => Normalization::NarayanaRow,
                other => {
                    return Err(format!(
                        "unknown normalization {other:?}: expected none or narayana"
                    ))
                }
            };
            let text =
                render_stack(&stack, normalize, expand, format).map_err(|e| e.to_string())?;
            print!("{}", ensure_newline(text));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { name, dmax, mmax, format } => {
            let format = parse_format(&format)?;
            let order = Some(working_order()?.max(dmax + 1));
            let specs: Vec<TriangleSpec> = if name == "all" {
                catalog::names()
                    .iter()
                    .map(|n| catalog::lookup(n).expect("catalog entries resolve"))
                    .collect()
            } else {
                vec![catalog::lookup(&name).map_err(|e| e.to_string())?]
            };
            let mut all_pass = true;
            for spec in &specs {
                let report = verify_stack_with_order(spec, dmax, mmax, order)
                    .map_err(|e| e.to_string())?;
                all_pass &= report.all_pass();
                print!("{}", ensure_newline(render_verify(&report, format)));
            }
            Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn ensure_newline(mut text: String) -> String {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    text
}
