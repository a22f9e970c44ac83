//! Machine-readable rendering of catalog listings, triangles, stacks,
//! and verification reports.
//!
//! Every rational is serialized as the exact string `p/q` (integers as
//! `p`); no floating point appears anywhere. JSON key order is fixed,
//! so identical inputs yield byte-identical output and parsing followed
//! by re-serialization is the identity.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::catalog::{CatalogEntry, TriangleSpec, CATALOG};
use crate::diagonal::{GFStack, Normalization, NumRow, VerifyReport};
use crate::rational::ArithError;
use crate::ratfunc::format_shaped;
use crate::triangle::Triangle;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownFormat(pub String);

impl fmt::Display for UnknownFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown format {:?}: expected json, csv or markdown", self.0)
    }
}

impl std::error::Error for UnknownFormat {}

impl FromStr for OutputFormat {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "markdown" => Ok(OutputFormat::Markdown),
            other => Err(UnknownFormat(other.to_string())),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Markdown => "markdown",
        })
    }
}

fn spec_json(spec: &TriangleSpec) -> Value {
    let mut params = Map::new();
    for (k, v) in &spec.params {
        params.insert(k.clone(), Value::String(v.to_string()));
    }
    json!({
        "name": spec.name.clone().map_or(Value::Null, Value::String),
        "kind": spec.kind.to_string(),
        "g": spec.g_text(),
        "f": spec.f_text(),
        "params": Value::Object(params),
    })
}

fn entry_json(e: &CatalogEntry) -> Value {
    let mut params = Map::new();
    for (k, v) in e.params {
        params.insert((*k).to_string(), Value::String(v.to_string()));
    }
    json!({
        "name": e.name,
        "kind": e.kind.to_string(),
        "g": e.g,
        "f": e.f,
        "params": Value::Object(params),
        "oeis": e.oeis,
    })
}

fn params_text(e: &CatalogEntry) -> String {
    e.params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// The catalog listing.
pub fn render_catalog(format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let items: Vec<Value> = CATALOG.iter().map(entry_json).collect();
            serde_json::to_string(&Value::Array(items)).expect("serializable")
        }
        OutputFormat::Csv => {
            let mut out = String::from("name,kind,g,f,params,oeis\n");
            for e in CATALOG {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    e.name,
                    e.kind,
                    e.g,
                    e.f,
                    params_text(e),
                    e.oeis
                ));
            }
            out
        }
        OutputFormat::Markdown => {
            let mut out = String::from(
                "| name | kind | g | f | params | OEIS |\n|---|---|---|---|---|---|\n",
            );
            for e in CATALOG {
                out.push_str(&format!(
                    "| {} | {} | `{}` | `{}` | {} | {} |\n",
                    e.name,
                    e.kind,
                    e.g,
                    e.f,
                    params_text(e),
                    e.oeis
                ));
            }
            out
        }
    }
}

/// Triangle rows.
pub fn render_triangle(tri: &Triangle, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let rows: Vec<Value> = (0..tri.rows())
                .map(|n| {
                    Value::Array(
                        tri.row(n).iter().map(|c| Value::String(c.to_string())).collect(),
                    )
                })
                .collect();
            let doc = json!({
                "spec": spec_json(tri.spec()),
                "rows": Value::Array(rows),
            });
            serde_json::to_string(&doc).expect("serializable")
        }
        OutputFormat::Csv => {
            let mut out = String::new();
            for n in 0..tri.rows() {
                let line: Vec<String> = tri.row(n).iter().map(|c| c.to_string()).collect();
                out.push_str(&line.join(","));
                out.push('\n');
            }
            out
        }
        OutputFormat::Markdown => {
            let width = tri.rows();
            let mut out = String::from("| n \\ m |");
            for m in 0..width {
                out.push_str(&format!(" {m} |"));
            }
            out.push('\n');
            out.push_str("|---|");
            out.push_str(&"---|".repeat(width));
            out.push('\n');
            for n in 0..tri.rows() {
                out.push_str(&format!("| {n} |"));
                for m in 0..width {
                    if m <= n {
                        out.push_str(&format!(" {} |", tri.entry(n, m)));
                    } else {
                        out.push_str("  |");
                    }
                }
                out.push('\n');
            }
            out
        }
    }
}

/// Diagonal generating-function stack, printing the first `expand`
/// expansion terms per diagonal.
pub fn render_stack(
    stack: &GFStack,
    normalize: Normalization,
    expand: usize,
    format: OutputFormat,
) -> Result<String, ArithError> {
    let expand = expand.max(1) - 1; // highest power of t
    let rows = crate::diagonal::numerator_triangle(stack, normalize);
    match format {
        OutputFormat::Json => {
            let mut results = Vec::new();
            for (entry, row) in stack.entries.iter().zip(&rows) {
                let expansion: Vec<Value> = entry
                    .gf
                    .taylor(expand)?
                    .iter()
                    .map(|c| Value::String(c.to_string()))
                    .collect();
                let mut obj = Map::new();
                obj.insert("d".into(), json!(entry.d));
                match row {
                    NumRow::Coeffs(cs) => {
                        obj.insert(
                            "numerator".into(),
                            Value::Array(
                                cs.iter().map(|c| Value::String(c.to_string())).collect(),
                            ),
                        );
                    }
                    NumRow::Irregular { message } => {
                        obj.insert("numerator".into(), Value::Null);
                        obj.insert("irregular".into(), Value::String(message.clone()));
                    }
                }
                match &entry.shape {
                    Some((c, k)) => {
                        obj.insert("den_base".into(), Value::String(c.to_string()));
                        obj.insert("den_power".into(), json!(k));
                    }
                    None => {
                        obj.insert("den_base".into(), Value::Null);
                        obj.insert("den_power".into(), Value::Null);
                        obj.insert(
                            "denominator".into(),
                            Value::String(entry.gf.den().to_string()),
                        );
                    }
                }
                obj.insert("expansion".into(), Value::Array(expansion));
                results.push(Value::Object(obj));
            }
            let doc = json!({
                "spec": spec_json(&stack.spec),
                "source": stack.source.to_string(),
                "normalization": match normalize {
                    Normalization::None => "none",
                    Normalization::NarayanaRow => "narayana",
                },
                "results": Value::Array(results),
            });
            Ok(serde_json::to_string(&doc).expect("serializable"))
        }
        OutputFormat::Csv => {
            let mut out = String::from("d,den_base,den_power,numerator,expansion\n");
            for (entry, row) in stack.entries.iter().zip(&rows) {
                let nums = match row {
                    NumRow::Coeffs(cs) => cs
                        .iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                    NumRow::Irregular { .. } => "irregular".to_string(),
                };
                let (c, k) = match &entry.shape {
                    Some((c, k)) => (c.to_string(), k.to_string()),
                    None => ("irregular".to_string(), "irregular".to_string()),
                };
                let expansion = entry
                    .gf
                    .taylor(expand)?
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                out.push_str(&format!("{},{},{},{},{}\n", entry.d, c, k, nums, expansion));
            }
            Ok(out)
        }
        OutputFormat::Markdown => {
            let var = "t";
            let mut out = format!(
                "### {} ({})\n\n",
                stack.spec.display_name(),
                stack.source
            );
            for (entry, row) in stack.entries.iter().zip(&rows) {
                let gf_text = match &entry.shape {
                    Some((c, k)) => format_shaped(&entry.numerator, c, *k, var),
                    None => entry.gf.to_string(),
                };
                let expansion = entry
                    .gf
                    .taylor(expand)?
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                out.push_str(&format!("- d={}: `{}`  \n  expansion: {}", entry.d, gf_text, expansion));
                if let NumRow::Coeffs(cs) = row {
                    if normalize == Normalization::NarayanaRow {
                        let pretty: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                        out.push_str(&format!("  \n  normalized row: [{}]", pretty.join(", ")));
                    }
                }
                if let NumRow::Irregular { message } = row {
                    out.push_str(&format!("  \n  note: {message}"));
                }
                out.push('\n');
            }
            Ok(out)
        }
    }
}

/// Verification report; the full pass/fail matrix plus the
/// published-table comparison.
pub fn render_verify(report: &VerifyReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let sections: Vec<Value> = report
                .sections
                .iter()
                .map(|s| {
                    let mut matrix: Vec<Vec<bool>> =
                        vec![vec![false; report.m_max + 1]; report.d_max + 1];
                    for c in &s.cells {
                        matrix[c.d][c.m] = c.pass;
                    }
                    let failures: Vec<Value> = s
                        .failures()
                        .map(|c| {
                            json!({
                                "d": c.d,
                                "m": c.m,
                                "expected": c.expected.to_string(),
                                "got": c.got.to_string(),
                            })
                        })
                        .collect();
                    json!({
                        "source": s.source.to_string(),
                        "pass": s.all_pass(),
                        "matrix": matrix,
                        "failures": Value::Array(failures),
                    })
                })
                .collect();
            let published: Vec<Value> = report
                .published
                .iter()
                .map(|p| {
                    json!({
                        "d": p.d,
                        "matches": p.matches,
                        "printed": {
                            "numerator": p.printed_numerator.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                            "den_base": p.printed_shape.0.to_string(),
                            "den_power": p.printed_shape.1,
                        },
                        "computed": {
                            "numerator": p.computed_numerator.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                            "den_base": p.computed_shape.as_ref().map_or(Value::Null, |(c, _)| Value::String(c.to_string())),
                            "den_power": p.computed_shape.as_ref().map_or(Value::Null, |(_, k)| json!(k)),
                        },
                    })
                })
                .collect();
            let doc = json!({
                "name": report.name,
                "dmax": report.d_max,
                "mmax": report.m_max,
                "pass": report.all_pass(),
                "sections": Value::Array(sections),
                "published": Value::Array(published),
            });
            serde_json::to_string(&doc).expect("serializable")
        }
        OutputFormat::Csv => {
            let mut out = String::from("source,d,m,pass,expected,got\n");
            for s in &report.sections {
                for c in &s.cells {
                    out.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        s.source, c.d, c.m, c.pass, c.expected, c.got
                    ));
                }
            }
            out
        }
        OutputFormat::Markdown => {
            let mut out = format!(
                "## verify {} (dmax={}, mmax={})\n\n",
                report.name, report.d_max, report.m_max
            );
            for s in &report.sections {
                if s.all_pass() {
                    out.push_str(&format!(
                        "- {}: all {} cells match exactly\n",
                        s.source,
                        s.cells.len()
                    ));
                } else {
                    out.push_str(&format!("- {}: FAILURES\n", s.source));
                    for c in s.failures() {
                        out.push_str(&format!(
                            "  - d={}, m={}: triangle {} vs closed form {}\n",
                            c.d, c.m, c.expected, c.got
                        ));
                    }
                }
            }
            if !report.published.is_empty() {
                let mismatches: Vec<_> = report.published_mismatches().collect();
                if mismatches.is_empty() {
                    out.push_str("- published rows: all match\n");
                } else {
                    for p in mismatches {
                        let printed: Vec<String> =
                            p.printed_numerator.iter().map(|c| c.to_string()).collect();
                        let computed: Vec<String> =
                            p.computed_numerator.iter().map(|c| c.to_string()).collect();
                        out.push_str(&format!(
                            "- published row d={} differs (known misprint): printed [{}] / (1 - {} t)^{}, computed [{}]\n",
                            p.d,
                            printed.join(", "),
                            p.printed_shape.0,
                            p.printed_shape.1,
                            computed.join(", "),
                        ));
                    }
                }
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use crate::diagonal::{sheffer_diag_gfs, verify_stack};

    #[test]
    fn formats_parse() {
        assert_eq!("json".parse::<OutputFormat>().unwrap(), OutputFormat::Json);
        assert!("xml".parse::<OutputFormat>().is_err());
    }

    #[test]
    fn json_round_trips_byte_identical() {
        let spec = lookup("stirling2").unwrap();
        let stack = sheffer_diag_gfs(&spec, 3).unwrap();
        let text = render_stack(&stack, Normalization::None, 6, OutputFormat::Json).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&value).unwrap(), text);

        let report = verify_stack(&spec, 2, 6).unwrap();
        let text = render_verify(&report, OutputFormat::Json);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&value).unwrap(), text);
    }

    #[test]
    fn catalog_listing_mentions_stirling2() {
        let md = render_catalog(OutputFormat::Markdown);
        assert!(md.contains("stirling2"));
        assert!(md.contains("exp(s)-1"));
        let json = render_catalog(OutputFormat::Json);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(parsed.as_array().unwrap().len() >= 12);
    }

    #[test]
    fn triangle_csv_rows() {
        let tri = crate::triangle::Triangle::build(&lookup("pascal").unwrap(), 4).unwrap();
        let csv = render_triangle(&tri, OutputFormat::Csv);
        assert_eq!(csv.lines().last().unwrap(), "1,3,3,1");
    }

    #[test]
    fn stack_json_schema_fields() {
        let stack = sheffer_diag_gfs(&lookup("stirling2").unwrap(), 2).unwrap();
        let text = render_stack(&stack, Normalization::None, 8, OutputFormat::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let results = v["results"].as_array().unwrap();
        assert_eq!(results.len(), 3);
        assert_eq!(results[2]["den_base"], "1");
        assert_eq!(results[2]["den_power"], 5);
        assert_eq!(
            results[2]["expansion"].as_array().unwrap()[..4],
            [serde_json::json!("0"), serde_json::json!("1"), serde_json::json!("7"), serde_json::json!("25")]
        );
    }
}
