//! Browser bindings for the triangle engine.
//!
//! Exposes the three interactive operations the demo page uses: build a
//! triangle, compute the diagonal generating-function stack, and run the
//! closed-form verification. Inputs are either a catalog name
//! ("stirling2", "S2[3,1]") or an inline spec
//! ("sheffer: g=exp(s), f=exp(s)-1"); outputs are the same JSON /
//! markdown documents the CLI prints.
//!
//! The `*_impl` functions hold all logic and error strings; the exported
//! wrappers only translate errors into `JsError`, which can exist only
//! on the wasm target.

use wasm_bindgen::prelude::*;

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

fn parse_format(text: &str) -> Result<OutputFormat, String> {
    text.parse::<OutputFormat>().map_err(|e| e.to_string())
}

/// Inline specs carry a ':'; everything else is a catalog name.
fn resolve_spec(text: &str) -> Result<TriangleSpec, String> {
    if text.contains(':') {
        TriangleSpec::parse_inline(text).map_err(|e| e.to_string())
    } else {
        catalog::lookup(text.trim()).map_err(|e| e.to_string())
    }
}

fn triangle_impl(spec_text: &str, rows: u32, format: &str) -> Result<String, String> {
    let spec = resolve_spec(spec_text)?;
    let format = parse_format(format)?;
    let tri = Triangle::build(&spec, rows.max(1) as usize).map_err(|e| e.to_string())?;
    Ok(render_triangle(&tri, format))
}

fn diag_gf_impl(
    spec_text: &str,
    dmax: u32,
    mode: &str,
    normalize: &str,
    expand: u32,
    format: &str,
) -> Result<String, String> {
    let spec = resolve_spec(spec_text)?;
    let format = parse_format(format)?;
    let stack = match (mode, spec.kind) {
        ("auto", TriangleKind::Sheffer) | ("egf", _) => {
            sheffer_diag_gfs_with_order(&spec, dmax as usize, None)
        }
        ("auto", TriangleKind::Riordan) | ("lgf-pascal", _) => {
            riordan_diag_gfs_with_order(&spec, dmax as usize, RiordanMode::LgfPascal, None)
        }
        ("eegf-factorial", _) => {
            riordan_diag_gfs_with_order(&spec, dmax as usize, RiordanMode::EegfFactorial, None)
        }
        (other, _) => {
            return Err(format!(
                "unknown mode {other:?}: expected auto, egf, lgf-pascal or eegf-factorial"
            ))
        }
    }
    .map_err(|e| e.to_string())?;
    let normalize = match normalize {
        "none" | "" => Normalization::None,
        "narayana" => Normalization::NarayanaRow,
        other => {
            return Err(format!("unknown normalization {other:?}: expected none or narayana"))
        }
    };
    render_stack(&stack, normalize, expand as usize, format).map_err(|e| e.to_string())
}

fn verify_impl(spec_text: &str, dmax: u32, mmax: u32, format: &str) -> Result<String, String> {
    let spec = resolve_spec(spec_text)?;
    let format = parse_format(format)?;
    let report = verify_stack_with_order(&spec, dmax as usize, mmax as usize, None)
        .map_err(|e| e.to_string())?;
    Ok(render_verify(&report, format))
}

/// The full catalog as a JSON array.
#[wasm_bindgen]
pub fn catalog_json() -> String {
    render_catalog(OutputFormat::Json)
}

/// Triangle rows for a catalog name or inline spec.
#[wasm_bindgen]
pub fn triangle(spec_text: &str, rows: u32, format: &str) -> Result<String, JsError> {
    triangle_impl(spec_text, rows, format).map_err(|e| JsError::new(&e))
}

/// Diagonal generating functions with numerators, denominator shapes,
/// and expansions.
#[wasm_bindgen]
pub fn diag_gf(
    spec_text: &str,
    dmax: u32,
    mode: &str,
    normalize: &str,
    expand: u32,
    format: &str,
) -> Result<String, JsError> {
    diag_gf_impl(spec_text, dmax, mode, normalize, expand, format)
        .map_err(|e| JsError::new(&e))
}

/// Expands every closed form and compares it against the triangle.
#[wasm_bindgen]
pub fn verify(spec_text: &str, dmax: u32, mmax: u32, format: &str) -> Result<String, JsError> {
    verify_impl(spec_text, dmax, mmax, format).map_err(|e| JsError::new(&e))
}
