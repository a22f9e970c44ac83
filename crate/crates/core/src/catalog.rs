//! Triangle specifications and the named catalog.
//!
//! A `TriangleSpec` holds the two generating functions of a lower
//! triangular convolution matrix: exponential (`Sheffer`, column m has
//! e.g.f. g(s) f(s)^m / m!) or ordinary (`Riordan`, column m has o.g.f.
//! G(x) F(x)^m), with g(0) = 1, f(0) = 0 and f'(0) != 0.
//!
//! The catalog names the triangles used throughout the test data, plus
//! the two-parameter families `S2[d,a]` (generalized Stirling2) and
//! `S1phat[d,a]` (generalized signless Stirling1).

use std::fmt;

use num_integer::Integer;

use crate::expr::{parse, Bindings, EvalError, Expr, ParseError};
use crate::rational::Rational;
use crate::series::Series;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleKind {
    Sheffer,
    Riordan,
}

impl TriangleKind {
    /// Conventional variable name for display: `s` for exponential
    /// specs, `x` for ordinary ones (the parser accepts both).
    pub fn var(self) -> &'static str {
        match self {
            TriangleKind::Sheffer => "s",
            TriangleKind::Riordan => "x",
        }
    }
}

impl fmt::Display for TriangleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriangleKind::Sheffer => "Sheffer",
            TriangleKind::Riordan => "Riordan",
        })
    }
}

/// A parsed generating-function specification.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleSpec {
    pub kind: TriangleKind,
    pub g: Expr,
    pub f: Expr,
    pub params: Bindings,
    pub name: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpecError {
    Parse(ParseError),
    Eval(EvalError),
    /// g(0) must be 1.
    BadUnitTerm { got: Rational },
    /// f(0) must be 0.
    BadZeroTerm { got: Rational },
    /// f'(0) must be nonzero.
    ZeroLinearTerm,
    /// Malformed inline specification text.
    BadInline { message: String },
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Parse(e) => write!(f, "{e}"),
            SpecError::Eval(e) => write!(f, "{e}"),
            SpecError::BadUnitTerm { got } => {
                write!(f, "g must have constant term 1, got {got}")
            }
            SpecError::BadZeroTerm { got } => {
                write!(f, "f must have constant term 0, got {got}")
            }
            SpecError::ZeroLinearTerm => write!(f, "f must have a nonzero linear term"),
            SpecError::BadInline { message } => write!(f, "bad inline spec: {message}"),
        }
    }
}

impl std::error::Error for SpecError {}

impl From<ParseError> for SpecError {
    fn from(e: ParseError) -> Self {
        SpecError::Parse(e)
    }
}

impl From<EvalError> for SpecError {
    fn from(e: EvalError) -> Self {
        SpecError::Eval(e)
    }
}

impl TriangleSpec {
    pub fn new(kind: TriangleKind, g: Expr, f: Expr) -> Self {
        TriangleSpec { kind, g, f, params: Bindings::new(), name: None }
    }

    pub fn with_params(mut self, params: Bindings) -> Self {
        self.params = params;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Catalog name, or the rendered pair for inline specs.
    pub fn display_name(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => format!("{}: g={}, f={}", self.kind, self.g_text(), self.f_text()),
        }
    }

    pub fn g_text(&self) -> String {
        self.g.to_text(self.kind.var())
    }

    pub fn f_text(&self) -> String {
        self.f.to_text(self.kind.var())
    }

    /// Evaluates `g` (or `G`) as a truncated series.
    pub fn g_series(&self, order: usize) -> Result<Series<Rational>, SpecError> {
        Ok(self.g.to_series(&self.params, order, self.kind.var())?)
    }

    /// Evaluates `f` (or `F`) as a truncated series.
    pub fn f_series(&self, order: usize) -> Result<Series<Rational>, SpecError> {
        Ok(self.f.to_series(&self.params, order, self.kind.var())?)
    }

    /// Checks the defining constraints g(0) = 1, f(0) = 0, f'(0) != 0.
    pub fn validate(&self) -> Result<(), SpecError> {
        let g = self.g_series(1)?;
        if !g.coeff(0).is_one() {
            return Err(SpecError::BadUnitTerm { got: g.coeff(0).clone() });
        }
        let f = self.f_series(1)?;
        if !f.coeff(0).is_zero() {
            return Err(SpecError::BadZeroTerm { got: f.coeff(0).clone() });
        }
        if f.coeff(1).is_zero() {
            return Err(SpecError::ZeroLinearTerm);
        }
        Ok(())
    }

    /// Parses `"sheffer: g=<expr>, f=<expr>"` or
    /// `"riordan: g=<expr>, f=<expr>"`, optionally followed by
    /// `", params: d=2,a=1"`.
    pub fn parse_inline(text: &str) -> Result<TriangleSpec, SpecError> {
        let bad = |message: &str| SpecError::BadInline { message: message.to_string() };
        let (kind_str, rest) = text
            .split_once(':')
            .ok_or_else(|| bad("expected \"sheffer:\" or \"riordan:\" prefix"))?;
        let kind = match kind_str.trim().to_ascii_lowercase().as_str() {
            "sheffer" => TriangleKind::Sheffer,
            "riordan" => TriangleKind::Riordan,
            other => {
                return Err(bad(&format!(
                    "unknown kind {other:?}, expected \"sheffer\" or \"riordan\""
                )))
            }
        };
        let (gf_part, params_part) = match rest.split_once("params:") {
            Some((gf, ps)) => (gf.trim().trim_end_matches(','), Some(ps)),
            None => (rest.trim(), None),
        };

        let mut g = None;
        let mut f = None;
        for item in gf_part.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| bad(&format!("expected key=expr, got {item:?}")))?;
            let e = parse(value.trim())?;
            match key.trim() {
                "g" => g = Some(e),
                "f" => f = Some(e),
                other => return Err(bad(&format!("unknown key {other:?}, expected g or f"))),
            }
        }
        let g = g.ok_or_else(|| bad("missing g="))?;
        let f = f.ok_or_else(|| bad("missing f="))?;

        let mut params = Bindings::new();
        if let Some(ps) = params_part {
            for item in ps.split(',') {
                let item = item.trim();
                if item.is_empty() {
                    continue;
                }
                let (key, value) = item
                    .split_once('=')
                    .ok_or_else(|| bad(&format!("expected name=value, got {item:?}")))?;
                let v: Rational = value
                    .trim()
                    .parse()
                    .map_err(|_| bad(&format!("bad rational value {value:?}")))?;
                params.insert(key.trim().to_string(), v);
            }
        }

        Ok(TriangleSpec { kind, g, f, params, name: None })
    }
}

/// One row of the built-in catalog.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: TriangleKind,
    pub g: &'static str,
    pub f: &'static str,
    pub params: &'static [(&'static str, i64)],
    /// OEIS id of the triangle, when it has one.
    pub oeis: &'static str,
}

/// Catalog order is fixed; commands that iterate "all" follow it.
pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "stirling2",
        kind: TriangleKind::Sheffer,
        g: "1",
        f: "exp(s)-1",
        params: &[],
        oeis: "A048993",
    },
    CatalogEntry {
        name: "stirling1",
        kind: TriangleKind::Sheffer,
        g: "1",
        f: "-log(1-s)",
        params: &[],
        oeis: "A132393",
    },
    CatalogEntry {
        name: "pascal-sheffer",
        kind: TriangleKind::Sheffer,
        g: "exp(s)",
        f: "s",
        params: &[],
        oeis: "A007318",
    },
    CatalogEntry {
        name: "P.S2",
        kind: TriangleKind::Sheffer,
        g: "exp(s)",
        f: "exp(s)-1",
        params: &[],
        oeis: "",
    },
    CatalogEntry {
        name: "charlier",
        kind: TriangleKind::Sheffer,
        g: "exp(s)",
        f: "-log(1-s)",
        params: &[],
        oeis: "A094816",
    },
    CatalogEntry {
        name: "S2[2,1]",
        kind: TriangleKind::Sheffer,
        g: "exp(a*s)",
        f: "exp(d*s)-1",
        params: &[("d", 2), ("a", 1)],
        oeis: "A154537",
    },
    CatalogEntry {
        name: "S2[3,1]",
        kind: TriangleKind::Sheffer,
        g: "exp(a*s)",
        f: "exp(d*s)-1",
        params: &[("d", 3), ("a", 1)],
        oeis: "A282629",
    },
    CatalogEntry {
        name: "S1phat[2,1]",
        kind: TriangleKind::Sheffer,
        g: "(1-d*s)^(-a/d)",
        f: "-(1/d)*log(1-d*s)",
        params: &[("d", 2), ("a", 1)],
        oeis: "A028338",
    },
    CatalogEntry {
        name: "S1phat[3,1]",
        kind: TriangleKind::Sheffer,
        g: "(1-d*s)^(-a/d)",
        f: "-(1/d)*log(1-d*s)",
        params: &[("d", 3), ("a", 1)],
        oeis: "A286718",
    },
    CatalogEntry {
        name: "pascal-variant",
        kind: TriangleKind::Riordan,
        g: "1",
        f: "x/(1-x)",
        params: &[],
        oeis: "A097805",
    },
    CatalogEntry {
        name: "pascal",
        kind: TriangleKind::Riordan,
        g: "1/(1-x)",
        f: "x/(1-x)",
        params: &[],
        oeis: "A007318",
    },
    CatalogEntry {
        name: "A135278",
        kind: TriangleKind::Riordan,
        g: "1/(1-x)^2",
        f: "x/(1-x)",
        params: &[],
        oeis: "A135278",
    },
];

/// OEIS-id aliases accepted by `lookup`.
const ALIASES: &[(&str, &str)] = &[
    ("A048993", "stirling2"),
    ("A132393", "stirling1"),
    ("A094816", "charlier"),
    ("A097805", "pascal-variant"),
    ("A154537", "S2[2,1]"),
    ("A282629", "S2[3,1]"),
    ("A028338", "S1phat[2,1]"),
    ("A286718", "S1phat[3,1]"),
];

#[derive(Debug, Clone, PartialEq)]
pub enum CatalogError {
    Unknown { name: String, available: Vec<String> },
    Constraint { name: String, message: String },
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::Unknown { name, available } => {
                write!(
                    f,
                    "unknown catalog entry {name:?}; available: {} \
                     (plus S2[d,a] and S1phat[d,a] for valid d, a)",
                    available.join(", ")
                )
            }
            CatalogError::Constraint { name, message } => {
                write!(f, "invalid parameters in {name:?}: {message}")
            }
        }
    }
}

impl std::error::Error for CatalogError {}

/// Names in catalog order.
pub fn names() -> Vec<String> {
    CATALOG.iter().map(|e| e.name.to_string()).collect()
}

fn build(entry: &CatalogEntry, name: &str) -> TriangleSpec {
    let g = parse(entry.g).expect("catalog g parses");
    let f = parse(entry.f).expect("catalog f parses");
    let params: Bindings = entry
        .params
        .iter()
        .map(|&(k, v)| (k.to_string(), Rational::from_integer(v)))
        .collect();
    TriangleSpec { kind: entry.kind, g, f, params, name: Some(name.to_string()) }
}

/// `d >= 1, a >= 0, gcd(d, a) = 1, and d = 1 forces a = 0`: the
/// constraint shared by the `S2` and `S1phat` families.
fn check_family_params(name: &str, d: i64, a: i64) -> Result<(), CatalogError> {
    let fail =
        |message: String| Err(CatalogError::Constraint { name: name.to_string(), message });
    if d < 1 {
        return fail(format!("d must be >= 1, got {d}"));
    }
    if a < 0 {
        return fail(format!("a must be >= 0, got {a}"));
    }
    if d.gcd(&a) != 1 {
        return fail(format!("gcd(d, a) = gcd({d}, {a}) must be 1"));
    }
    if d == 1 && a != 0 {
        return fail("d = 1 forces a = 0".to_string());
    }
    Ok(())
}

/// Parses `"S2[3,1]"`-style family references.
fn parse_family(name: &str) -> Option<(&str, i64, i64)> {
    let open = name.find('[')?;
    let (family, rest) = name.split_at(open);
    let inner = rest.strip_prefix('[')?.strip_suffix(']')?;
    let (d, a) = inner.split_once(',')?;
    Some((family, d.trim().parse().ok()?, a.trim().parse().ok()?))
}

/// Looks a name up in the catalog. Family references are instantiated
/// and checked; OEIS ids resolve to their catalog names.
pub fn lookup(name: &str) -> Result<TriangleSpec, CatalogError> {
    let resolved = ALIASES
        .iter()
        .find(|(alias, _)| *alias == name)
        .map_or(name, |(_, target)| *target);

    if let Some((family, d, a)) = parse_family(resolved) {
        let (g, f) = match family {
            "S2" => ("exp(a*s)", "exp(d*s)-1"),
            "S1phat" => ("(1-d*s)^(-a/d)", "-(1/d)*log(1-d*s)"),
            _ => {
                return Err(CatalogError::Unknown { name: name.to_string(), available: names() })
            }
        };
        check_family_params(resolved, d, a)?;
        let template = CatalogEntry {
            name: "",
            kind: TriangleKind::Sheffer,
            g,
            f,
            params: &[],
            oeis: "",
        };
        let mut spec = build(&template, resolved);
        spec.params.insert("d".to_string(), Rational::from_integer(d));
        spec.params.insert("a".to_string(), Rational::from_integer(a));
        return Ok(spec);
    }

    CATALOG
        .iter()
        .find(|e| e.name == resolved)
        .map(|e| build(e, resolved))
        .ok_or_else(|| CatalogError::Unknown { name: name.to_string(), available: names() })
}
