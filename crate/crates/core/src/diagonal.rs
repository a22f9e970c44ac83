//! Closed-form diagonal generating functions.
//!
//! For a Sheffer triangle (g, f), revert `y(t;x) = x - t*f(x)` over the
//! rational-function field in `t` and compose `H = integral of g` with
//! the inverse: the coefficient of `y^(d+1)` times `(d+1)!` is the
//! ordinary generating function of diagonal d, as an exact `RatFunc`.
//!
//! For a Riordan triangle (G, F) the same construction with
//! `y = x - t*F(x)` and `H = integral of G` controls the diagonals
//! multiplied by Pascal entries: the coefficient of `y^(d+1)` times
//! `(d+1)` generates `binom(d+m, m) R(d+m, m)`, and times `(d+1)!` it is
//! the e.g.f. of `(d+m)! R(d+m, m)`.
//!
//! Exactness needs no reconstruction step: reversion runs over
//! `RatFunc` coefficients, so every extracted generating function is
//! already a reduced rational function.

use std::fmt;

use crate::catalog::{SpecError, TriangleKind, TriangleSpec};
use crate::poly::Poly;
use crate::published::published_for;
use crate::rational::{factorial, ArithError, Rational};
use crate::ratfunc::RatFunc;
use crate::series::{Series, SeriesError};
use crate::triangle::{Triangle, TriangleError, Weighting};

/// Which construction produced a stack entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StackSource {
    /// Sheffer: e.g.f. of diagonal o.g.f.s, read at `(d+1)! y^(d+1)`.
    ShefferEgf,
    /// Riordan: l.g.f. of Pascal-product o.g.f.s, read at `(d+1) y^(d+1)`.
    RiordanLgf,
    /// Riordan: e.g.f. of factorial-product e.g.f.s, read at `(d+1)! y^(d+1)`.
    RiordanEegf,
}

impl fmt::Display for StackSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StackSource::ShefferEgf => "sheffer-egf",
            StackSource::RiordanLgf => "riordan-lgf",
            StackSource::RiordanEegf => "riordan-eegf",
        })
    }
}

/// Extraction mode for Riordan stacks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RiordanMode {
    LgfPascal,
    EegfFactorial,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DiagonalError {
    Spec(SpecError),
    Series(SeriesError),
    Arith(ArithError),
    Triangle(TriangleError),
    KindMismatch { expected: TriangleKind, got: TriangleKind },
}

impl fmt::Display for DiagonalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagonalError::Spec(e) => write!(f, "{e}"),
            DiagonalError::Series(e) => write!(f, "{e}"),
            DiagonalError::Arith(e) => write!(f, "{e}"),
            DiagonalError::Triangle(e) => write!(f, "{e}"),
            DiagonalError::KindMismatch { expected, got } => {
                write!(f, "expected a {expected} spec, got {got}")
            }
        }
    }
}

impl std::error::Error for DiagonalError {}

impl From<SpecError> for DiagonalError {
    fn from(e: SpecError) -> Self {
        DiagonalError::Spec(e)
    }
}

impl From<SeriesError> for DiagonalError {
    fn from(e: SeriesError) -> Self {
        DiagonalError::Series(e)
    }
}

impl From<ArithError> for DiagonalError {
    fn from(e: ArithError) -> Self {
        DiagonalError::Arith(e)
    }
}

impl From<TriangleError> for DiagonalError {
    fn from(e: TriangleError) -> Self {
        DiagonalError::Triangle(e)
    }
}

/// The closed form for one diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalGF {
    pub d: usize,
    /// Reduced rational function generating the (weighted) diagonal.
    pub gf: RatFunc,
    /// `(c, k)` with `gf = numerator / (1 - c t)^k` when the reduced
    /// denominator has that shape; `None` marks an irregular denominator.
    pub shape: Option<(Rational, usize)>,
    /// Numerator over `(1 - c t)^k` when the shape is regular, otherwise
    /// the canonical numerator of `gf`.
    pub numerator: Poly,
    pub weighting: Weighting,
    pub source: StackSource,
}

/// Closed forms for diagonals `0 ..= d_max` of one spec.
#[derive(Debug, Clone)]
pub struct GFStack {
    pub spec: TriangleSpec,
    pub source: StackSource,
    pub entries: Vec<DiagonalGF>,
}

/// `(c, k)` such that the denominator equals `(1 - c t)^k` up to monic
/// normalization; `None` when it has no such shape. A constant
/// denominator reports `(0, 0)`.
pub fn denominator_shape(gf: &RatFunc) -> Option<(Rational, usize)> {
    let den = gf.den();
    let k = den.degree().expect("canonical denominator is nonzero");
    if k == 0 {
        return Some((Rational::zero(), 0));
    }
    // A monic (t - r)^k has t^(k-1) coefficient -k*r.
    let r = den
        .coeff(k - 1)
        .checked_div(&Rational::from_integer(-(k as i64)))
        .expect("k > 0");
    if r.is_zero() {
        return None;
    }
    let probe = Poly::new(vec![-r.clone(), Rational::one()]).pow(k);
    if &probe != den {
        return None;
    }
    Some((r.recip().expect("nonzero root"), k))
}

/// Rescales the canonical numerator to sit over `(1 - c t)^k`:
/// `(1 - c t)^k = (-c)^k (t - 1/c)^k`, so multiply by `(-c)^k`.
fn shaped_numerator(gf: &RatFunc, c: &Rational, k: usize) -> Poly {
    if k == 0 {
        return gf.num().clone();
    }
    let scale = (-c.clone()).pow(k as i32).expect("k >= 0");
    gf.num().scale(&scale)
}

fn make_entry(d: usize, gf: RatFunc, weighting: Weighting, source: StackSource) -> DiagonalGF {
    let shape = denominator_shape(&gf);
    let numerator = match &shape {
        Some((c, k)) => shaped_numerator(&gf, c, *k),
        None => gf.num().clone(),
    };
    DiagonalGF { d, gf, shape, numerator, weighting, source }
}

/// `H(x(t;y)) - H(0)` for the spec, truncated in `y` at `order`.
///
/// `H(0) = 0` holds by construction: term-wise integration leaves a zero
/// constant term, and composing with the zero-constant-term reversion
/// keeps it zero.
fn composed_series(
    spec: &TriangleSpec,
    order: usize,
) -> Result<Series<RatFunc>, DiagonalError> {
    spec.validate()?;
    let f = spec.f_series(order)?;
    let g = spec.g_series(order)?;
    let y = Series::<RatFunc>::x(order).sub(&f.promote::<RatFunc>().scale(&RatFunc::t()));
    let x_of_y = y.revert()?;
    let h: Series<RatFunc> = g.promote::<RatFunc>().integrate();
    Ok(h.compose(&x_of_y)?)
}

// The reversion coefficient of y^n depends only on data below order n,
// so a stack to d_max needs exactly order d_max + 1; a larger override
// (e.g. the CLI's TFORGE_ORDER, default 12) only extends the truncation.
fn working_order(d_max: usize, order: Option<usize>) -> usize {
    order.unwrap_or(0).max(d_max + 1)
}

/// Diagonal o.g.f.s of a Sheffer triangle: entry d is
/// `(d+1)! [y^(d+1)] (H(x(t;y)) - H(0))` with `H = integral of g`.
pub fn sheffer_diag_gfs(spec: &TriangleSpec, d_max: usize) -> Result<GFStack, DiagonalError> {
    sheffer_diag_gfs_with_order(spec, d_max, None)
}

/// As [`sheffer_diag_gfs`], with an explicit working truncation order.
pub fn sheffer_diag_gfs_with_order(
    spec: &TriangleSpec,
    d_max: usize,
    order: Option<usize>,
) -> Result<GFStack, DiagonalError> {
    if spec.kind != TriangleKind::Sheffer {
        return Err(DiagonalError::KindMismatch {
            expected: TriangleKind::Sheffer,
            got: spec.kind,
        });
    }
    let composed = composed_series(spec, working_order(d_max, order))?;
    let entries = (0..=d_max)
        .map(|d| {
            let gf = composed.coeff(d + 1).clone()
                * RatFunc::from_rational(Rational::from_integer(factorial(d + 1)));
            make_entry(d, gf, Weighting::Plain, StackSource::ShefferEgf)
        })
        .collect();
    Ok(GFStack { spec: spec.clone(), source: StackSource::ShefferEgf, entries })
}

/// Diagonal generating functions of a Riordan triangle.
///
/// `LgfPascal` reads `(d+1) [y^(d+1)]`: the o.g.f. of
/// `binom(d+m, m) R(d+m, m)`. `EegfFactorial` reads `(d+1)! [y^(d+1)]`:
/// the e.g.f. of `(d+m)! R(d+m, m)`.
pub fn riordan_diag_gfs(
    spec: &TriangleSpec,
    d_max: usize,
    mode: RiordanMode,
) -> Result<GFStack, DiagonalError> {
    riordan_diag_gfs_with_order(spec, d_max, mode, None)
}

/// As [`riordan_diag_gfs`], with an explicit working truncation order.
pub fn riordan_diag_gfs_with_order(
    spec: &TriangleSpec,
    d_max: usize,
    mode: RiordanMode,
    order: Option<usize>,
) -> Result<GFStack, DiagonalError> {
    if spec.kind != TriangleKind::Riordan {
        return Err(DiagonalError::KindMismatch {
            expected: TriangleKind::Riordan,
            got: spec.kind,
        });
    }
    let composed = composed_series(spec, working_order(d_max, order))?;
    let (source, weighting) = match mode {
        RiordanMode::LgfPascal => (StackSource::RiordanLgf, Weighting::PascalProduct),
        RiordanMode::EegfFactorial => (StackSource::RiordanEegf, Weighting::FactorialProduct),
    };
    let entries = (0..=d_max)
        .map(|d| {
            let norm = match mode {
                RiordanMode::LgfPascal => Rational::from_integer((d + 1) as i64),
                RiordanMode::EegfFactorial => Rational::from_integer(factorial(d + 1)),
            };
            let gf = composed.coeff(d + 1).clone() * RatFunc::from_rational(norm);
            make_entry(d, gf, weighting, source)
        })
        .collect();
    Ok(GFStack { spec: spec.clone(), source, entries })
}

/// Row-wise numerator normalization for the table output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    None,
    /// Divide row d by `(d+1) t` for d >= 1 (row 0 is kept); turns the
    /// associated-Riordan numerators into Narayana-style rows.
    NarayanaRow,
}

/// One row of the numerator table.
#[derive(Debug, Clone, PartialEq)]
pub enum NumRow {
    Coeffs(Vec<Rational>),
    /// The denominator is not a power of `(1 - c t)`, or the requested
    /// normalization does not divide the row.
    Irregular { message: String },
}

/// The numerator-polynomial coefficient triangle of a stack.
pub fn numerator_triangle(stack: &GFStack, normalize: Normalization) -> Vec<NumRow> {
    stack
        .entries
        .iter()
        .map(|entry| {
            if entry.shape.is_none() {
                return NumRow::Irregular {
                    message: format!("irregular denominator {}", entry.gf.den()),
                };
            }
            match normalize {
                Normalization::None => NumRow::Coeffs(entry.numerator.coeffs().to_vec()),
                Normalization::NarayanaRow => {
                    if entry.d == 0 {
                        return NumRow::Coeffs(entry.numerator.coeffs().to_vec());
                    }
                    if !entry.numerator.coeff(0).is_zero() || entry.numerator.is_zero() {
                        return NumRow::Irregular {
                            message: format!(
                                "numerator {} is not divisible by (d+1)*t",
                                entry.numerator
                            ),
                        };
                    }
                    let scale = Rational::ratio(1, (entry.d + 1) as i64);
                    let shifted =
                        Poly::new(entry.numerator.coeffs()[1..].to_vec()).scale(&scale);
                    NumRow::Coeffs(shifted.coeffs().to_vec())
                }
            }
        })
        .collect()
}

/// One comparison cell of a verification run.
#[derive(Debug, Clone, PartialEq)]
pub struct CellCheck {
    pub d: usize,
    pub m: usize,
    /// Direct diagonal value from the built triangle.
    pub expected: Rational,
    /// Value recovered from the closed form.
    pub got: Rational,
    pub pass: bool,
}

/// All cells for one extraction mode.
#[derive(Debug, Clone)]
pub struct SectionReport {
    pub source: StackSource,
    pub cells: Vec<CellCheck>,
}

impl SectionReport {
    pub fn all_pass(&self) -> bool {
        self.cells.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CellCheck> {
        self.cells.iter().filter(|c| !c.pass)
    }
}

/// Comparison of a computed row against the published table.
#[derive(Debug, Clone)]
pub struct PublishedCheck {
    pub d: usize,
    pub printed_numerator: Vec<Rational>,
    pub printed_shape: (Rational, usize),
    pub computed_numerator: Vec<Rational>,
    pub computed_shape: Option<(Rational, usize)>,
    pub matches: bool,
}

/// Exact verification of every closed form against the triangle, plus
/// the published-table cross-check.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub name: String,
    pub d_max: usize,
    pub m_max: usize,
    pub sections: Vec<SectionReport>,
    pub published: Vec<PublishedCheck>,
}

impl VerifyReport {
    /// Oracle self-consistency; published-table mismatches do not count.
    pub fn all_pass(&self) -> bool {
        self.sections.iter().all(SectionReport::all_pass)
    }

    pub fn published_mismatches(&self) -> impl Iterator<Item = &PublishedCheck> {
        self.published.iter().filter(|p| !p.matches)
    }
}

/// Expands every closed form of the spec to `m_max` terms and compares
/// exactly with the directly built diagonals: plain for Sheffer,
/// Pascal-product for the Riordan l.g.f. stack, factorial-product for
/// the Riordan e.g.f. stack (whose m-th Taylor coefficient carries a
/// 1/m!). Published rows, where the literature prints them, are compared
/// with the computed stack and mismatches flagged as data, not failures.
pub fn verify_stack(
    spec: &TriangleSpec,
    d_max: usize,
    m_max: usize,
) -> Result<VerifyReport, DiagonalError> {
    verify_stack_with_order(spec, d_max, m_max, None)
}

/// As [`verify_stack`], with an explicit working truncation order.
pub fn verify_stack_with_order(
    spec: &TriangleSpec,
    d_max: usize,
    m_max: usize,
    order: Option<usize>,
) -> Result<VerifyReport, DiagonalError> {
    let tri = Triangle::build(spec, d_max + m_max + 1)?;
    // The comparison never looks past d_max, so the minimal order is
    // enough here no matter what the stack commands default to.
    let order = Some(order.unwrap_or(d_max + 1));
    let stacks: Vec<GFStack> = match spec.kind {
        TriangleKind::Sheffer => vec![sheffer_diag_gfs_with_order(spec, d_max, order)?],
        TriangleKind::Riordan => vec![
            riordan_diag_gfs_with_order(spec, d_max, RiordanMode::LgfPascal, order)?,
            riordan_diag_gfs_with_order(spec, d_max, RiordanMode::EegfFactorial, order)?,
        ],
    };

    let mut sections = Vec::new();
    for stack in &stacks {
        let mut cells = Vec::new();
        for entry in &stack.entries {
            let direct = tri.diagonal(entry.d, m_max + 1, entry.weighting)?;
            let taylor = entry.gf.taylor(m_max)?;
            for m in 0..=m_max {
                let got = match stack.source {
                    // The e.g.f. stack stores sum (d+m)! T(d+m,m) t^m / m!.
                    StackSource::RiordanEegf => {
                        &taylor[m] * &Rational::from_integer(factorial(m))
                    }
                    _ => taylor[m].clone(),
                };
                let expected = direct.terms[m].clone();
                let pass = expected == got;
                cells.push(CellCheck { d: entry.d, m, expected, got, pass });
            }
        }
        sections.push(SectionReport { source: stack.source, cells });
    }

    let mut published = Vec::new();
    if let Some(name) = &spec.name {
        if let Some(table) = published_for(name) {
            // Published tables describe the default stack: Sheffer e.g.f.
            // or Riordan l.g.f.
            let stack = &stacks[0];
            for (d, (nums, c, k)) in table.rows.iter().enumerate() {
                if d >= stack.entries.len() {
                    break;
                }
                let entry = &stack.entries[d];
                let printed_numerator: Vec<Rational> =
                    nums.iter().map(|&n| Rational::from_integer(n)).collect();
                let printed_shape = (Rational::from_integer(*c), *k);
                let computed_numerator = entry.numerator.coeffs().to_vec();
                let matches = entry.shape.as_ref() == Some(&printed_shape)
                    && Poly::new(printed_numerator.clone()) == entry.numerator;
                published.push(PublishedCheck {
                    d,
                    printed_numerator,
                    printed_shape,
                    computed_numerator,
                    computed_shape: entry.shape.clone(),
                    matches,
                });
            }
        }
    }

    Ok(VerifyReport {
        name: spec.display_name(),
        d_max,
        m_max,
        sections,
        published,
    })
}
