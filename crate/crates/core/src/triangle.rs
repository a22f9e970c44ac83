//! Building triangles from their column generating functions, diagonal
//! extraction, row polynomials, and the Sheffer group product.
//!
//! Construction is column-by-column from the defining generating
//! functions, never by recurrences; recurrences appear only as
//! independent oracles in the tests.

use std::fmt;

use crate::catalog::{SpecError, TriangleKind, TriangleSpec};
use crate::expr::Expr;
use crate::rational::{binomial, factorial, Rational};

#[derive(Debug, Clone, PartialEq)]
pub enum TriangleError {
    Spec(SpecError),
    /// Diagonal or row indices that fall outside the built rows.
    OutOfRange { message: String },
    /// The Sheffer product needs two exponential-kind specs.
    KindMismatch { got: TriangleKind },
    /// Two specs bind the same parameter to different values.
    ParamConflict { name: String },
}

impl fmt::Display for TriangleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriangleError::Spec(e) => write!(f, "{e}"),
            TriangleError::OutOfRange { message } => write!(f, "{message}"),
            TriangleError::KindMismatch { got } => {
                write!(f, "operation requires Sheffer specs, got {got}")
            }
            TriangleError::ParamConflict { name } => {
                write!(f, "parameter {name:?} bound to conflicting values")
            }
        }
    }
}

impl std::error::Error for TriangleError {}

impl From<SpecError> for TriangleError {
    fn from(e: SpecError) -> Self {
        TriangleError::Spec(e)
    }
}

/// How a diagonal sequence is weighted when it is read off.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    /// T(d+m, m) itself.
    Plain,
    /// binom(d+m, m) * T(d+m, m), the object the Riordan closed forms
    /// generate.
    PascalProduct,
    /// (d+m)! * T(d+m, m).
    FactorialProduct,
}

impl fmt::Display for Weighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Weighting::Plain => "plain",
            Weighting::PascalProduct => "pascal-product",
            Weighting::FactorialProduct => "factorial-product",
        })
    }
}

/// A diagonal sequence, possibly weighted.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalSeq {
    pub d: usize,
    pub weighting: Weighting,
    pub terms: Vec<Rational>,
}

/// A built lower-triangular array with its originating spec.
#[derive(Debug, Clone)]
pub struct Triangle {
    entries: Vec<Vec<Rational>>,
    spec: TriangleSpec,
}

impl Triangle {
    /// Builds `rows` rows from the spec's column generating functions:
    /// Sheffer entry T(n,m) = n! [s^n] g f^m / m!, Riordan entry
    /// T(n,m) = [x^n] G F^m.
    pub fn build(spec: &TriangleSpec, rows: usize) -> Result<Triangle, TriangleError> {
        assert!(rows >= 1, "a triangle has at least one row");
        spec.validate()?;
        let order = rows - 1;
        let g = spec.g_series(order)?;
        let f = spec.f_series(order)?;

        let mut entries: Vec<Vec<Rational>> =
            (0..rows).map(|n| vec![Rational::zero(); n + 1]).collect();
        let mut col = g;
        for m in 0..rows {
            if m > 0 {
                col = col.mul(&f);
            }
            for n in m..rows {
                let c = col.coeff(n).clone();
                entries[n][m] = match spec.kind {
                    // n!/m! times the coefficient.
                    TriangleKind::Sheffer => {
                        &c * &Rational::new(factorial(n), factorial(m)).expect("nonzero")
                    }
                    TriangleKind::Riordan => c,
                };
            }
        }
        Ok(Triangle { entries, spec: spec.clone() })
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn spec(&self) -> &TriangleSpec {
        &self.spec
    }

    pub fn row(&self, n: usize) -> &[Rational] {
        &self.entries[n]
    }

    /// Entry T(n, m); zero above the diagonal, panics past the built rows.
    pub fn entry(&self, n: usize, m: usize) -> Rational {
        if m > n {
            return Rational::zero();
        }
        self.entries[n][m].clone()
    }

    /// Evaluates the row polynomial `sum_m T(n,m) x^m` exactly.
    pub fn row_polynomial_eval(&self, n: usize, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.entries[n].iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// The d-th diagonal, `count` terms, with the requested weighting.
    pub fn diagonal(
        &self,
        d: usize,
        count: usize,
        weighting: Weighting,
    ) -> Result<DiagonalSeq, TriangleError> {
        if d + count > self.rows() {
            return Err(TriangleError::OutOfRange {
                message: format!(
                    "diagonal {d} with {count} terms needs {} rows, triangle has {}",
                    d + count,
                    self.rows()
                ),
            });
        }
        let terms = (0..count)
            .map(|m| {
                let e = self.entry(d + m, m);
                match weighting {
                    Weighting::Plain => e,
                    Weighting::PascalProduct => {
                        &e * &Rational::from_integer(binomial(d + m, m))
                    }
                    Weighting::FactorialProduct => {
                        &e * &Rational::from_integer(factorial(d + m))
                    }
                }
            })
            .collect();
        Ok(DiagonalSeq { d, weighting, terms })
    }
}

/// Group product of Sheffer specs:
/// `(g1, f1) . (g2, f2) = (g1 * (g2 o f1), f2 o f1)`.
///
/// The built triangle of the product equals the matrix product of the
/// built triangles.
pub fn sheffer_product(
    a: &TriangleSpec,
    b: &TriangleSpec,
) -> Result<TriangleSpec, TriangleError> {
    for spec in [a, b] {
        if spec.kind != TriangleKind::Sheffer {
            return Err(TriangleError::KindMismatch { got: spec.kind });
        }
    }
    let mut params = a.params.clone();
    for (k, v) in &b.params {
        if let Some(old) = params.insert(k.clone(), v.clone()) {
            if &old != v {
                return Err(TriangleError::ParamConflict { name: k.clone() });
            }
        }
    }
    let g = Expr::Mul(Box::new(a.g.clone()), Box::new(b.g.subst_var(&a.f)));
    let f = b.f.subst_var(&a.f);
    Ok(TriangleSpec { kind: TriangleKind::Sheffer, g, f, params, name: None })
}
