//! Truncated formal power series over a generic coefficient field.
//!
//! A `Series` stores coefficients of `x^0 .. x^N` where `N` is the
//! truncation order; coefficients beyond `N` are unknown, never assumed
//! zero. Binary operations truncate to the smaller order so no result
//! coefficient is ever fabricated.
//!
//! The same type is used with `Rational` coefficients (plain expansions)
//! and with `RatFunc` coefficients, where reversion of
//! `y(t;x) = x - t*f(x)` runs over the rational-function field in `t`
//! and produces diagonal generating functions exactly.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::Rational;
use crate::ratfunc::RatFunc;

/// Coefficient field for series arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse; `None` for zero.
    fn recip(&self) -> Option<Self>;
    /// The canonical embedding of the rationals.
    fn from_rational(r: Rational) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn recip(&self) -> Option<Self> {
        Rational::recip(self).ok()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn recip(&self) -> Option<Self> {
        RatFunc::recip(self).ok()
    }
    fn from_rational(r: Rational) -> Self {
        RatFunc::from_rational(r)
    }
}

/// Errors from series operations whose preconditions fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Multiplicative inversion of a series with zero constant term.
    NotInvertible,
    /// Composition with an inner series whose constant term is nonzero
    /// is undefined for truncated series.
    CompositionUndefined,
    /// `exp` needs constant term 0.
    ExpNeedsZeroConstant,
    /// `log` needs constant term 1.
    LogNeedsUnitConstant,
    /// Fractional powers need constant term 1.
    PowNeedsUnitConstant,
    /// Reversion needs constant term 0.
    RevertNeedsZeroConstant,
    /// Reversion needs an invertible linear coefficient.
    RevertNeedsUnitLinear,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            SeriesError::NotInvertible => "series not invertible: constant term is zero",
            SeriesError::CompositionUndefined => {
                "composition undefined for truncated series: inner constant term is nonzero"
            }
            SeriesError::ExpNeedsZeroConstant => "exp of a series requires constant term 0",
            SeriesError::LogNeedsUnitConstant => "log of a series requires constant term 1",
            SeriesError::PowNeedsUnitConstant => {
                "fractional power of a series requires constant term 1"
            }
            SeriesError::RevertNeedsZeroConstant => "reversion requires constant term 0",
            SeriesError::RevertNeedsUnitLinear => {
                "reversion requires an invertible linear coefficient"
            }
        };
        f.write_str(msg)
    }
}

impl std::error::Error for SeriesError {}

/// A truncated formal power series; `coeffs.len() = order + 1`.
#[derive(Clone, PartialEq)]
pub struct Series<K: Field> {
    coeffs: Vec<K>,
}

impl<K: Field> Series<K> {
    /// Wraps an explicit coefficient list; the order is `len - 1`.
    pub fn from_coeffs(coeffs: Vec<K>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least its constant term");
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![K::zero(); order + 1] }
    }

    pub fn constant(c: K, order: usize) -> Self {
        let mut coeffs = vec![K::zero(); order + 1];
        coeffs[0] = c;
        Series { coeffs }
    }

    /// The identity series `x`, truncated at `order`.
    pub fn x(order: usize) -> Self {
        let mut s = Series::zero(order);
        if order >= 1 {
            s.coeffs[1] = K::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^n`; asking beyond the order is a logic error
    /// because those coefficients are unknown.
    pub fn coeff(&self, n: usize) -> &K {
        assert!(
            n < self.coeffs.len(),
            "coefficient {n} beyond truncation order {}",
            self.order()
        );
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(K::is_zero)
    }

    /// Lowers the truncation order; never extends it.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Series { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone())
            .collect();
        Series { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|i| self.coeffs[i].clone() - rhs.coeffs[i].clone())
            .collect();
        Series { coeffs }
    }

    pub fn neg(&self) -> Self {
        Series { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, k: &K) -> Self {
        Series { coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![K::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series { coeffs }
    }

    /// Non-negative integer power by repeated multiplication; works for
    /// any base series.
    pub fn pow_int(&self, exp: usize) -> Self {
        let mut acc = Series::constant(K::one(), self.order());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse: `b` with `a*b = 1` up to the order.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let a0_inv = self.coeffs[0].recip().ok_or(SeriesError::NotInvertible)?;
        let n = self.order();
        let mut out = vec![K::zero(); n + 1];
        out[0] = a0_inv.clone();
        for m in 1..=n {
            let mut acc = K::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc + self.coeffs[k].clone() * out[m - k].clone();
            }
            out[m] = -(a0_inv.clone() * acc);
        }
        Ok(Series { coeffs: out })
    }

    /// `h(inner)` for an inner series with zero constant term, truncated
    /// to the smaller of the two orders (Horner evaluation).
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::CompositionUndefined);
        }
        let n = self.order().min(inner.order());
        let inner_t = inner.truncate(n);
        let mut res = Series::constant(self.coeffs[n].clone(), n);
        for i in (0..n).rev() {
            res = res.mul(&inner_t);
            res.coeffs[0] = res.coeffs[0].clone() + self.coeffs[i].clone();
        }
        Ok(res)
    }

    /// Term-wise antiderivative with zero constant term; the order grows
    /// by one because the integral of `x^N` is known.
    pub fn integrate(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(K::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            let inv = K::from_rational(Rational::ratio(1, (i + 1) as i64));
            out.push(c.clone() * inv);
        }
        Series { coeffs: out }
    }

    /// Term-wise derivative; a constant differentiates to the zero series
    /// of order 0.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Series::zero(0);
        }
        let coeffs = (1..self.coeffs.len())
            .map(|i| self.coeffs[i].clone() * K::from_rational(Rational::from_integer(i as i64)))
            .collect();
        Series { coeffs }
    }

    /// Formal exponential; requires constant term 0.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::ExpNeedsZeroConstant);
        }
        let n = self.order();
        let mut out = vec![K::zero(); n + 1];
        out[0] = K::one();
        // From e' = a' e: n*e_n = sum_{k=1..n} k*a_k*e_{n-k}.
        for m in 1..=n {
            let mut acc = K::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let kr = K::from_rational(Rational::from_integer(k as i64));
                acc = acc + kr * self.coeffs[k].clone() * out[m - k].clone();
            }
            out[m] = acc * K::from_rational(Rational::ratio(1, m as i64));
        }
        Ok(Series { coeffs: out })
    }

    /// Formal logarithm of the series itself; requires constant term 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != K::one() {
            return Err(SeriesError::LogNeedsUnitConstant);
        }
        // log(a) = integral of a'/a, exact to the original order.
        let quotient = self.derivative().mul(&self.invert().expect("unit constant term"));
        Ok(quotient.integrate())
    }

    /// Rational power `a^q`; requires constant term 1.
    pub fn pow_rational(&self, q: &Rational) -> Result<Self, SeriesError> {
        if self.coeffs[0] != K::one() {
            return Err(SeriesError::PowNeedsUnitConstant);
        }
        self.log()
            .expect("unit constant term")
            .scale(&K::from_rational(q.clone()))
            .exp()
    }

    /// Shifts down one power; requires zero constant term. The order
    /// drops by one.
    fn div_x(&self) -> Self {
        debug_assert!(self.coeffs[0].is_zero());
        Series { coeffs: self.coeffs[1..].to_vec() }
    }

    /// Compositional inverse `x(y)` of `y(x)` with `y(0) = 0` and an
    /// invertible linear coefficient.
    ///
    /// Coefficient `n` comes from the Lagrange formula
    /// `[y^n] x = (1/n) [a^(n-1)] (a/y(a))^n`.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::RevertNeedsZeroConstant);
        }
        if self.order() < 1 || self.coeffs[1].recip().is_none() {
            return Err(SeriesError::RevertNeedsUnitLinear);
        }
        let n = self.order();
        // psi = y/a, so (a/y)^n = psi^{-n}.
        let inv_psi = self.div_x().invert().expect("unit linear coefficient");
        let mut out = vec![K::zero(); n + 1];
        let mut power = inv_psi.clone();
        for m in 1..=n {
            if m > 1 {
                power = power.mul(&inv_psi);
            }
            let c = power.coeff(m - 1).clone()
                * K::from_rational(Rational::ratio(1, m as i64));
            out[m] = c;
        }
        Ok(Series { coeffs: out })
    }

    /// `H(x(y)) - H(0)` straight from the inversion formula, without
    /// composing: coefficient `n` is `(1/n) [a^(n-1)] (psi(a)^-n H'(a))`.
    ///
    /// Cross-validates `h.compose(y.revert())`.
    pub fn lagrange_h(y: &Self, h: &Self) -> Result<Self, SeriesError> {
        if !y.coeffs[0].is_zero() {
            return Err(SeriesError::RevertNeedsZeroConstant);
        }
        if y.order() < 1 || y.coeffs[1].recip().is_none() {
            return Err(SeriesError::RevertNeedsUnitLinear);
        }
        let n = y.order().min(h.order());
        let inv_psi = y.div_x().invert().expect("unit linear coefficient");
        let mut out = vec![K::zero(); n + 1];
        let mut term = h.derivative().mul(&inv_psi);
        for m in 1..=n {
            if m > 1 {
                term = term.mul(&inv_psi);
            }
            out[m] = term.coeff(m - 1).clone()
                * K::from_rational(Rational::ratio(1, m as i64));
        }
        Ok(Series { coeffs: out })
    }
}

impl Series<Rational> {
    /// Embeds rational coefficients into a larger field, e.g. the
    /// rational functions in `t`.
    pub fn promote<K: Field>(&self) -> Series<K> {
        Series {
            coeffs: self.coeffs.iter().map(|c| K::from_rational(c.clone())).collect(),
        }
    }
}

impl<K: Field> fmt::Debug for Series<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series{:?} + O(x^{})", self.coeffs, self.order() + 1)
    }
}
