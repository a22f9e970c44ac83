//! Dense univariate polynomials over `Rational`.
//!
//! Coefficient `i` multiplies `t^i`. The vector never carries trailing
//! zeros, so the zero polynomial is the empty list and `degree` is `None`
//! exactly for zero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    /// Builds a polynomial, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    /// Integer coefficient list, index = power; handy in tests and tables.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Scales so the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => Poly::zero(),
            Some(lc) => {
                let inv = lc.recip().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, exp: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    ///
    /// Panics if `div` is zero; callers check.
    pub fn div_rem(&self, div: &Poly) -> (Poly, Poly) {
        let d_deg = div.degree().expect("division by zero polynomial");
        let lc = div.leading_coeff().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < d_deg + 1 {
            return (Poly::zero(), self.clone());
        }
        let q_len = rem.len() - d_deg;
        let mut quot = vec![Rational::zero(); q_len];
        for i in (0..q_len).rev() {
            let c = &rem[i + d_deg] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in div.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(dj * &c);
            }
            quot[i] = c;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact quotient; panics when the remainder is nonzero.
    pub fn exact_div(&self, div: &Poly) -> Poly {
        let (q, r) = self.div_rem(div);
        assert!(r.is_zero(), "exact_div: nonzero remainder");
        q
    }

    /// Monic greatest common divisor via the Euclidean scheme;
    /// `gcd(0, 0) = 0` and `gcd(p, 0)` is the monic form of `p`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            // Renormalizing each remainder keeps the rational coefficients small.
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Synthetic division by the monic linear factor `t - r`; `Some`
    /// quotient only when the division is exact.
    pub fn div_linear_exact(&self, r: &Rational) -> Option<Poly> {
        let d = self.coeffs.len();
        if d == 0 {
            return Some(Poly::zero());
        }
        if d == 1 {
            return None;
        }
        let mut quot = vec![Rational::zero(); d - 1];
        quot[d - 2] = self.coeffs[d - 1].clone();
        for i in (1..d - 1).rev() {
            quot[i - 1] = &self.coeffs[i] + &(r * &quot[i]);
        }
        let rem = &self.coeffs[0] + &(r * &quot[0]);
        if rem.is_zero() {
            Some(Poly::new(quot))
        } else {
            None
        }
    }

    /// Multiplicity of the root `r` (capped at `cap`) together with the
    /// quotient by `(t - r)^multiplicity`.
    pub fn strip_root(&self, r: &Rational, cap: usize) -> (usize, Poly) {
        let mut mult = 0;
        let mut cur = self.clone();
        while mult < cap {
            match cur.div_linear_exact(r) {
                Some(q) => {
                    cur = q;
                    mult += 1;
                }
                None => break,
            }
        }
        (mult, cur)
    }

    /// `(t - r)^k`, monic.
    pub fn linear_power(r: &Rational, k: usize) -> Poly {
        Poly::new(vec![-r, Rational::one()]).pow(k)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_poly(self, "t"))
    }
}

/// Renders `1 + 8*t + 6*t^2` style, with an arbitrary variable name.
pub fn format_poly(p: &Poly, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let show_coeff = i == 0 || !mag.is_one();
        if show_coeff {
            out.push_str(&mag.to_string());
        }
        if i > 0 {
            if show_coeff {
                out.push('*');
            }
            out.push_str(var);
            if i > 1 {
                out.push_str(&format!("^{i}"));
            }
        }
    }
    out
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push(&self.coeff(i) + &rhs.coeff(i));
        }
        Poly::new(out)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push(&self.coeff(i) - &rhs.coeff(i));
        }
        Poly::new(out)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_integers(cs)
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert!(p(&[0]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
    }

    #[test]
    fn gcd_common_linear_factor() {
        // gcd(t^2 - 1, t - 1) = t - 1
        let g = Poly::gcd(&p(&[-1, 0, 1]), &p(&[-1, 1]));
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn gcd_with_zero_is_monic_argument() {
        let q = p(&[2, 4]);
        assert_eq!(
            Poly::gcd(&q, &Poly::zero()),
            Poly::new(vec![Rational::ratio(1, 2), Rational::one()])
        );
        assert_eq!(Poly::gcd(&Poly::zero(), &Poly::zero()), Poly::zero());
    }

    #[test]
    fn gcd_of_shifted_powers() {
        // gcd((1-t)^3 (1+2t), (1-t)^5) is (t-1)^3 after monic normalization;
        // checked independently by dividing both arguments with zero remainder.
        let one_minus_t = p(&[1, -1]);
        let a = &one_minus_t.pow(3) * &p(&[1, 2]);
        let b = one_minus_t.pow(5);
        let g = Poly::gcd(&a, &b);
        assert_eq!(g, p(&[-1, 1]).pow(3));
        let (_, ra) = a.div_rem(&g);
        let (_, rb) = b.div_rem(&g);
        assert!(ra.is_zero() && rb.is_zero());
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[3, 0, -2, 7]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn eval_horner() {
        // 1 + 2t + 3t^2 at t = 2 -> 17
        assert_eq!(p(&[1, 2, 3]).eval(&Rational::from_integer(2)), Rational::from_integer(17));
    }

    #[test]
    fn display_paper_style() {
        assert_eq!(p(&[1, 8, 6]).to_string(), "1 + 8*t + 6*t^2");
        assert_eq!(p(&[0, 1, -1]).to_string(), "t - t^2");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn strip_root_counts_multiplicity() {
        let q = &p(&[-1, 1]).pow(3) * &p(&[1, 2]);
        let (m, rest) = q.strip_root(&Rational::one(), 10);
        assert_eq!(m, 3);
        assert_eq!(rest, p(&[1, 2]));
        assert_eq!(p(&[1, 2]).strip_root(&Rational::one(), 5).0, 0);
        assert_eq!(Poly::linear_power(&Rational::ratio(1, 2), 4).degree(), Some(4));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = Poly> {
            proptest::collection::vec(-5i64..=5, 0..5).prop_map(|cs| Poly::from_integers(&cs))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            /// gcd(a g, b g) is divisible by the monic form of g.
            #[test]
            fn gcd_divides_common_factor(a in poly(), b in poly(), g in poly()) {
                prop_assume!(!g.is_zero());
                prop_assume!(!a.is_zero() || !b.is_zero());
                let d = Poly::gcd(&(&a * &g), &(&b * &g));
                let (_, rem) = d.div_rem(&g.monic());
                prop_assert!(rem.is_zero());
            }

            #[test]
            fn div_rem_invariant(a in poly(), b in poly()) {
                prop_assume!(!b.is_zero());
                let (q, r) = a.div_rem(&b);
                prop_assert_eq!(&(&q * &b) + &r, a);
                prop_assert!(r.degree() < b.degree() || r.is_zero());
            }
        }
    }
}
