//! Reduced rational functions in one variable `t`.
//!
//! Canonical form: the denominator is monic and nonzero, and
//! gcd(num, den) = 1. Equality is therefore structural. Diagonal
//! generating functions such as `t(1+2t)/(1-t)^5` live here.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::poly::{format_poly, Poly};
use crate::rational::{ArithError, Rational};

#[derive(Clone)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
    /// `Some((r, k))` when `den = (t - r)^k` (so `Some((0, 0))` for a
    /// trivial denominator). Every denominator the diagonal pipeline
    /// produces has this form, and remembering it lets add/mul cancel by
    /// root multiplicity instead of polynomial gcd.
    root_power: Option<(Rational, usize)>,
}

// Canonical form makes equality structural on (num, den); the memoized
// shape depends only on den and is excluded.
impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for RatFunc {}

impl std::hash::Hash for RatFunc {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl RatFunc {
    /// Builds `num/den` in canonical form; a zero denominator is an error.
    pub fn new(num: Poly, den: Poly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn trivial_shape() -> Option<(Rational, usize)> {
        Some((Rational::zero(), 0))
    }

    fn reduced(mut num: Poly, mut den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc::from_poly(Poly::zero());
        }
        let lc = den.leading_coeff().expect("nonzero denominator");
        if !lc.is_one() {
            let inv = lc.recip().expect("nonzero leading coefficient");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        let k = den.degree().expect("nonzero denominator");
        if k == 0 {
            return RatFunc { num, den, root_power: Self::trivial_shape() };
        }
        // Denominators of the form (t - r)^k cancel by root multiplicity,
        // with none of the Euclid coefficient growth.
        let r = den
            .coeff(k - 1)
            .checked_div(&Rational::from_integer(-(k as i64)))
            .expect("k > 0");
        let (den_mult, _) = den.strip_root(&r, k);
        if den_mult == k {
            return Self::over_root_power(num, r, k);
        }
        let g = Poly::gcd(&num, &den);
        if g.degree() > Some(0) {
            num = num.exact_div(&g);
            den = den.exact_div(&g);
        }
        RatFunc { num, den, root_power: None }
    }

    /// Canonicalizes `num / (t - r)^k`, cancelling the root multiplicity.
    fn over_root_power(num: Poly, r: Rational, k: usize) -> Self {
        debug_assert!(!num.is_zero());
        if k == 0 {
            return RatFunc { num, den: Poly::one(), root_power: Self::trivial_shape() };
        }
        let (m, stripped) = num.strip_root(&r, k);
        if m == k {
            return RatFunc {
                num: stripped,
                den: Poly::one(),
                root_power: Self::trivial_shape(),
            };
        }
        let den = Poly::linear_power(&r, k - m);
        RatFunc { num: stripped, den, root_power: Some((r, k - m)) }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one(), root_power: Self::trivial_shape() }
    }

    pub fn from_rational(r: Rational) -> Self {
        RatFunc::from_poly(Poly::constant(r))
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    /// The variable `t` itself.
    pub fn t() -> Self {
        RatFunc::from_poly(Poly::t())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == Poly::one() && self.den == Poly::one()
    }

    /// Some(constant) when the function is a scalar.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.den == Poly::one() && self.num.degree().is_none_or(|d| d == 0) {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    /// Checked division, the error-signalling form of `/`.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self * &rhs.recip()?)
    }

    /// Taylor coefficients of `t^0 .. t^order` at the origin.
    ///
    /// Errors with `PoleAtOrigin` when den(0) = 0.
    pub fn taylor(&self, order: usize) -> Result<Vec<Rational>, ArithError> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(ArithError::PoleAtOrigin);
        }
        let d0_inv = d0.recip()?;
        // Long division of power series: c_n = (num_n - sum_{k=1..n} den_k c_{n-k}) / den_0.
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.num.coeff(n);
            for k in 1..=n {
                let dk = self.den.coeff(k);
                if dk.is_zero() {
                    continue;
                }
                acc = &acc - &(&dk * &out[n - k]);
            }
            out.push(&acc * &d0_inv);
        }
        Ok(out)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RatFunc {
    /// Prints with the denominator rescaled to a positive constant term
    /// when possible, so `(t-1)` shows as `1 - t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            return write!(f, "{}", self.num);
        }
        let d0 = self.den.coeff(0);
        let (num, den) = if !d0.is_zero() && !d0.is_one() {
            let s = d0.recip().expect("nonzero");
            (self.num.scale(&s), self.den.scale(&s))
        } else {
            (self.num.clone(), self.den.clone())
        };
        write!(f, "({}) / ({})", num, den)
    }
}

/// Paper-style rendering with an explicit factored denominator shape,
/// e.g. `t*(1 + 2*t) / (1 - t)^5`.
pub fn format_shaped(num: &Poly, c: &Rational, k: usize, var: &str) -> String {
    let num_s = format_poly(num, var);
    if k == 0 {
        return num_s;
    }
    let base = format_poly(
        &Poly::new(vec![Rational::one(), -c.clone()]),
        var,
    );
    if k == 1 {
        format!("({num_s}) / ({base})")
    } else {
        format!("({num_s}) / ({base})^{k}")
    }
}

/// Common root of the two denominators when both are powers of the same
/// linear factor (a zero power matches anything).
fn common_root(a: &RatFunc, b: &RatFunc) -> Option<Rational> {
    match (&a.root_power, &b.root_power) {
        (Some((ra, ka)), Some((rb, kb))) => {
            if *ka == 0 {
                Some(rb.clone())
            } else if *kb == 0 || ra == rb {
                Some(ra.clone())
            } else {
                None
            }
        }
        _ => None,
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if let Some(r) = common_root(self, rhs) {
            let ka = self.root_power.as_ref().expect("shape known").1;
            let kb = rhs.root_power.as_ref().expect("shape known").1;
            let k = ka.max(kb);
            // Bring both over (t - r)^k, the least common denominator.
            let lift = |num: &Poly, from: usize| {
                if from == k { num.clone() } else { num * &Poly::linear_power(&r, k - from) }
            };
            let num = &lift(&self.num, ka) + &lift(&rhs.num, kb);
            if num.is_zero() {
                return RatFunc::zero();
            }
            return RatFunc::over_root_power(num, r, k);
        }
        if self.den == rhs.den {
            return RatFunc::reduced(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::reduced(num, &self.den * &rhs.den)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if let Some(r) = common_root(self, rhs) {
            let ka = self.root_power.as_ref().expect("shape known").1;
            let kb = rhs.root_power.as_ref().expect("shape known").1;
            return RatFunc::over_root_power(&self.num * &rhs.num, r, ka + kb);
        }
        RatFunc::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
            root_power: self.root_power.clone(),
        }
    }
}

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_integers(cs)
    }

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(p(num), p(den)).unwrap()
    }

    #[test]
    fn common_denominator_addition() {
        // t/(1-t) + 1/(1-t) = (1+t)/(1-t); canonical den is monic (t-1).
        let sum = &rf(&[0, 1], &[1, -1]) + &rf(&[1], &[1, -1]);
        assert_eq!(sum, rf(&[1, 1], &[1, -1]));
        assert_eq!(sum.den(), &p(&[-1, 1]));
        assert_eq!(sum.num(), &p(&[-1, -1]));
    }

    #[test]
    fn cancellation_against_denominator() {
        // t(1+2t)/(1-t)^5 * (1-t)^5 = t + 2t^2
        let den = p(&[1, -1]).pow(5);
        let gf = RatFunc::new(&p(&[0, 1]) * &p(&[1, 2]), den.clone()).unwrap();
        let prod = &gf * &RatFunc::from_poly(den);
        assert_eq!(prod, RatFunc::from_poly(p(&[0, 1, 2])));
    }

    #[test]
    fn reduction_via_gcd() {
        // (1-t^2)/(1-t) = 1 + t
        assert_eq!(rf(&[1, 0, -1], &[1, -1]), RatFunc::from_poly(p(&[1, 1])));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let a = rf(&[1], &[1, -1]);
        assert_eq!(a.checked_div(&RatFunc::zero()), Err(ArithError::DivisionByZero));
        assert!(RatFunc::new(p(&[1]), Poly::zero()).is_err());
    }

    #[test]
    fn taylor_of_third_diagonal_gf() {
        // t(1+2t)/(1-t)^5 expands to the third diagonal sequence of the
        // Stirling2 triangle, A001296.
        let gf = RatFunc::new(&p(&[0, 1]) * &p(&[1, 2]), p(&[1, -1]).pow(5)).unwrap();
        let want: Vec<Rational> = [0, 1, 7, 25, 65, 140, 266, 462, 750]
            .iter()
            .map(|&n| Rational::from_integer(n))
            .collect();
        assert_eq!(gf.taylor(8).unwrap(), want);
    }

    #[test]
    fn taylor_geometric() {
        let ones = rf(&[1], &[1, -1]).taylor(4).unwrap();
        assert_eq!(ones, vec![Rational::one(); 5]);
    }

    #[test]
    fn taylor_squared_binomials() {
        // (1+4t+t^2)/(1-t)^5 generates squares of binomial(m+2, 2); checked
        // here against the direct Cauchy product of numerator and 1/(1-t)^5.
        let den = p(&[1, -1]).pow(5);
        let num = p(&[1, 4, 1]);
        let gf = RatFunc::new(num.clone(), den.clone()).unwrap();
        let got = gf.taylor(4).unwrap();

        let inv_den = RatFunc::new(Poly::one(), den).unwrap().taylor(4).unwrap();
        let product: Vec<Rational> = (0..=4)
            .map(|n| {
                (0..=n).fold(Rational::zero(), |acc, k| {
                    &acc + &(&num.coeff(k) * &inv_den[n - k])
                })
            })
            .collect();
        assert_eq!(got, product);

        let squares: Vec<Rational> = (0..=4u32)
            .map(|m| {
                let b = crate::rational::binomial(m as usize + 2, 2);
                Rational::from_integer(&b * &b)
            })
            .collect();
        assert_eq!(got, squares);
    }

    #[test]
    fn taylor_pole_at_origin() {
        assert_eq!(rf(&[1], &[0, 1]).taylor(3), Err(ArithError::PoleAtOrigin));
    }

    #[test]
    fn display_rescales_constant_term() {
        let gf = RatFunc::new(&p(&[0, 1]) * &p(&[1, 2]), p(&[1, -1]).pow(2)).unwrap();
        assert_eq!(gf.to_string(), "(t + 2*t^2) / (1 - 2*t + t^2)");
    }

    #[test]
    fn mixed_root_power_arithmetic_stays_canonical() {
        // (t-1) * 1/(t-1)^2 = 1/(t-1), and the power bookkeeping survives
        // sums with plain polynomials.
        let lin = RatFunc::from_poly(p(&[-1, 1]));
        let sq = RatFunc::new(Poly::one(), p(&[-1, 1]).pow(2)).unwrap();
        let prod = &lin * &sq;
        assert_eq!(prod, RatFunc::new(Poly::one(), p(&[-1, 1])).unwrap());
        let sum = &prod + &RatFunc::one();
        assert_eq!(sum, RatFunc::new(p(&[0, 1]), p(&[-1, 1])).unwrap());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = Poly> {
            proptest::collection::vec(-4i64..=4, 0..4).prop_map(|cs| Poly::from_integers(&cs))
        }

        fn ratfunc() -> impl Strategy<Value = RatFunc> {
            (poly(), poly())
                .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
                .prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a + &(-&a), RatFunc::zero());
                if !a.is_zero() {
                    prop_assert_eq!(&a * &a.recip().unwrap(), RatFunc::one());
                }
            }

            /// Taylor expansion of a product is the Cauchy product of the
            /// Taylor expansions.
            #[test]
            fn taylor_respects_products(a in ratfunc(), b in ratfunc()) {
                prop_assume!(!a.den().coeff(0).is_zero() && !b.den().coeff(0).is_zero());
                let n = 8usize;
                let prod = (&a * &b).taylor(n).unwrap();
                let ta = a.taylor(n).unwrap();
                let tb = b.taylor(n).unwrap();
                for m in 0..=n {
                    let cauchy = (0..=m).fold(Rational::zero(), |acc, k| {
                        &acc + &(&ta[k] * &tb[m - k])
                    });
                    prop_assert_eq!(&prod[m], &cauchy, "coefficient {}", m);
                }
            }
        }
    }
}
