//! The small expression language for generating-function specifications.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := term (("+"|"-") term)*
//! term   := factor (("*"|"/") factor)*
//! factor := base ("^" factor)?            -- "^" is right-associative
//! base   := number | ident | "(" expr ")" | "-" factor | func "(" expr ")"
//! func   := "exp" | "log"
//! number := integer ("/" integer)?
//! ident  := letter alnum*
//! ```
//!
//! Precedence is `^` > unary minus > `*`,`/` > `+`,`-`. The series
//! variable is written `s` or `x` (synonyms); every other identifier is a
//! parameter that must be bound to a rational before evaluation, and
//! exponents must be rational constants after binding.

use std::collections::BTreeMap;
use std::fmt;

use crate::rational::Rational;
use crate::series::{Series, SeriesError};

/// Parameter bindings, name to rational value.
pub type Bindings = BTreeMap<String, Rational>;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Lit(Rational),
    /// The series variable (`s` in exponential specs, `x` in ordinary ones).
    Var,
    Param(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Exp(Box<Expr>),
    Log(Box<Expr>),
}

/// Syntax error with the byte offset where parsing failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Evaluation failures, carrying the offending subexpression.
#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    UnboundParameter { name: String },
    /// An exponent that still contains the series variable.
    NonConstantExponent { subexpr: String },
    /// An integer exponent too large to evaluate.
    ExponentOutOfRange { subexpr: String },
    /// Division by a constant zero while folding an exponent.
    ConstantDivisionByZero { subexpr: String },
    /// A series precondition failed somewhere inside the expression.
    Series { source: SeriesError, subexpr: String },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnboundParameter { name } => {
                write!(f, "unknown identifier {name:?}: parameter is not bound")
            }
            EvalError::NonConstantExponent { subexpr } => {
                write!(f, "exponent must be a rational constant, got {subexpr}")
            }
            EvalError::ExponentOutOfRange { subexpr } => {
                write!(f, "integer exponent out of range in {subexpr}")
            }
            EvalError::ConstantDivisionByZero { subexpr } => {
                write!(f, "division by zero while evaluating {subexpr}")
            }
            EvalError::Series { source, subexpr } => write!(f, "{source} in {subexpr}"),
        }
    }
}

impl std::error::Error for EvalError {}

/// Parses an expression; errors carry the byte offset of the failure.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> ParseError {
        ParseError { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if self.eat(b'^') {
            let exponent = self.factor()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                // Unary minus binds below "^": -a^b is -(a^b).
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.ident(),
            Some(_) => Err(self.err("expected a number, identifier, '(' or '-'")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<Rational, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse::<Rational>()
            .map_err(|_| self.err("integer literal out of range"))
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let num = self.integer()?;
        // "p/q" is a rational literal only when a digit follows the slash;
        // otherwise the slash is the division operator.
        let save = self.pos;
        if self.eat(b'/') {
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                let den = self.integer()?;
                if den.is_zero() {
                    return Err(ParseError {
                        offset: save,
                        message: "zero denominator in rational literal".to_string(),
                    });
                }
                return Ok(Expr::Lit(num.checked_div(&den).expect("nonzero denominator")));
            }
            self.pos = save;
        }
        Ok(Expr::Lit(num))
    }

    fn ident(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match name {
            "exp" | "log" => {
                if !self.eat(b'(') {
                    return Err(self.err("expected '(' after function name"));
                }
                let arg = Box::new(self.expr()?);
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(if name == "exp" { Expr::Exp(arg) } else { Expr::Log(arg) })
            }
            // "s" and "x" both denote the series variable.
            "s" | "x" => Ok(Expr::Var),
            _ => Ok(Expr::Param(name.to_string())),
        }
    }
}

// Precedence levels used by the printer; higher binds tighter.
const LVL_ADD: u8 = 1;
const LVL_MUL: u8 = 2;
const LVL_NEG: u8 = 3;
const LVL_POW: u8 = 4;
const LVL_ATOM: u8 = 5;

impl Expr {
    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => LVL_ADD,
            Expr::Mul(..) | Expr::Div(..) => LVL_MUL,
            Expr::Neg(..) => LVL_NEG,
            Expr::Pow(..) => LVL_POW,
            _ => LVL_ATOM,
        }
    }

    /// Renders the expression so that `parse(text)` rebuilds it
    /// structurally; `var` names the series variable.
    pub fn to_text(&self, var: &str) -> String {
        let mut out = String::new();
        self.write(var, 0, &mut out);
        out
    }

    fn write(&self, var: &str, min_level: u8, out: &mut String) {
        let needs_parens = self.level() < min_level;
        if needs_parens {
            out.push('(');
        }
        match self {
            Expr::Lit(r) => {
                if r.is_negative() {
                    // The parser never produces negative literals; render
                    // them in the unary-minus form it would have built.
                    out.push('-');
                    out.push_str(&r.abs().to_string());
                } else {
                    out.push_str(&r.to_string());
                }
            }
            Expr::Var => out.push_str(var),
            Expr::Param(name) => out.push_str(name),
            Expr::Neg(a) => {
                out.push('-');
                a.write(var, LVL_POW, out);
            }
            Expr::Add(a, b) => {
                a.write(var, LVL_ADD, out);
                out.push('+');
                b.write(var, LVL_MUL, out);
            }
            Expr::Sub(a, b) => {
                a.write(var, LVL_ADD, out);
                out.push('-');
                b.write(var, LVL_MUL, out);
            }
            Expr::Mul(a, b) => {
                a.write(var, LVL_MUL, out);
                out.push('*');
                b.write(var, LVL_NEG, out);
            }
            Expr::Div(a, b) => {
                a.write(var, LVL_MUL, out);
                out.push('/');
                // A digit directly after "/" would lex as part of a
                // rational literal; parenthesize such right-hand sides.
                let mut rhs = String::new();
                b.write(var, LVL_NEG, &mut rhs);
                if rhs.starts_with(|c: char| c.is_ascii_digit()) {
                    out.push('(');
                    out.push_str(&rhs);
                    out.push(')');
                } else {
                    out.push_str(&rhs);
                }
            }
            Expr::Pow(a, b) => {
                a.write(var, LVL_ATOM, out);
                out.push('^');
                b.write(var, LVL_POW, out);
            }
            Expr::Exp(a) => {
                out.push_str("exp(");
                a.write(var, 0, out);
                out.push(')');
            }
            Expr::Log(a) => {
                out.push_str("log(");
                a.write(var, 0, out);
                out.push(')');
            }
        }
        if needs_parens {
            out.push(')');
        }
    }

    /// Replaces every occurrence of the series variable.
    pub fn subst_var(&self, replacement: &Expr) -> Expr {
        let rec = |e: &Expr| Box::new(e.subst_var(replacement));
        match self {
            Expr::Var => replacement.clone(),
            Expr::Lit(_) | Expr::Param(_) => self.clone(),
            Expr::Neg(a) => Expr::Neg(rec(a)),
            Expr::Add(a, b) => Expr::Add(rec(a), rec(b)),
            Expr::Sub(a, b) => Expr::Sub(rec(a), rec(b)),
            Expr::Mul(a, b) => Expr::Mul(rec(a), rec(b)),
            Expr::Div(a, b) => Expr::Div(rec(a), rec(b)),
            Expr::Pow(a, b) => Expr::Pow(rec(a), rec(b)),
            Expr::Exp(a) => Expr::Exp(rec(a)),
            Expr::Log(a) => Expr::Log(rec(a)),
        }
    }

    pub fn contains_var(&self) -> bool {
        match self {
            Expr::Var => true,
            Expr::Lit(_) | Expr::Param(_) => false,
            Expr::Neg(a) | Expr::Exp(a) | Expr::Log(a) => a.contains_var(),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b) => a.contains_var() || b.contains_var(),
        }
    }

    /// Folds a variable-free expression to a rational.
    pub fn const_eval(&self, bindings: &Bindings) -> Result<Rational, EvalError> {
        match self {
            Expr::Lit(r) => Ok(r.clone()),
            Expr::Var => Err(EvalError::NonConstantExponent { subexpr: self.to_text("s") }),
            Expr::Param(name) => bindings
                .get(name)
                .cloned()
                .ok_or_else(|| EvalError::UnboundParameter { name: name.clone() }),
            Expr::Neg(a) => Ok(-a.const_eval(bindings)?),
            Expr::Add(a, b) => Ok(a.const_eval(bindings)? + b.const_eval(bindings)?),
            Expr::Sub(a, b) => Ok(a.const_eval(bindings)? - b.const_eval(bindings)?),
            Expr::Mul(a, b) => Ok(a.const_eval(bindings)? * b.const_eval(bindings)?),
            Expr::Div(a, b) => a
                .const_eval(bindings)?
                .checked_div(&b.const_eval(bindings)?)
                .map_err(|_| EvalError::ConstantDivisionByZero { subexpr: self.to_text("s") }),
            Expr::Pow(a, b) => {
                let base = a.const_eval(bindings)?;
                let exp = b.const_eval(bindings)?;
                let e = exp.to_i64().ok_or_else(|| EvalError::NonConstantExponent {
                    subexpr: self.to_text("s"),
                })?;
                let e = i32::try_from(e).map_err(|_| EvalError::ExponentOutOfRange {
                    subexpr: self.to_text("s"),
                })?;
                base.pow(e).map_err(|_| EvalError::ConstantDivisionByZero {
                    subexpr: self.to_text("s"),
                })
            }
            Expr::Exp(_) | Expr::Log(_) => {
                Err(EvalError::NonConstantExponent { subexpr: self.to_text("s") })
            }
        }
    }

    /// Evaluates to a truncated series over the rationals; `var` is only
    /// used to print offending subexpressions in errors.
    pub fn to_series(
        &self,
        bindings: &Bindings,
        order: usize,
        var: &str,
    ) -> Result<Series<Rational>, EvalError> {
        let series_err = |source: SeriesError, e: &Expr| EvalError::Series {
            source,
            subexpr: e.to_text(var),
        };
        match self {
            Expr::Lit(r) => Ok(Series::constant(r.clone(), order)),
            Expr::Var => Ok(Series::x(order)),
            Expr::Param(name) => bindings
                .get(name)
                .map(|r| Series::constant(r.clone(), order))
                .ok_or_else(|| EvalError::UnboundParameter { name: name.clone() }),
            Expr::Neg(a) => Ok(a.to_series(bindings, order, var)?.neg()),
            Expr::Add(a, b) => {
                Ok(a.to_series(bindings, order, var)?.add(&b.to_series(bindings, order, var)?))
            }
            Expr::Sub(a, b) => {
                Ok(a.to_series(bindings, order, var)?.sub(&b.to_series(bindings, order, var)?))
            }
            Expr::Mul(a, b) => {
                Ok(a.to_series(bindings, order, var)?.mul(&b.to_series(bindings, order, var)?))
            }
            Expr::Div(a, b) => {
                let den = b.to_series(bindings, order, var)?;
                let inv = den.invert().map_err(|e| series_err(e, b))?;
                Ok(a.to_series(bindings, order, var)?.mul(&inv))
            }
            Expr::Pow(a, b) => {
                if b.contains_var() {
                    return Err(EvalError::NonConstantExponent { subexpr: b.to_text(var) });
                }
                let q = b.const_eval(bindings)?;
                let base = a.to_series(bindings, order, var)?;
                match q.to_i64() {
                    Some(e) if e.unsigned_abs() > 100_000 => {
                        Err(EvalError::ExponentOutOfRange { subexpr: self.to_text(var) })
                    }
                    Some(e) if e >= 0 => Ok(base.pow_int(e as usize)),
                    Some(e) => {
                        let inv = base.invert().map_err(|err| series_err(err, a))?;
                        Ok(inv.pow_int(e.unsigned_abs() as usize))
                    }
                    None => base.pow_rational(&q).map_err(|e| series_err(e, self)),
                }
            }
            Expr::Exp(a) => a
                .to_series(bindings, order, var)?
                .exp()
                .map_err(|e| series_err(e, self)),
            Expr::Log(a) => a
                .to_series(bindings, order, var)?
                .log()
                .map_err(|e| series_err(e, self)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn bind(pairs: &[(&str, i64)]) -> Bindings {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), Rational::from_integer(*v)))
            .collect()
    }

    #[test]
    fn parses_exp_minus_one() {
        let e = parse("exp(s)-1").unwrap();
        assert_eq!(
            e,
            Expr::Sub(
                Box::new(Expr::Exp(Box::new(Expr::Var))),
                Box::new(Expr::Lit(Rational::one()))
            )
        );
    }

    #[test]
    fn parses_parametrized_log_form() {
        // -(1/d)*log(1-d*s), the generalized signless Stirling1 f-form.
        let e = parse("-(1/d)*log(1-d*s)").unwrap();
        let expected = Expr::Mul(
            Box::new(Expr::Neg(Box::new(Expr::Div(
                Box::new(Expr::Lit(Rational::one())),
                Box::new(Expr::Param("d".into())),
            )))),
            Box::new(Expr::Log(Box::new(Expr::Sub(
                Box::new(Expr::Lit(Rational::one())),
                Box::new(Expr::Mul(
                    Box::new(Expr::Param("d".into())),
                    Box::new(Expr::Var),
                )),
            )))),
        );
        assert_eq!(e, expected);
    }

    #[test]
    fn syntax_error_carries_offset() {
        let err = parse("exp(s").unwrap_err();
        assert_eq!(err.offset, 5);
        let err = parse("1 + * 2").unwrap_err();
        assert_eq!(err.offset, 4);
    }

    #[test]
    fn rational_literal_vs_division() {
        assert_eq!(parse("1/2").unwrap(), Expr::Lit(Rational::ratio(1, 2)));
        let div = parse("1/d").unwrap();
        assert!(matches!(div, Expr::Div(..)));
    }

    #[test]
    fn power_binds_tighter_than_unary_minus() {
        // -2^2 = -(2^2)
        let e = parse("-2^2").unwrap();
        let v = e.const_eval(&Bindings::new()).unwrap();
        assert_eq!(v, Rational::from_integer(-4));
    }

    #[test]
    fn exp_series_of_s() {
        let s = parse("exp(s)-1")
            .unwrap()
            .to_series(&Bindings::new(), 4, "s")
            .unwrap();
        let want: Vec<Rational> = [(0, 1), (1, 1), (1, 2), (1, 6), (1, 24)]
            .iter()
            .map(|&(n, d)| Rational::ratio(n, d))
            .collect();
        assert_eq!(s.coeffs().to_vec(), want);
    }

    #[test]
    fn geometric_series_of_x() {
        let s = parse("s/(1-s)")
            .unwrap()
            .to_series(&Bindings::new(), 4, "s")
            .unwrap();
        let mut want = vec![Rational::one(); 5];
        want[0] = Rational::zero();
        assert_eq!(s.coeffs().to_vec(), want);
    }

    #[test]
    fn fractional_power_with_parameters() {
        // (1-d*s)^(-a/d) at d=2, a=1 is (1-2s)^(-1/2); squaring it must
        // give the geometric series in 2s.
        let e = parse("(1-d*s)^(-a/d)").unwrap();
        let s = e.to_series(&bind(&[("d", 2), ("a", 1)]), 3, "s").unwrap();
        let want: Vec<Rational> = [(1, 1), (1, 1), (3, 2), (5, 2)]
            .iter()
            .map(|&(n, d)| Rational::ratio(n, d))
            .collect();
        assert_eq!(s.coeffs().to_vec(), want);
        let squared = s.mul(&s);
        let geom: Vec<Rational> = (0..=3)
            .map(|n| Rational::from_integer(2).pow(n).unwrap())
            .collect();
        assert_eq!(squared.coeffs().to_vec(), geom);
    }

    #[test]
    fn unbound_parameter_is_reported() {
        let e = parse("exp(a*s)").unwrap();
        let err = e.to_series(&Bindings::new(), 3, "s").unwrap_err();
        assert_eq!(err, EvalError::UnboundParameter { name: "a".into() });
    }

    #[test]
    fn variable_in_exponent_is_rejected() {
        let e = parse("2^s").unwrap();
        assert!(matches!(
            e.to_series(&Bindings::new(), 3, "s"),
            Err(EvalError::NonConstantExponent { .. })
        ));
    }

    #[test]
    fn log_precondition_propagates_subexpression() {
        let e = parse("log(2+s)").unwrap();
        match e.to_series(&Bindings::new(), 3, "s") {
            Err(EvalError::Series { source, subexpr }) => {
                assert_eq!(source, SeriesError::LogNeedsUnitConstant);
                assert_eq!(subexpr, "log(2+s)");
            }
            other => panic!("expected a series error, got {other:?}"),
        }
    }

    #[test]
    fn print_parse_round_trip_hand_cases() {
        for text in [
            "exp(s)-1",
            "-(1/d)*log(1-d*s)",
            "(1-d*s)^(-a/d)",
            "s/(1-s)",
            "1/(1-s)^2",
            "exp(a*s)",
            "1-2*s^3+s^2/7",
        ] {
            let e = parse(text).unwrap();
            let printed = e.to_text("s");
            let reparsed = parse(&printed).unwrap();
            assert_eq!(reparsed, e, "print/parse failed for {text} -> {printed}");
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_expr() -> impl Strategy<Value = Expr> {
            let leaf = prop_oneof![
                (0i64..=9).prop_map(|n| Expr::Lit(Rational::from_integer(n))),
                ((1i64..=9), (2i64..=9)).prop_map(|(p, q)| Expr::Lit(Rational::ratio(p, q))),
                Just(Expr::Var),
                "[abcdfg]".prop_map(Expr::Param),
            ];
            leaf.prop_recursive(4, 24, 2, |inner| {
                prop_oneof![
                    (inner.clone(), inner.clone())
                        .prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                    (inner.clone(), inner.clone())
                        .prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                    (inner.clone(), inner.clone())
                        .prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                    (inner.clone(), inner.clone())
                        .prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
                    (inner.clone(), inner.clone())
                        .prop_map(|(a, b)| Expr::Pow(Box::new(a), Box::new(b))),
                    inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
                    inner.clone().prop_map(|a| Expr::Exp(Box::new(a))),
                    inner.prop_map(|a| Expr::Log(Box::new(a))),
                ]
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(256))]

            #[test]
            fn print_parse_round_trip(e in arb_expr()) {
                let printed = e.to_text("s");
                let reparsed = parse(&printed).unwrap();
                prop_assert_eq!(reparsed, e);
            }
        }
    }
}
