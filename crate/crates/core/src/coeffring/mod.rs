//! Exact coefficient arithmetic: the polynomial ring `Q[x1, ..., xn]`, its
//! fraction field, coordinate derivations, and parsing/printing of scalars.

mod gcd;
mod poly;
mod ratfunc;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed};

pub use num_rational::BigRational as Rational;
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;

use crate::error::{Error, Result};
use crate::expr::{self, ExprAlgebra, Pos};

/// Whether scalars live in the polynomial ring or in its fraction field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Polynomial,
    FractionField,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Polynomial => "poly",
            Mode::FractionField => "frac",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An element of the coefficient ring or its fraction field.
///
/// Mixed-mode arithmetic promotes to the fraction field.
#[derive(Clone)]
pub enum Scalar {
    Poly(Polynomial),
    Frac(RationalFunction),
}

impl Scalar {
    pub fn zero(mode: Mode, nvars: usize) -> Self {
        Self::from_polynomial_in(mode, Polynomial::zero(nvars))
    }

    pub fn one(mode: Mode, nvars: usize) -> Self {
        Self::from_polynomial_in(mode, Polynomial::one(nvars))
    }

    pub fn constant(mode: Mode, nvars: usize, c: Rational) -> Self {
        Self::from_polynomial_in(mode, Polynomial::constant(nvars, c))
    }

    pub fn var(mode: Mode, nvars: usize, i: usize) -> Self {
        Self::from_polynomial_in(mode, Polynomial::var(nvars, i))
    }

    pub fn from_polynomial_in(mode: Mode, p: Polynomial) -> Self {
        match mode {
            Mode::Polynomial => Scalar::Poly(p),
            Mode::FractionField => Scalar::Frac(RationalFunction::from_polynomial(p)),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Poly(_) => Mode::Polynomial,
            Scalar::Frac(_) => Mode::FractionField,
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            Scalar::Poly(p) => p.nvars(),
            Scalar::Frac(f) => f.nvars(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Poly(p) => p.is_zero(),
            Scalar::Frac(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_polynomial().is_some_and(Polynomial::is_one)
    }

    /// The underlying polynomial, for polynomial scalars and fractions with
    /// denominator 1.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        match self {
            Scalar::Poly(p) => Some(p),
            Scalar::Frac(f) => f.as_polynomial(),
        }
    }

    pub fn to_frac(&self) -> RationalFunction {
        match self {
            Scalar::Poly(p) => RationalFunction::from_polynomial(p.clone()),
            Scalar::Frac(f) => f.clone(),
        }
    }

    /// Converts to `mode`; demotion only succeeds for polynomial values.
    pub fn to_mode(&self, mode: Mode) -> Result<Scalar> {
        match (self, mode) {
            (Scalar::Poly(_), Mode::Polynomial) | (Scalar::Frac(_), Mode::FractionField) => {
                Ok(self.clone())
            }
            (Scalar::Poly(p), Mode::FractionField) => {
                Ok(Scalar::Frac(RationalFunction::from_polynomial(p.clone())))
            }
            (Scalar::Frac(f), Mode::Polynomial) => {
                f.as_polynomial().cloned().map(Scalar::Poly).ok_or_else(|| {
                    Error::ModeMismatch(
                        "rational function used where a polynomial is required".into(),
                    )
                })
            }
        }
    }

    fn check_arity(&self, other: &Scalar) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::ArityMismatch(format!(
                "scalars over {} and {} variables",
                self.nvars(),
                other.nvars()
            )));
        }
        Ok(())
    }

    /// Exact ring operation with arity and zero-divisor checks.
    pub fn arith(&self, other: &Scalar, op: ArithOp) -> Result<Scalar> {
        self.check_arity(other)?;
        Ok(match op {
            ArithOp::Add => self.add_unchecked(other),
            ArithOp::Sub => self.add_unchecked(&other.neg_value()),
            ArithOp::Mul => self.mul_unchecked(other),
            ArithOp::Div => return self.div(other),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_arity(other)?;
        if other.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        match (self, other) {
            (Scalar::Poly(a), Scalar::Poly(b)) => match b.constant_value() {
                Some(c) => Ok(Scalar::Poly(a.scale(&c.recip()))),
                None => Err(Error::ModeMismatch(
                    "division by a non-constant requires fraction-field mode".into(),
                )),
            },
            _ => Ok(Scalar::Frac(self.to_frac().div(&other.to_frac())?)),
        }
    }

    fn add_unchecked(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Poly(a), Scalar::Poly(b)) => Scalar::Poly(a + b),
            _ => Scalar::Frac(self.to_frac().add(&other.to_frac())),
        }
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Poly(a), Scalar::Poly(b)) => Scalar::Poly(a * b),
            (Scalar::Poly(a), Scalar::Frac(f)) | (Scalar::Frac(f), Scalar::Poly(a))
                if a.is_constant() =>
            {
                Scalar::Frac(f.scale(&a.constant_value().unwrap()))
            }
            _ => Scalar::Frac(self.to_frac().mul(&other.to_frac())),
        }
    }

    fn neg_value(&self) -> Scalar {
        match self {
            Scalar::Poly(p) => Scalar::Poly(-p),
            Scalar::Frac(f) => Scalar::Frac(f.neg()),
        }
    }

    pub fn scale(&self, c: &Rational) -> Scalar {
        match self {
            Scalar::Poly(p) => Scalar::Poly(p.scale(c)),
            Scalar::Frac(f) => Scalar::Frac(f.scale(c)),
        }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        match self {
            Scalar::Poly(p) => Scalar::Poly(p.pow(n)),
            Scalar::Frac(f) => {
                let mut acc = RationalFunction::from_polynomial(Polynomial::one(f.nvars()));
                for _ in 0..n {
                    acc = acc.mul(f);
                }
                Scalar::Frac(acc)
            }
        }
    }

    /// Partial derivative `d/dx_var` (0-based variable index).
    pub fn derive(&self, var: usize) -> Result<Scalar> {
        if var >= self.nvars() {
            return Err(Error::ArityMismatch(format!(
                "variable index {} out of range for {} variables",
                var + 1,
                self.nvars()
            )));
        }
        Ok(match self {
            Scalar::Poly(p) => Scalar::Poly(p.derive(var)),
            Scalar::Frac(f) => Scalar::Frac(f.derive(var)),
        })
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> ScalarDisplay<'a> {
        ScalarDisplay { s: self, names }
    }

    /// Single-term polynomial with a negative coefficient: printed with a
    /// leading sign that can be folded into a surrounding sum.
    fn is_negative_monomial(&self) -> bool {
        self.as_polynomial()
            .is_some_and(|p| p.num_terms() == 1 && p.leading_coefficient().is_negative())
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Poly(a), Scalar::Poly(b)) => a == b,
            (Scalar::Frac(a), Scalar::Frac(b)) => a == b,
            _ => self.to_frac() == other.to_frac(),
        }
    }
}

impl Eq for Scalar {}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Poly(p) => write!(f, "{p:?}"),
            Scalar::Frac(r) => write!(f, "{r:?}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        assert_eq!(self.nvars(), rhs.nvars(), "arity mismatch");
        self.add_unchecked(rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        assert_eq!(self.nvars(), rhs.nvars(), "arity mismatch");
        self.add_unchecked(&rhs.neg_value())
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        assert_eq!(self.nvars(), rhs.nvars(), "arity mismatch");
        self.mul_unchecked(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_value()
    }
}

pub struct ScalarDisplay<'a> {
    s: &'a Scalar,
    names: &'a [String],
}

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.s {
            Scalar::Poly(p) => write!(f, "{}", p.display(self.names)),
            Scalar::Frac(r) => write!(f, "{}", r.display(self.names)),
        }
    }
}

/// Writes one term `coefficient * basis` of a sum. `basis` is empty for the
/// unit; `first` controls whether a leading ` + ` is emitted.
pub(crate) fn write_scaled_term(
    f: &mut impl fmt::Write,
    coeff: &Scalar,
    names: &[String],
    basis: &str,
    first: bool,
) -> fmt::Result {
    if basis.is_empty() {
        // a bare coefficient continues the sum term by term
        let text = coeff.display(names).to_string();
        return match (first, text.strip_prefix('-')) {
            (true, _) => f.write_str(&text),
            (false, Some(rest)) => write!(f, " - {rest}"),
            (false, None) => write!(f, " + {text}"),
        };
    }
    let negative = coeff.is_negative_monomial();
    let shown = if negative { -coeff } else { coeff.clone() };
    match (first, negative) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    if shown.is_one() {
        return f.write_str(basis);
    }
    match shown.as_polynomial() {
        Some(p) if p.is_atomic() => write!(f, "{}*{basis}", p.display(names)),
        Some(p) => write!(f, "({})*{basis}", p.display(names)),
        None => write!(f, "{}*{basis}", shown.display(names)),
    }
}

/// Variable names plus arithmetic mode: the context needed to parse and print
/// scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<String>,
    mode: Mode,
}

impl Ring {
    pub fn new(vars: Vec<String>, mode: Mode) -> Self {
        Ring { vars, mode }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(&self, mode: Mode) -> Ring {
        Ring {
            vars: self.vars.clone(),
            mode,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(self.mode, self.nvars())
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(self.mode, self.nvars())
    }

    pub fn var(&self, i: usize) -> Scalar {
        Scalar::var(self.mode, self.nvars(), i)
    }

    pub fn constant(&self, c: Rational) -> Scalar {
        Scalar::constant(self.mode, self.nvars(), c)
    }

    pub fn int(&self, c: i64) -> Scalar {
        self.constant(Rational::from_integer(c.into()))
    }

    pub fn polynomial(&self, p: Polynomial) -> Scalar {
        Scalar::from_polynomial_in(self.mode, p)
    }

    /// The ring monomial `x^e` as a scalar.
    pub fn monomial(&self, e: &crate::monomial::Exponents) -> Scalar {
        self.polynomial(Polynomial::term(e.clone(), Rational::one()))
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Brings a scalar into this ring's mode (promotion only).
    pub fn coerce(&self, s: &Scalar) -> Result<Scalar> {
        if s.nvars() != self.nvars() {
            return Err(Error::ArityMismatch(format!(
                "scalar over {} variables used in a ring with {}",
                s.nvars(),
                self.nvars()
            )));
        }
        match (s.mode(), self.mode) {
            (Mode::FractionField, Mode::Polynomial) => Err(Error::ModeMismatch(
                "fraction-field scalar used with a polynomial-mode ring".into(),
            )),
            _ => s.to_mode(self.mode),
        }
    }

    pub fn parse(&self, text: &str) -> Result<Scalar> {
        self.parse_at(text, 1, 0)
    }

    pub fn parse_at(&self, text: &str, line: usize, col_offset: usize) -> Result<Scalar> {
        let e = expr::parse_at(text, line, col_offset)?;
        expr::evaluate(&e, self)
    }

    pub fn display(&self, s: &Scalar) -> String {
        s.display(&self.vars).to_string()
    }
}

impl ExprAlgebra for Ring {
    type Value = Scalar;

    fn number(&self, n: &BigInt) -> Result<Scalar> {
        Ok(self.constant(Rational::from_integer(n.clone())))
    }

    fn ident(&self, name: &str, pos: Pos) -> Result<Scalar> {
        self.var_index(name)
            .map(|i| self.var(i))
            .ok_or_else(|| Error::UnknownSymbol {
                name: name.to_string(),
                line: pos.line,
                column: pos.column,
            })
    }

    fn add(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(&a + &b)
    }

    fn sub(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(&a - &b)
    }

    fn neg(&self, a: Scalar) -> Result<Scalar> {
        Ok(-&a)
    }

    fn mul(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(&a * &b)
    }

    fn div(&self, a: Scalar, b: Scalar, pos: Pos) -> Result<Scalar> {
        a.div(&b).map_err(|e| match e {
            Error::ZeroDivisor => Error::parse(pos.line, pos.column, "division by zero"),
            other => other,
        })
    }

    fn pow(&self, a: Scalar, n: u32, _pos: Pos) -> Result<Scalar> {
        Ok(a.pow(n))
    }
}

/// Parses a scalar expression over the given ring.
pub fn parse_scalar(text: &str, ring: &Ring) -> Result<Scalar> {
    ring.parse(text)
}
