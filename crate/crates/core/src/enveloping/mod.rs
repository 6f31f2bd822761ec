//! The universal enveloping algebra of a free Lie-Rinehart algebra, modelled
//! as the free left `R`-module on ordered (PBW) monomials `e1^a1 ... em^am`.

mod rewrite;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;

pub use rewrite::{Letter, Rewriter, Strategy};

use crate::coeffring::{write_scaled_term, Rational, Ring, Scalar};
use crate::error::{Error, Result};
use crate::expr::{self, ExprAlgebra, Pos};
use crate::lie_rinehart::{LElement, LrPresentation};
use crate::monomial::{write_power_product, Exponents};
use crate::symcoalg::SElement;
use crate::tensor::Tensor;

/// An element `sum_alpha r_alpha e^alpha` in PBW normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UElement {
    rank: usize,
    terms: BTreeMap<Exponents, Scalar>,
}

impl UElement {
    pub fn zero(rank: usize) -> Self {
        UElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(rank: usize, alpha: Exponents, c: Scalar) -> Self {
        let mut u = UElement::zero(rank);
        u.add_term(alpha, c);
        u
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Exponents, Scalar)>) -> Self {
        let mut u = UElement::zero(rank);
        for (a, c) in terms {
            u.add_term(a, c);
        }
        u
    }

    pub(crate) fn add_term(&mut self, alpha: Exponents, c: Scalar) {
        assert_eq!(alpha.len(), self.rank, "monomial length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, alpha: &Exponents) -> Option<&Scalar> {
        self.terms.get(alpha)
    }

    /// Coefficient of the empty monomial, i.e. the `R`-part.
    pub fn constant_part(&self) -> Option<&Scalar> {
        self.terms.get(&Exponents::zero(self.rank))
    }

    pub fn add(&self, other: &UElement) -> UElement {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &UElement) -> UElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UElement {
        UElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect(),
        }
    }

    /// Left multiplication by a ring element.
    pub fn scale(&self, r: &Scalar) -> UElement {
        UElement::from_terms(
            self.rank,
            self.terms.iter().map(|(a, c)| (a.clone(), r * c)),
        )
    }

    pub fn scale_rational(&self, q: &Rational) -> UElement {
        UElement::from_terms(
            self.rank,
            self.terms.iter().map(|(a, c)| (a.clone(), c.scale(q))),
        )
    }

    /// Highest `|alpha|`; `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponents::degree).max()
    }

    pub fn display<'a>(&'a self, pres: &'a LrPresentation) -> UElementDisplay<'a> {
        UElementDisplay { u: self, pres }
    }
}

pub struct UElementDisplay<'a> {
    u: &'a UElement,
    pres: &'a LrPresentation,
}

impl fmt::Display for UElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.u.is_zero() {
            return f.write_str("0");
        }
        for (n, (a, c)) in self.u.terms.iter().rev().enumerate() {
            let mut mono = String::new();
            write_power_product(&mut mono, a, self.pres.basis_names())?;
            write_scaled_term(f, c, self.pres.ring().vars(), &mono, n == 0)?;
        }
        Ok(())
    }
}

/// `U(R, L)` for a validated presentation, with a cache of normalized
/// products `e_i * e^beta`.
#[derive(Debug)]
pub struct Enveloping {
    pres: LrPresentation,
    cache: Mutex<HashMap<(usize, Exponents), UElement>>,
    pub(crate) coproducts: Mutex<HashMap<Exponents, Tensor>>,
}

impl Clone for Enveloping {
    fn clone(&self) -> Self {
        Enveloping {
            pres: self.pres.clone(),
            cache: Mutex::new(HashMap::new()),
            coproducts: Mutex::new(HashMap::new()),
        }
    }
}

impl Enveloping {
    pub fn new(pres: LrPresentation) -> Result<Self> {
        pres.require_validated()?;
        Ok(Enveloping {
            pres,
            cache: Mutex::new(HashMap::new()),
            coproducts: Mutex::new(HashMap::new()),
        })
    }

    pub fn presentation(&self) -> &LrPresentation {
        &self.pres
    }

    pub fn ring(&self) -> &Ring {
        self.pres.ring()
    }

    pub fn rank(&self) -> usize {
        self.pres.rank()
    }

    pub fn zero(&self) -> UElement {
        UElement::zero(self.rank())
    }

    pub fn one(&self) -> UElement {
        self.embed_r_unchecked(self.ring().one())
    }

    /// `e^alpha` with coefficient 1.
    pub fn monomial(&self, alpha: &Exponents) -> UElement {
        UElement::term(self.rank(), alpha.clone(), self.ring().one())
    }

    pub fn generator(&self, i: usize) -> UElement {
        self.monomial(&Exponents::unit(self.rank(), i))
    }

    pub fn embed_r(&self, r: &Scalar) -> Result<UElement> {
        Ok(self.embed_r_unchecked(self.ring().coerce(r)?))
    }

    fn embed_r_unchecked(&self, r: Scalar) -> UElement {
        UElement::term(self.rank(), Exponents::zero(self.rank()), r)
    }

    pub fn embed_l(&self, x: &LElement) -> Result<UElement> {
        self.check_rank(x.rank())?;
        let mut u = self.zero();
        for (i, c) in x.coeffs().iter().enumerate() {
            u.add_term(Exponents::unit(self.rank(), i), self.ring().coerce(c)?);
        }
        Ok(u)
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        if rank != self.rank() {
            return Err(Error::ArityMismatch(format!(
                "element of rank {rank} used with an algebra of rank {}",
                self.rank()
            )));
        }
        Ok(())
    }

    /// PBW normal form of `u * v`.
    pub fn multiply(&self, u: &UElement, v: &UElement) -> Result<UElement> {
        self.check_rank(u.rank)?;
        self.check_rank(v.rank)?;
        Ok(self.mul(u, v))
    }

    pub(crate) fn mul(&self, u: &UElement, v: &UElement) -> UElement {
        let mut out = self.zero();
        for (alpha, c) in &u.terms {
            let w = self.monomial_times(alpha, v);
            for (b, s) in w.terms {
                out.add_term(b, c * &s);
            }
        }
        out
    }

    /// `e^alpha * v`, peeling the generators of `e^alpha` from the right.
    fn monomial_times(&self, alpha: &Exponents, v: &UElement) -> UElement {
        let mut w = v.clone();
        for i in (0..self.rank()).rev() {
            for _ in 0..alpha.get(i) {
                w = self.gen_times(i, &w);
            }
        }
        w
    }

    /// `e_i * w = sum s_beta (e_i e^beta) + e_i(s_beta) e^beta`.
    pub(crate) fn gen_times(&self, i: usize, w: &UElement) -> UElement {
        let mut out = self.zero();
        for (beta, s) in &w.terms {
            for (g, c) in self.gen_times_monomial(i, beta).terms {
                out.add_term(g, s * &c);
            }
            out.add_term(beta.clone(), self.pres.generator_apply(i, s));
        }
        out
    }

    /// Normal form of `e_i * e^beta`.
    fn gen_times_monomial(&self, i: usize, beta: &Exponents) -> UElement {
        let j = match beta.first_index() {
            Some(j) if j < i => j,
            _ => return self.monomial(&beta.incremented(i)),
        };
        let key = (i, beta.clone());
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return hit.clone();
        }
        // e_i e_j e^rest = e_j (e_i e^rest) + [e_i, e_j] e^rest
        let rest = beta
            .checked_sub(&Exponents::unit(self.rank(), j))
            .expect("first index");
        let mut out = self.gen_times(j, &self.gen_times_monomial(i, &rest));
        for (k, c) in self.pres.basis_bracket(i, j).coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (g, s) in self.gen_times_monomial(k, &rest).terms {
                out.add_term(g, c * &s);
            }
        }
        self.cache
            .lock()
            .expect("cache lock")
            .insert(key, out.clone());
        out
    }

    pub fn pow(&self, u: &UElement, n: u32) -> Result<UElement> {
        self.check_rank(u.rank)?;
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, u);
        }
        Ok(acc)
    }

    /// `u*v - v*u`.
    pub fn commutator(&self, u: &UElement, v: &UElement) -> Result<UElement> {
        Ok(self.multiply(u, v)?.sub(&self.multiply(v, u)?))
    }

    /// The representation on `R`: `rho(u)(f)`.
    pub fn apply_rep(&self, u: &UElement, f: &Scalar) -> Result<Scalar> {
        self.check_rank(u.rank)?;
        let f = self.ring().coerce(f)?;
        let mut acc = self.ring().zero();
        for (alpha, c) in &u.terms {
            let mut g = f.clone();
            for i in (0..self.rank()).rev() {
                for _ in 0..alpha.get(i) {
                    g = self.pres.generator_apply(i, &g);
                }
            }
            acc = &acc + &(c * &g);
        }
        Ok(acc)
    }

    /// Filtration degree: the largest `|alpha|` occurring in `u`.
    pub fn pbw_degree(&self, u: &UElement) -> Result<u32> {
        u.max_degree().ok_or(Error::ZeroArgument)
    }

    /// The top-degree part of `u` read in `S^n(L)`, `n = pbw_degree(u)`.
    pub fn symbol(&self, u: &UElement) -> Result<SElement> {
        let n = self.pbw_degree(u)?;
        Ok(SElement::from_terms(
            self.rank(),
            u.terms
                .iter()
                .filter(|(a, _)| a.degree() == n)
                .map(|(a, c)| (a.clone(), c.clone())),
        ))
    }

    pub fn parse(&self, text: &str) -> Result<UElement> {
        self.parse_at(text, 1, 0)
    }

    /// Parses and normalizes an expression such as `d*x + 2`; error columns
    /// are shifted by `col_offset`.
    pub fn parse_at(&self, text: &str, line: usize, col_offset: usize) -> Result<UElement> {
        let e = expr::parse_at(text, line, col_offset)?;
        expr::evaluate(&e, self).map_err(|err| match err {
            Error::Invalid(msg) | Error::ModeMismatch(msg) => {
                Error::parse(line, col_offset + 1, msg)
            }
            other => other,
        })
    }

    pub fn render(&self, u: &UElement) -> String {
        u.display(&self.pres).to_string()
    }
}

impl ExprAlgebra for Enveloping {
    type Value = UElement;

    fn number(&self, n: &BigInt) -> Result<UElement> {
        Ok(self.embed_r_unchecked(self.ring().constant(Rational::from_integer(n.clone()))))
    }

    fn ident(&self, name: &str, pos: Pos) -> Result<UElement> {
        if let Some(i) = self.pres.basis_index(name) {
            return Ok(self.generator(i));
        }
        self.ring()
            .ident(name, pos)
            .map(|s| self.embed_r_unchecked(s))
    }

    fn add(&self, a: UElement, b: UElement) -> Result<UElement> {
        Ok(a.add(&b))
    }

    fn sub(&self, a: UElement, b: UElement) -> Result<UElement> {
        Ok(a.sub(&b))
    }

    fn neg(&self, a: UElement) -> Result<UElement> {
        Ok(a.neg())
    }

    fn mul(&self, a: UElement, b: UElement) -> Result<UElement> {
        Ok(Enveloping::mul(self, &a, &b))
    }

    /// `u / r` is `u * r^-1` for a ring element `r`.
    fn div(&self, a: UElement, b: UElement, pos: Pos) -> Result<UElement> {
        let zero = Exponents::zero(self.rank());
        if b.max_degree().unwrap_or(0) > 0 {
            return Err(Error::parse(
                pos.line,
                pos.column,
                "can only divide by a ring element",
            ));
        }
        let r = b
            .terms
            .get(&zero)
            .cloned()
            .unwrap_or_else(|| self.ring().zero());
        let inv = self.ring().one().div(&r).map_err(|e| match e {
            Error::ZeroDivisor => Error::parse(pos.line, pos.column, "division by zero"),
            Error::ModeMismatch(msg) => Error::parse(pos.line, pos.column, msg),
            other => other,
        })?;
        Ok(Enveloping::mul(self, &a, &self.embed_r_unchecked(inv)))
    }

    fn pow(&self, a: UElement, n: u32, _pos: Pos) -> Result<UElement> {
        Enveloping::pow(self, &a, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn env(p: LrPresentation) -> Enveloping {
        Enveloping::new(p).unwrap()
    }

    fn nf(u: &Enveloping, text: &str) -> String {
        u.render(&u.parse(text).unwrap())
    }

    #[test]
    fn weyl_relations() {
        let u = env(catalog::weyl());
        assert_eq!(nf(&u, "d*x"), "x*d + 1");
        assert_eq!(nf(&u, "d^2*x"), "x*d^2 + 2*d");
        assert_eq!(nf(&u, "d*(x*d)"), "x*d^2 + d");
        assert_eq!(nf(&u, "x*d - d*x"), "-1");
        assert_eq!(nf(&u, "d*x^2"), "x^2*d + 2*x");
        assert_eq!(nf(&u, "0*d"), "0");
    }

    #[test]
    fn aff1_swap() {
        let u = env(catalog::aff1());
        assert_eq!(nf(&u, "v*u"), "u*v - u");
        assert_eq!(nf(&u, "v*x"), "x*v + x");
    }

    #[test]
    fn sl2_relations() {
        let u = env(catalog::sl2());
        assert_eq!(nf(&u, "f*e"), "e*f - h");
        assert_eq!(nf(&u, "h*e"), "e*h + 2*e");
        assert_eq!(nf(&u, "h*f"), "f*h - 2*f");
    }

    #[test]
    fn multi_term_coefficient_is_parenthesized() {
        let u = env(catalog::weyl());
        assert_eq!(nf(&u, "(x + 1)*d"), "(x + 1)*d");
        assert_eq!(nf(&u, "-x*d"), "-x*d");
        assert_eq!(nf(&u, "x*d - x^2 - 1"), "x*d - x^2 - 1");
        assert_eq!(nf(&u, "d + x^2 - 1"), "d + x^2 - 1");
        let v = env(catalog::weyl().localize().unwrap());
        assert_eq!(nf(&v, "d + 1/x"), "d + (1)/(x)");
        assert_eq!(nf(&v, "d - 1/x"), "d + (-1)/(x)");
    }

    #[test]
    fn division_by_ring_elements() {
        let u = env(catalog::weyl());
        assert_eq!(nf(&u, "d/2"), "1/2*d");
        assert!(matches!(u.parse("d/x"), Err(Error::Parse { .. })));
        assert!(matches!(u.parse("x/d"), Err(Error::Parse { .. })));
        let v = env(catalog::weyl().localize().unwrap());
        // d * x^-1 = x^-1 d - x^-2
        let w = v.parse("d/x").unwrap();
        let expected = v.parse("(1/x)*d - 1/x^2").unwrap();
        assert_eq!(w, expected);
    }

    #[test]
    fn embeddings() {
        let u = env(catalog::weyl());
        let p = u.presentation();
        let r = u.ring();
        let xd = p.parse_element("x*d").unwrap();
        let e = u.embed_l(&xd).unwrap();
        assert_eq!(e, UElement::term(1, Exponents::new(vec![1]), r.var(0)));
        let lhs = u
            .multiply(&u.embed_r(&r.var(0)).unwrap(), &u.generator(0))
            .unwrap();
        assert_eq!(lhs, e);
        assert_eq!(u.multiply(&u.one(), &e).unwrap(), e);
        assert!(matches!(
            u.multiply(&UElement::zero(2), &e),
            Err(Error::ArityMismatch(_))
        ));
    }

    #[test]
    fn representation() {
        let u = env(catalog::weyl());
        let r = u.ring();
        let op = u.parse("d^2 + x*d").unwrap();
        let f = r.parse("x^3").unwrap();
        assert_eq!(
            u.apply_rep(&op, &f).unwrap(),
            r.parse("6*x + 3*x^3").unwrap()
        );
        assert_eq!(u.apply_rep(&u.one(), &f).unwrap(), f);
        let g = u.parse("x^2 + x*d").unwrap();
        assert_eq!(u.apply_rep(&g, &r.one()).unwrap(), r.parse("x^2").unwrap());
    }

    #[test]
    fn degrees_and_symbols() {
        let u = env(catalog::weyl());
        let r = u.ring();
        assert_eq!(u.pbw_degree(&u.parse("x^2").unwrap()).unwrap(), 0);
        assert_eq!(u.pbw_degree(&u.parse("x*d^2 + d").unwrap()).unwrap(), 2);
        assert_eq!(u.pbw_degree(&u.parse("d*x").unwrap()).unwrap(), 1);
        assert!(matches!(u.pbw_degree(&u.zero()), Err(Error::ZeroArgument)));
        let s = u.symbol(&u.parse("d*(x*d)").unwrap()).unwrap();
        assert_eq!(s, SElement::term(1, Exponents::new(vec![2]), r.var(0)));
        assert!(matches!(u.symbol(&u.zero()), Err(Error::ZeroArgument)));
    }

    #[test]
    fn requires_validated_presentation() {
        assert!(matches!(
            Enveloping::new(catalog::bad()),
            Err(Error::NotValidated)
        ));
    }

    #[test]
    fn der2_generators_commute_with_other_variable() {
        let u = env(catalog::der2());
        let names = u.presentation().basis_names().to_vec();
        let (a, b) = (&names[0], &names[1]);
        assert_eq!(nf(&u, &format!("{a}*y")), format!("y*{a}"));
        assert_eq!(nf(&u, &format!("{b}*{a}")), format!("{a}*{b}"));
    }
}
