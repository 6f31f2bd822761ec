use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write;

use num_traits::{One, Signed};

use crate::coeffring::{Rational, Scalar};
use crate::error::{Error, Result};
use crate::monomial::Exponents;

/// A `k`-fold tensor over `R` of free modules whose bases are indexed by
/// exponent vectors, in canonical form: one scalar per tuple of basis
/// monomials, written on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    fold: usize,
    terms: BTreeMap<Vec<Exponents>, Scalar>,
}

impl Tensor {
    pub fn zero(fold: usize) -> Self {
        Tensor {
            fold,
            terms: BTreeMap::new(),
        }
    }

    pub fn fold(&self) -> usize {
        self.fold
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Exponents>, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, key: &[Exponents]) -> Option<&Scalar> {
        self.terms.get(key)
    }

    pub fn add_term(&mut self, key: Vec<Exponents>, c: Scalar) {
        debug_assert_eq!(key.len(), self.fold);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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

    pub fn from_terms(
        fold: usize,
        terms: impl IntoIterator<Item = (Vec<Exponents>, Scalar)>,
    ) -> Self {
        let mut t = Tensor::zero(fold);
        for (k, c) in terms {
            t.add_term(k, c);
        }
        t
    }

    pub fn add_assign(&mut self, other: &Tensor) {
        assert_eq!(self.fold, other.fold, "tensor fold mismatch");
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Tensor {
        Tensor {
            fold: self.fold,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    /// The left module action `r . t`.
    pub fn scale(&self, r: &Scalar) -> Tensor {
        Tensor::from_terms(
            self.fold,
            self.terms.iter().map(|(k, c)| (k.clone(), r * c)),
        )
    }

    pub fn scale_rational(&self, q: &Rational) -> Tensor {
        Tensor::from_terms(
            self.fold,
            self.terms.iter().map(|(k, c)| (k.clone(), c.scale(q))),
        )
    }

    /// Permutes slots: slot `s` of the result is slot `perm[s]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        assert_eq!(perm.len(), self.fold);
        Tensor::from_terms(
            self.fold,
            self.terms
                .iter()
                .map(|(k, c)| (perm.iter().map(|&p| k[p].clone()).collect(), c.clone())),
        )
    }

    /// Exchanges the two slots of a 2-fold tensor.
    pub fn swap(&self) -> Tensor {
        assert_eq!(self.fold, 2);
        self.permute(&[1, 0])
    }

    /// Replaces slot `slot` of every term by the given tensor-valued image of
    /// its basis monomial, pulling scalars to the left. `width` is the fold of
    /// every image.
    pub fn map_slot(
        &self,
        slot: usize,
        width: usize,
        image: impl Fn(&Exponents) -> Tensor,
    ) -> Tensor {
        let mut out = Tensor::zero(self.fold - 1 + width);
        for (k, c) in &self.terms {
            let img = image(&k[slot]);
            assert_eq!(img.fold, width, "image has the wrong fold");
            for (ik, ic) in &img.terms {
                let mut key = Vec::with_capacity(out.fold);
                key.extend_from_slice(&k[..slot]);
                key.extend(ik.iter().cloned());
                key.extend_from_slice(&k[slot + 1..]);
                out.add_term(key, c * ic);
            }
        }
        out
    }

    /// Like [`Tensor::map_slot`] for images with rational coefficients;
    /// `width` is the fold of every image.
    pub fn map_slot_rational(
        &self,
        slot: usize,
        width: usize,
        image: impl Fn(&Exponents) -> Vec<(Vec<Exponents>, Rational)>,
    ) -> Tensor {
        let mut out = Tensor::zero(self.fold - 1 + width);
        for (k, c) in &self.terms {
            for (ik, q) in image(&k[slot]) {
                let mut key = Vec::with_capacity(out.fold);
                key.extend_from_slice(&k[..slot]);
                key.extend(ik);
                key.extend_from_slice(&k[slot + 1..]);
                out.add_term(key, c.scale(&q));
            }
        }
        out
    }

    /// Rational coordinates with respect to the `Q`-basis
    /// `x^gamma . (m1 (x) ... (x) mk)`. Fails on non-polynomial coefficients.
    pub fn rational_coordinates(&self) -> Result<BTreeMap<(Exponents, Vec<Exponents>), Rational>> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            let p = c
                .as_polynomial()
                .ok_or_else(|| Error::NonPolynomial(format!("{c:?}")))?;
            for (g, q) in p.terms() {
                out.insert((g.clone(), k.clone()), q.clone());
            }
        }
        Ok(out)
    }

    /// `c . (m1 (x) m2 (x) ...)` terms, descending by total degree and then
    /// lexicographically.
    pub fn render(&self, vars: &[String], monomial: impl Fn(&Exponents) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<(&Vec<Exponents>, &Scalar)> = self.terms.iter().collect();
        keys.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().map(Exponents::degree).sum();
            let db: u32 = b.iter().map(Exponents::degree).sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (n, (k, c)) in keys.into_iter().enumerate() {
            let single_negative = c
                .as_polynomial()
                .is_some_and(|p| p.num_terms() == 1 && p.leading_coefficient().is_negative());
            let shown = if single_negative { -c } else { c.clone() };
            match (n, single_negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let atomic = shown
                .as_polynomial()
                .is_some_and(|p| p.num_terms() == 1 && p.leading_coefficient().is_positive());
            if atomic || shown.as_polynomial().is_none() {
                write!(out, "{}", shown.display(vars)).unwrap();
            } else {
                write!(out, "({})", shown.display(vars)).unwrap();
            }
            let slots: Vec<String> = k.iter().map(&monomial).collect();
            write!(out, " · ({})", slots.join(" ⊗ ")).unwrap();
        }
        out
    }
}

/// Multinomial coefficient `prod_i C(alpha_i, beta_i)`.
pub(crate) fn binomial_product(alpha: &Exponents, beta: &Exponents) -> Rational {
    let mut acc = Rational::one();
    for (&a, &b) in alpha.as_slice().iter().zip(beta.as_slice()) {
        acc *= binomial(a, b);
    }
    acc
}

pub(crate) fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * Rational::from_integer((n - i).into()) / Rational::from_integer((i + 1).into());
    }
    acc
}

pub fn factorial(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| {
        acc * Rational::from_integer(k.into())
    })
}
