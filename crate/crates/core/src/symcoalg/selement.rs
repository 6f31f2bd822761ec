use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::coeffring::{write_scaled_term, Rational, Ring, Scalar};
use crate::error::{Error, Result};
use crate::monomial::{write_power_product, Exponents};
use crate::tensor::{binomial_product, Tensor};

/// An element of the symmetric algebra `S_R(V)` on a free module `V` of rank
/// `m`, as a map from exponent vectors to coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SElement {
    rank: usize,
    terms: BTreeMap<Exponents, Scalar>,
}

/// Default generator names for printing: `v` for rank 1, else `v1..vm`.
pub fn generator_names(rank: usize) -> Vec<String> {
    if rank == 1 {
        vec!["v".into()]
    } else {
        (1..=rank).map(|i| format!("v{i}")).collect()
    }
}

impl SElement {
    pub fn zero(rank: usize) -> Self {
        SElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring, rank: usize) -> Self {
        Self::term(rank, Exponents::zero(rank), ring.one())
    }

    pub fn generator(ring: &Ring, rank: usize, i: usize) -> Self {
        Self::term(rank, Exponents::unit(rank, i), ring.one())
    }

    pub fn term(rank: usize, e: Exponents, c: Scalar) -> Self {
        let mut s = SElement::zero(rank);
        s.add_term(e, c);
        s
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Exponents, Scalar)>) -> Self {
        let mut s = SElement::zero(rank);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: Scalar) {
        assert_eq!(e.len(), self.rank, "exponent length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
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

    pub fn coefficient(&self, e: &Exponents) -> Option<&Scalar> {
        self.terms.get(e)
    }

    /// Highest total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponents::degree).max()
    }

    /// The component in `S^n`.
    pub fn homogeneous(&self, n: u32) -> SElement {
        SElement {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == n)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &SElement) -> SElement {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SElement) -> SElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SElement {
        SElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, r: &Scalar) -> SElement {
        SElement::from_terms(
            self.rank,
            self.terms.iter().map(|(e, c)| (e.clone(), r * c)),
        )
    }

    pub fn scale_rational(&self, q: &Rational) -> SElement {
        SElement::from_terms(
            self.rank,
            self.terms.iter().map(|(e, c)| (e.clone(), c.scale(q))),
        )
    }

    /// Commutative product: exponent vectors add, coefficients multiply.
    pub fn s_multiply(&self, other: &SElement) -> Result<SElement> {
        if self.rank != other.rank {
            return Err(Error::ArityMismatch(format!(
                "symmetric algebra elements of rank {} and {}",
                self.rank, other.rank
            )));
        }
        Ok(self.mul(other))
    }

    pub(crate) fn mul(&self, other: &SElement) -> SElement {
        let mut out = SElement::zero(self.rank);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }

    /// The coproduct determined by `v -> 1 (x) v + v (x) 1` and
    /// multiplicativity: `v^a -> sum_{b <= a} C(a, b) v^b (x) v^(a-b)`.
    pub fn s_coproduct(&self) -> Tensor {
        let mut out = Tensor::zero(2);
        for (alpha, c) in &self.terms {
            for beta in alpha.divisors() {
                let gamma = alpha.checked_sub(&beta).expect("divisor");
                let k = binomial_product(alpha, &beta);
                out.add_term(vec![beta, gamma], c.scale(&k));
            }
        }
        out
    }

    /// The coproduct with the `1 (x) a` and `a (x) 1` boundary terms removed.
    pub fn s_reduced_coproduct(&self) -> Tensor {
        let t = Tensor::from_terms(
            1,
            self.terms.iter().map(|(e, c)| (vec![e.clone()], c.clone())),
        );
        t.map_slot_rational(0, 2, reduced_on_monomial)
    }

    /// Iterated reduced coproduct landing in `n + 1` copies.
    pub fn s_iterated_reduced_coproduct(&self, n: usize) -> Tensor {
        let mut t = Tensor::from_terms(
            1,
            self.terms.iter().map(|(e, c)| (vec![e.clone()], c.clone())),
        );
        for _ in 0..n {
            t = t.map_slot_rational(0, 2, reduced_on_monomial);
        }
        t
    }

    /// Coordinates in the `Q`-basis `x^gamma v^alpha`, keyed `(gamma, alpha)`.
    pub fn rational_coordinates(&self) -> Result<BTreeMap<(Exponents, Exponents), Rational>> {
        let mut out = BTreeMap::new();
        for (a, c) in &self.terms {
            let p = c
                .as_polynomial()
                .ok_or_else(|| Error::NonPolynomial(format!("{c:?}")))?;
            for (g, q) in p.terms() {
                out.insert((g.clone(), a.clone()), q.clone());
            }
        }
        Ok(out)
    }

    pub fn display<'a>(&'a self, vars: &'a [String], names: &'a [String]) -> SElementDisplay<'a> {
        SElementDisplay {
            s: self,
            vars,
            names,
        }
    }
}

/// Reduced coproduct of a single monomial `v^alpha` (empty for `alpha = 0`).
pub(crate) fn reduced_on_monomial(alpha: &Exponents) -> Vec<(Vec<Exponents>, Rational)> {
    alpha
        .divisors()
        .into_iter()
        .filter(|b| !b.is_zero() && b != alpha)
        .map(|beta| {
            let k = binomial_product(alpha, &beta);
            let gamma = alpha.checked_sub(&beta).expect("divisor");
            (vec![beta, gamma], k)
        })
        .collect()
}

/// Multiplies the slots of a tensor of symmetric-algebra monomials.
pub fn multiply_slots(t: &Tensor, rank: usize) -> SElement {
    let mut out = SElement::zero(rank);
    for (k, c) in t.terms() {
        let e = k.iter().fold(Exponents::zero(rank), |acc, m| acc.add(m));
        out.add_term(e, c.clone());
    }
    out
}

pub struct SElementDisplay<'a> {
    s: &'a SElement,
    vars: &'a [String],
    names: &'a [String],
}

impl fmt::Display for SElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s.is_zero() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.s.terms.iter().rev().enumerate() {
            let mut mono = String::new();
            write_power_product(&mut mono, e, self.names)?;
            write_scaled_term(f, c, self.vars, &mono, n == 0)?;
        }
        Ok(())
    }
}
