use std::collections::BTreeMap;

use crate::coeffring::{Rational, Ring};
use crate::error::{Error, Result};
use crate::monomial::Exponents;
use crate::tensor::{factorial, Tensor};

use super::selement::{multiply_slots, reduced_on_monomial, SElement};

/// A non-counital coalgebra that is a free `R`-module on a finite set of basis
/// elements indexed by exponent vectors (a truncation of an infinite one).
pub trait TruncatedCoalgebra {
    fn ring(&self) -> &Ring;

    fn basis(&self) -> Vec<Exponents>;

    /// `delta-bar(b)` as a 2-fold tensor over the same index set.
    fn reduced_coproduct(&self, b: &Exponents) -> Tensor;

    /// The iterate of `delta-bar` landing in `n + 1` copies; `n = 0` gives
    /// `b` itself as a 1-fold tensor.
    fn iterated(&self, b: &Exponents, n: usize) -> Tensor {
        let mut t = Tensor::from_terms(1, [(vec![b.clone()], self.ring().one())]);
        for _ in 0..n {
            t = t.map_slot(0, 2, |a| self.reduced_coproduct(a));
        }
        t
    }
}

/// The augmentation ideal of `S(V)` in degrees `1..=max_degree`.
#[derive(Clone, Debug)]
pub struct SymmetricTruncation {
    ring: Ring,
    rank: usize,
    max_degree: u32,
}

impl SymmetricTruncation {
    pub fn new(ring: Ring, rank: usize, max_degree: u32) -> Self {
        SymmetricTruncation {
            ring,
            rank,
            max_degree,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl TruncatedCoalgebra for SymmetricTruncation {
    fn ring(&self) -> &Ring {
        &self.ring
    }

    fn basis(&self) -> Vec<Exponents> {
        Exponents::up_to_degree(self.rank, 1, self.max_degree)
    }

    fn reduced_coproduct(&self, b: &Exponents) -> Tensor {
        Tensor::from_terms(
            2,
            reduced_on_monomial(b)
                .into_iter()
                .map(|(k, q)| (k, self.ring.constant(q))),
        )
    }
}

/// The components `g_1, ..., g_N` of a coalgebra map into `S(V)`, each
/// tabulated on the basis of the source.
#[derive(Clone, Debug, PartialEq)]
pub struct CofreeExtension {
    rank: usize,
    components: Vec<BTreeMap<Exponents, SElement>>,
}

impl CofreeExtension {
    pub fn bound(&self) -> usize {
        self.components.len()
    }

    /// `g_n(b)` for `1 <= n <= N`.
    pub fn component(&self, n: usize, b: &Exponents) -> SElement {
        self.components[n - 1]
            .get(b)
            .cloned()
            .unwrap_or_else(|| SElement::zero(self.rank))
    }

    /// `g(b) = sum_n g_n(b)`.
    pub fn total(&self, b: &Exponents) -> SElement {
        (1..=self.bound()).fold(SElement::zero(self.rank), |acc, n| {
            acc.add(&self.component(n, b))
        })
    }

    /// `(g (x) g)` applied to a 2-fold tensor over the source basis.
    pub fn apply_pair(&self, t: &Tensor) -> Tensor {
        let mut out = Tensor::zero(2);
        for (k, c) in t.terms() {
            let (a, b) = (self.total(&k[0]), self.total(&k[1]));
            for (ea, ca) in a.terms() {
                for (eb, cb) in b.terms() {
                    out.add_term(vec![ea.clone(), eb.clone()], &(c * ca) * cb);
                }
            }
        }
        out
    }
}

/// Extends `g1: C -> V` (given on basis elements, as degree-one elements of
/// `S(V)`; missing entries are zero) to the unique coalgebra map `C -> S(V)`:
/// `g_n(b) = (1/n!) mu(g1^(x)n(delta-bar iterated to n copies (b)))`.
///
/// Fails with `NotCocomplete` if some basis element survives `N + 1`-fold
/// iteration of the reduced coproduct.
pub fn cofree_extend(
    c: &impl TruncatedCoalgebra,
    g1: &BTreeMap<Exponents, SElement>,
    rank: usize,
    bound: usize,
) -> Result<CofreeExtension> {
    let basis = c.basis();
    for b in &basis {
        if !c.iterated(b, bound).is_zero() {
            return Err(Error::NotCocomplete { bound });
        }
    }
    let image = |a: &Exponents| g1.get(a).cloned().unwrap_or_else(|| SElement::zero(rank));
    let mut components = Vec::with_capacity(bound);
    for n in 1..=bound {
        let inv = Rational::from_integer(1.into()) / factorial(n as u32);
        let mut table = BTreeMap::new();
        for b in &basis {
            let t = c.iterated(b, n - 1);
            let mut acc = SElement::zero(rank);
            for (k, coeff) in t.terms() {
                let prod = k
                    .iter()
                    .fold(SElement::one(c.ring(), rank), |p, a| p.mul(&image(a)));
                acc = acc.add(&prod.scale(coeff));
            }
            let acc = acc.scale_rational(&inv);
            if !acc.is_zero() {
                table.insert(b.clone(), acc);
            }
        }
        components.push(table);
    }
    Ok(CofreeExtension { rank, components })
}

/// Basis elements where the coalgebra-morphism square fails:
/// `Delta-bar_S(g(b)) != (g (x) g)(delta-bar(b))`.
pub fn morphism_failures(c: &impl TruncatedCoalgebra, g: &CofreeExtension) -> Vec<Exponents> {
    c.basis()
        .into_iter()
        .filter(|b| {
            let lhs = g.total(b).s_reduced_coproduct();
            let rhs = g.apply_pair(&c.reduced_coproduct(b));
            lhs != rhs
        })
        .collect()
}

/// `mu(delta-bar iterated to n copies (a))`, for the symmetrization identity.
pub fn symmetrize(a: &SElement, n: usize) -> SElement {
    if n == 0 {
        return SElement::zero(a.rank());
    }
    multiply_slots(&a.s_iterated_reduced_coproduct(n - 1), a.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::Mode;

    fn q_ring() -> Ring {
        Ring::new(vec![], Mode::Polynomial)
    }

    fn projection(ring: &Ring, rank: usize) -> BTreeMap<Exponents, SElement> {
        (0..rank)
            .map(|i| (Exponents::unit(rank, i), SElement::generator(ring, rank, i)))
            .collect()
    }

    #[test]
    fn identity_components_on_symmetric_coalgebra() {
        let ring = q_ring();
        let c = SymmetricTruncation::new(ring.clone(), 2, 4);
        let g = cofree_extend(&c, &projection(&ring, 2), 2, 4).unwrap();
        for b in c.basis() {
            for n in 1..=4 {
                let expected = if b.degree() as usize == n {
                    SElement::term(2, b.clone(), ring.one())
                } else {
                    SElement::zero(2)
                };
                assert_eq!(g.component(n, &b), expected, "g_{n}({b:?})");
            }
        }
        assert!(morphism_failures(&c, &g).is_empty());
    }

    #[test]
    fn primitive_input_has_no_higher_components() {
        let ring = q_ring();
        let c = SymmetricTruncation::new(ring.clone(), 1, 3);
        let v = Exponents::new(vec![1]);
        let g = cofree_extend(&c, &projection(&ring, 1), 1, 3).unwrap();
        assert!(g.component(2, &v).is_zero());
        assert!(g.component(3, &v).is_zero());
    }

    struct GroupLike(Ring);

    impl TruncatedCoalgebra for GroupLike {
        fn ring(&self) -> &Ring {
            &self.0
        }

        fn basis(&self) -> Vec<Exponents> {
            vec![Exponents::new(vec![1])]
        }

        fn reduced_coproduct(&self, b: &Exponents) -> Tensor {
            Tensor::from_terms(2, [(vec![b.clone(), b.clone()], self.0.one())])
        }
    }

    #[test]
    fn grouplike_element_is_not_cocomplete() {
        let ring = q_ring();
        let err = cofree_extend(&GroupLike(ring.clone()), &projection(&ring, 1), 1, 3).unwrap_err();
        assert!(matches!(err, Error::NotCocomplete { bound: 3 }));
    }

    #[test]
    fn symmetrization_is_factorial() {
        let ring = q_ring();
        for n in 1..=4u32 {
            for e in Exponents::of_degree(3, n) {
                let a = SElement::term(3, e, ring.int(2));
                let expected = a.scale_rational(&factorial(n));
                assert_eq!(symmetrize(&a, n as usize), expected);
            }
        }
    }
}
