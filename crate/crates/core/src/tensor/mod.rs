//! Tensor powers of `U(R, L)` over `R`, the Rinehart coproduct and counit,
//! reduced and iterated coproducts, the bar-tensor test and primitives.

mod data;

use std::collections::BTreeMap;

pub(crate) use data::binomial_product;
pub use data::factorial;
pub use data::Tensor;

use crate::coeffring::{Mode, Rational, Scalar};
use crate::enveloping::{Enveloping, UElement};
use crate::error::{Error, Result};
use crate::linalg;
use crate::monomial::{write_power_product, Exponents};

impl Enveloping {
    /// Expands `c . (u1 (x) ... (x) uk)` for normalized slot elements into
    /// canonical form, collecting every slot coefficient on the left.
    pub(crate) fn expand(&self, c: &Scalar, slots: &[UElement]) -> Tensor {
        let mut partial: Vec<(Vec<Exponents>, Scalar)> = vec![(Vec::new(), c.clone())];
        for u in slots {
            let mut next = Vec::with_capacity(partial.len() * u.num_terms());
            for (key, s) in &partial {
                for (a, d) in u.terms() {
                    let mut k = key.clone();
                    k.push(a.clone());
                    next.push((k, s * d));
                }
            }
            partial = next;
        }
        Tensor::from_terms(slots.len(), partial)
    }

    fn check_fold(&self, t: &Tensor, fold: usize) -> Result<()> {
        if t.fold() != fold {
            return Err(Error::ArityMismatch(format!(
                "expected a {fold}-fold tensor, found a {}-fold one",
                t.fold()
            )));
        }
        Ok(())
    }

    /// Componentwise product of canonical representatives:
    /// `(c a1 (x) a2 ...)(d b1 (x) b2 ...) = (c a1 d b1) (x) (a2 b2) ...`.
    /// Only well defined when `s` lies in the bar subspace.
    pub fn tensor_mul(&self, s: &Tensor, t: &Tensor) -> Result<Tensor> {
        self.check_fold(t, s.fold())?;
        let mut out = Tensor::zero(s.fold());
        for (ka, c) in s.terms() {
            for (kb, d) in t.terms() {
                let first = self.mul(
                    &UElement::term(self.rank(), ka[0].clone(), c.clone()),
                    &UElement::term(self.rank(), kb[0].clone(), d.clone()),
                );
                let mut slots = vec![first];
                for (a, b) in ka.iter().zip(kb).skip(1) {
                    slots.push(self.mul(&self.monomial(a), &self.monomial(b)));
                }
                out.add_assign(&self.expand(&self.ring().one(), &slots));
            }
        }
        Ok(out)
    }

    /// `Delta(e^alpha)`, the product of `e_i (x) 1 + 1 (x) e_i` in PBW order.
    pub(crate) fn coproduct_monomial(&self, alpha: &Exponents) -> Tensor {
        if let Some(hit) = self.coproducts.lock().expect("cache lock").get(alpha) {
            return hit.clone();
        }
        let m = self.rank();
        let zero = Exponents::zero(m);
        let one = self.ring().one();
        let mut t = Tensor::from_terms(2, [(vec![zero.clone(), zero.clone()], one.clone())]);
        for i in 0..m {
            let e = Exponents::unit(m, i);
            let delta = Tensor::from_terms(
                2,
                [
                    (vec![e.clone(), zero.clone()], one.clone()),
                    (vec![zero.clone(), e], one.clone()),
                ],
            );
            for _ in 0..alpha.get(i) {
                t = self.tensor_mul(&t, &delta).expect("fold 2");
            }
        }
        self.coproducts
            .lock()
            .expect("cache lock")
            .insert(alpha.clone(), t.clone());
        t
    }

    pub fn coproduct(&self, u: &UElement) -> Result<Tensor> {
        self.check_element(u)?;
        let mut out = Tensor::zero(2);
        for (a, c) in u.terms() {
            out.add_assign(&self.coproduct_monomial(a).scale(c));
        }
        Ok(out)
    }

    /// `epsilon(u) = rho(u)(1)`, the coefficient of the empty monomial.
    pub fn counit(&self, u: &UElement) -> Result<Scalar> {
        self.check_element(u)?;
        Ok(u.constant_part()
            .cloned()
            .unwrap_or_else(|| self.ring().zero()))
    }

    fn reduced_coproduct_monomial(&self, alpha: &Exponents) -> Tensor {
        let zero = Exponents::zero(self.rank());
        let one = self.ring().one();
        let mut t = self.coproduct_monomial(alpha);
        t.add_term(vec![alpha.clone(), zero.clone()], -&one);
        t.add_term(vec![zero, alpha.clone()], -&one);
        t
    }

    fn require_augmentation(&self, u: &UElement) -> Result<()> {
        if !self.counit(u)?.is_zero() {
            return Err(Error::NotInAugmentationIdeal(self.render(u)));
        }
        Ok(())
    }

    /// `Delta(u) - u (x) 1 - 1 (x) u` for `u` with zero counit.
    pub fn reduced_coproduct(&self, u: &UElement) -> Result<Tensor> {
        self.require_augmentation(u)?;
        let mut out = Tensor::zero(2);
        for (a, c) in u.terms() {
            out.add_assign(&self.reduced_coproduct_monomial(a).scale(c));
        }
        Ok(out)
    }

    /// The `n`-th iterated reduced coproduct, landing in `n + 1` copies; the
    /// reduced coproduct is applied to the first slot each time.
    pub fn iterated_reduced_coproduct(&self, u: &UElement, n: usize) -> Result<Tensor> {
        if n == 0 {
            return Err(Error::Invalid("iteration count must be positive".into()));
        }
        let mut t = self.reduced_coproduct(u)?;
        for _ in 1..n {
            t = t.map_slot(0, 2, |a| self.reduced_coproduct_monomial(a));
        }
        Ok(t)
    }

    /// Same as [`Enveloping::iterated_reduced_coproduct`] but always expanding
    /// the last slot.
    pub fn iterated_reduced_coproduct_last(&self, u: &UElement, n: usize) -> Result<Tensor> {
        if n == 0 {
            return Err(Error::Invalid("iteration count must be positive".into()));
        }
        let mut t = self.reduced_coproduct(u)?;
        for k in 1..n {
            t = t.map_slot(k, 2, |a| self.reduced_coproduct_monomial(a));
        }
        Ok(t)
    }

    /// Applies `epsilon` to slot `slot` of a 2-fold tensor, giving an element
    /// of `U`.
    pub fn counit_slot(&self, t: &Tensor, slot: usize) -> Result<UElement> {
        self.check_fold(t, 2)?;
        let mut out = self.zero();
        for (k, c) in t.terms() {
            if k[slot].is_zero() {
                out.add_term(k[1 - slot].clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// `theta(t)(r) = sum c (e^a r) (x) e^b - c e^a (x) (e^b r)`.
    pub fn bar_tensor_defect(&self, t: &Tensor, r: &Scalar) -> Result<Tensor> {
        self.check_fold(t, 2)?;
        let r = self.embed_r(r)?;
        let one = self.ring().one();
        let mut out = Tensor::zero(2);
        for (k, c) in t.terms() {
            let (a, b) = (self.monomial(&k[0]), self.monomial(&k[1]));
            out.add_assign(&self.expand(c, &[self.mul(&a, &r), b.clone()]));
            out.add_assign(&self.expand(&-&one, &[a.scale(c), self.mul(&b, &r)]));
        }
        Ok(out)
    }

    /// Whether `theta(t)(r) = 0` for every probe `r`.
    pub fn bar_tensor_check(&self, t: &Tensor, probes: &[Scalar]) -> Result<bool> {
        for r in probes {
            if !self.bar_tensor_defect(t, r)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ring monomials of degree at most `b`, the default probe set.
    pub fn probe_monomials(&self, b: u32) -> Vec<Scalar> {
        Exponents::up_to_degree(self.ring().nvars(), 0, b)
            .iter()
            .map(|g| self.ring().monomial(g))
            .collect()
    }

    /// The least `n` with `Delta-bar^(n)(u) = 0`.
    pub fn primitive_filtration_degree(&self, u: &UElement) -> Result<u32> {
        self.require_augmentation(u)?;
        let bound = u.max_degree().ok_or(Error::ZeroArgument)?;
        let mut t = self.reduced_coproduct(u)?;
        let mut n = 1;
        while !t.is_zero() {
            if n > bound {
                return Err(Error::NotCocomplete {
                    bound: bound as usize,
                });
            }
            t = t.map_slot(0, 2, |a| self.reduced_coproduct_monomial(a));
            n += 1;
        }
        Ok(n)
    }

    /// A `Q`-basis of the primitive elements among the `Q`-span of
    /// `x^gamma e^alpha` with `|gamma| <= e` and `1 <= |alpha| <= d`, in
    /// reduced echelon form.
    pub fn primitives_basis(&self, d: u32, e: u32) -> Result<Vec<UElement>> {
        if self.ring().mode() != Mode::Polynomial {
            return Err(Error::ModeMismatch(
                "primitive bases are computed over polynomial coefficients".into(),
            ));
        }
        let inputs = self.truncated_basis(1, d, e);
        let cols = inputs
            .iter()
            .map(|u| self.reduced_coproduct(u)?.rational_coordinates())
            .collect::<Result<Vec<_>>>()?;
        let kernel = linalg::nullspace(&linalg::from_sparse_columns(&cols), inputs.len());
        Ok(kernel
            .iter()
            .map(|v| {
                let mut u = self.zero();
                for (q, x) in v.iter().zip(&inputs) {
                    u = u.add(&x.scale_rational(q));
                }
                u
            })
            .collect())
    }

    /// `x^gamma e^alpha` with `|gamma| <= e` and `lo <= |alpha| <= hi`,
    /// ordered by `alpha`, then `gamma`, each by ascending degree and
    /// descending lex within a degree.
    pub fn truncated_basis(&self, lo: u32, hi: u32, e: u32) -> Vec<UElement> {
        let alphas = Exponents::up_to_degree(self.rank(), lo, hi);
        let gammas = Exponents::up_to_degree(self.ring().nvars(), 0, e);
        let mut out = Vec::new();
        for a in &alphas {
            for g in &gammas {
                out.push(UElement::term(
                    self.rank(),
                    a.clone(),
                    self.ring().monomial(g),
                ));
            }
        }
        out
    }

    /// Rational coordinates of `u` in the basis `x^gamma e^alpha`.
    pub fn rational_coordinates(
        &self,
        u: &UElement,
    ) -> Result<BTreeMap<(Exponents, Exponents), Rational>> {
        let mut out = BTreeMap::new();
        for (a, c) in u.terms() {
            let p = c
                .as_polynomial()
                .ok_or_else(|| Error::NonPolynomial(self.render(u)))?;
            for (g, q) in p.terms() {
                out.insert((g.clone(), a.clone()), q.clone());
            }
        }
        Ok(out)
    }

    pub fn render_tensor(&self, t: &Tensor) -> String {
        let names = self.presentation().basis_names();
        t.render(self.ring().vars(), |a| {
            if a.is_zero() {
                "1".to_string()
            } else {
                let mut s = String::new();
                write_power_product(&mut s, a, names).expect("write to string");
                s
            }
        })
    }

    pub(crate) fn check_element(&self, u: &UElement) -> Result<()> {
        if u.rank() != self.rank() {
            return Err(Error::ArityMismatch(format!(
                "element of rank {} used with an algebra of rank {}",
                u.rank(),
                self.rank()
            )));
        }
        Ok(())
    }
}
