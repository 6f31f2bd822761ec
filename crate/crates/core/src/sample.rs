//! Seeded random elements for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeffring::{Polynomial, Rational, Ring, Scalar};
use crate::enveloping::{Enveloping, UElement};
use crate::lie_rinehart::{LElement, LrPresentation};
use crate::monomial::Exponents;
use crate::symcoalg::SElement;

/// A deterministic source of small random elements.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn small_rational(&mut self) -> Rational {
        let n: i64 = self.rng.gen_range(1..=5) * if self.rng.gen_bool(0.5) { 1 } else { -1 };
        let d: i64 = *[1, 1, 1, 2, 3].choose(&mut self.rng).expect("nonempty");
        Rational::new(n.into(), d.into())
    }

    fn pick(&mut self, options: &[Exponents]) -> Exponents {
        options.choose(&mut self.rng).expect("nonempty").clone()
    }

    /// A polynomial with up to three terms of degree at most `max_deg`; may be zero.
    pub fn polynomial(&mut self, nvars: usize, max_deg: u32) -> Polynomial {
        let monos = Exponents::up_to_degree(nvars, 0, max_deg);
        let k = self.rng.gen_range(1..=3);
        let terms: Vec<(Exponents, Rational)> = (0..k)
            .map(|_| (self.pick(&monos), self.small_rational()))
            .collect();
        Polynomial::from_terms(nvars, terms)
    }

    pub fn nonzero_polynomial(&mut self, nvars: usize, max_deg: u32) -> Polynomial {
        loop {
            let p = self.polynomial(nvars, max_deg);
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn scalar(&mut self, ring: &Ring, max_deg: u32) -> Scalar {
        ring.polynomial(self.polynomial(ring.nvars(), max_deg))
    }

    pub fn nonzero_scalar(&mut self, ring: &Ring, max_deg: u32) -> Scalar {
        ring.polynomial(self.nonzero_polynomial(ring.nvars(), max_deg))
    }

    pub fn l_element(&mut self, pres: &LrPresentation, coeff_deg: u32) -> LElement {
        LElement::new(
            (0..pres.rank())
                .map(|_| self.scalar(pres.ring(), coeff_deg))
                .collect(),
        )
    }

    /// A nonzero element with one to four terms, `|alpha| <= pbw_deg`.
    pub fn uelement(&mut self, env: &Enveloping, pbw_deg: u32, coeff_deg: u32) -> UElement {
        self.uelement_in(env, 0, pbw_deg, coeff_deg)
    }

    /// A nonzero element of the augmentation ideal (no degree-zero part).
    pub fn augmented(&mut self, env: &Enveloping, pbw_deg: u32, coeff_deg: u32) -> UElement {
        self.uelement_in(env, 1, pbw_deg.max(1), coeff_deg)
    }

    fn uelement_in(&mut self, env: &Enveloping, lo: u32, hi: u32, coeff_deg: u32) -> UElement {
        let monos = Exponents::up_to_degree(env.rank(), lo, hi);
        loop {
            let k = self.rng.gen_range(1..=4);
            let u = UElement::from_terms(
                env.rank(),
                (0..k)
                    .map(|_| (self.pick(&monos), self.scalar(env.ring(), coeff_deg)))
                    .collect::<Vec<_>>(),
            );
            if !u.is_zero() {
                return u;
            }
        }
    }

    /// A nonzero element of `S(V)` with `1 <= |alpha| <= deg`.
    pub fn selement(&mut self, ring: &Ring, rank: usize, deg: u32, coeff_deg: u32) -> SElement {
        let monos = Exponents::up_to_degree(rank, 1, deg);
        loop {
            let k = self.rng.gen_range(1..=3);
            let s = SElement::from_terms(
                rank,
                (0..k)
                    .map(|_| (self.pick(&monos), self.scalar(ring, coeff_deg)))
                    .collect::<Vec<_>>(),
            );
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// A random `m x n` matrix of small rationals.
    pub fn rational_matrix(&mut self, rows: usize, cols: usize) -> Vec<Vec<Rational>> {
        (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| {
                        if self.rng.gen_bool(0.3) {
                            Rational::from_integer(0.into())
                        } else {
                            self.small_rational()
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn deterministic_and_bounded() {
        let env = Enveloping::new(catalog::der2()).unwrap();
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..10 {
            let u = a.uelement(&env, 3, 2);
            assert_eq!(u, b.uelement(&env, 3, 2));
            assert!(env.pbw_degree(&u).unwrap() <= 3);
            for (_, c) in u.terms() {
                assert!(c.as_polynomial().unwrap().total_degree().unwrap_or(0) <= 2);
            }
            let v = a.augmented(&env, 3, 2);
            b.augmented(&env, 3, 2);
            assert!(env.counit(&v).unwrap().is_zero());
        }
    }
}
