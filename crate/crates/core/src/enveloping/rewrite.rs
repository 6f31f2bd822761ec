//! Normalization of words in ring elements and generators by one-step
//! rewriting. Slower than [`Enveloping::multiply`](super::Enveloping::multiply)
//! but independent of it, and parameterized by the redex selection strategy.

use crate::coeffring::Scalar;
use crate::lie_rinehart::LrPresentation;
use crate::monomial::Exponents;

use super::UElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    Gen(usize),
    Coeff(Scalar),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// The rewriting system
///
/// ```text
/// r s        -> (rs)
/// e_i r      -> r e_i + e_i(r)
/// e_j e_i    -> e_i e_j + sum_k c[j,i,k] e_k      (j > i)
/// ```
///
/// whose irreducible words are `r e^alpha`.
pub struct Rewriter<'a> {
    pres: &'a LrPresentation,
    strategy: Strategy,
}

impl<'a> Rewriter<'a> {
    pub fn new(pres: &'a LrPresentation, strategy: Strategy) -> Self {
        Rewriter { pres, strategy }
    }

    fn is_redex(&self, a: &Letter, b: &Letter) -> bool {
        match (a, b) {
            (Letter::Coeff(_), Letter::Coeff(_)) | (Letter::Gen(_), Letter::Coeff(_)) => true,
            (Letter::Gen(j), Letter::Gen(i)) => j > i,
            (Letter::Coeff(_), Letter::Gen(_)) => false,
        }
    }

    fn find_redex(&self, word: &[Letter]) -> Option<usize> {
        let mut positions =
            (0..word.len().saturating_sub(1)).filter(|&p| self.is_redex(&word[p], &word[p + 1]));
        match self.strategy {
            Strategy::Leftmost => positions.next(),
            Strategy::Rightmost => positions.next_back(),
        }
    }

    /// One rewriting step at position `p`; zero words are dropped.
    fn step(&self, word: &[Letter], p: usize) -> Vec<Vec<Letter>> {
        let splice = |mid: Vec<Letter>| {
            let mut w = word[..p].to_vec();
            w.extend(mid);
            w.extend_from_slice(&word[p + 2..]);
            w
        };
        match (&word[p], &word[p + 1]) {
            (Letter::Coeff(a), Letter::Coeff(b)) => {
                let c = a * b;
                if c.is_zero() {
                    vec![]
                } else {
                    vec![splice(vec![Letter::Coeff(c)])]
                }
            }
            (Letter::Gen(i), Letter::Coeff(r)) => {
                let mut out = vec![splice(vec![Letter::Coeff(r.clone()), Letter::Gen(*i)])];
                let d = self.pres.generator_apply(*i, r);
                if !d.is_zero() {
                    out.push(splice(vec![Letter::Coeff(d)]));
                }
                out
            }
            (Letter::Gen(j), Letter::Gen(i)) => {
                let mut out = vec![splice(vec![Letter::Gen(*i), Letter::Gen(*j)])];
                for (k, c) in self.pres.basis_bracket(*j, *i).coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        out.push(splice(vec![Letter::Coeff(c.clone()), Letter::Gen(k)]));
                    }
                }
                out
            }
            (Letter::Coeff(_), Letter::Gen(_)) => unreachable!("not a redex"),
        }
    }

    /// Rewrites a sum of words to normal form.
    pub fn normalize(&self, words: Vec<Vec<Letter>>) -> UElement {
        let m = self.pres.rank();
        let ring = self.pres.ring();
        let mut out = UElement::zero(m);
        let mut stack = words;
        while let Some(word) = stack.pop() {
            match self.find_redex(&word) {
                Some(p) => stack.extend(self.step(&word, p)),
                None => {
                    let mut alpha = vec![0u32; m];
                    let mut coeff = ring.one();
                    for l in &word {
                        match l {
                            Letter::Gen(i) => alpha[*i] += 1,
                            Letter::Coeff(c) => coeff = c.clone(),
                        }
                    }
                    out.add_term(Exponents::new(alpha), coeff);
                }
            }
        }
        out
    }

    /// The word `r e1^a1 ... em^am` of one term.
    pub fn word_of(alpha: &Exponents, c: &Scalar) -> Vec<Letter> {
        let mut w = vec![Letter::Coeff(c.clone())];
        for (i, &a) in alpha.as_slice().iter().enumerate() {
            w.extend(std::iter::repeat_n(Letter::Gen(i), a as usize));
        }
        w
    }

    /// `u * v` by concatenating words and rewriting.
    pub fn multiply(&self, u: &UElement, v: &UElement) -> UElement {
        let mut words = Vec::new();
        for (a, c) in u.terms() {
            for (b, d) in v.terms() {
                let mut w = Self::word_of(a, c);
                w.extend(Self::word_of(b, d));
                words.push(w);
            }
        }
        self.normalize(words)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::enveloping::Enveloping;

    #[test]
    fn single_steps() {
        let p = catalog::weyl();
        let rw = Rewriter::new(&p, Strategy::Leftmost);
        let x = p.ring().var(0);
        let w = vec![Letter::Gen(0), Letter::Coeff(x.clone())];
        let out = rw.step(&w, 0);
        assert_eq!(out.len(), 2);
        assert_eq!(out[0], vec![Letter::Coeff(x), Letter::Gen(0)]);
        assert_eq!(out[1], vec![Letter::Coeff(p.ring().one())]);
    }

    #[test]
    fn strategies_agree_with_multiplication() {
        for (_, p) in catalog::test_algebras() {
            let env = Enveloping::new(p.clone()).unwrap();
            let left = Rewriter::new(&p, Strategy::Leftmost);
            let right = Rewriter::new(&p, Strategy::Rightmost);
            let m = p.rank();
            let monos = Exponents::up_to_degree(m, 0, 2);
            for a in &monos {
                for b in &monos {
                    let (u, v) = (env.monomial(a), env.monomial(b));
                    let expected = env.multiply(&u, &v).unwrap();
                    assert_eq!(left.multiply(&u, &v), expected);
                    assert_eq!(right.multiply(&u, &v), expected);
                }
            }
        }
    }
}
