use std::collections::BTreeMap;

use crate::coeffring::{Mode, Ring};
use crate::enveloping::{Enveloping, UElement};
use crate::error::{Error, Result};
use crate::linalg;
use crate::monomial::Exponents;
use crate::tensor::Tensor;

use super::cofree::TruncatedCoalgebra;

/// Kernel dimension of the `n`-th iterated reduced coproduct on a truncation,
/// next to the dimension the natural filtration predicts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationLevel {
    pub n: u32,
    pub kernel_dim: usize,
    pub expected_dim: usize,
    pub coincides: bool,
}

/// `gr(A-bar)` of an enveloping algebra in degrees `1..=D`: the class of
/// `e^alpha` is indexed by `alpha`, and `Delta-bar^gr` keeps the part of
/// `Delta-bar(e^alpha)` of bidegree summing to `|alpha|`.
#[derive(Clone, Debug)]
pub struct GradedCoalgebra {
    ring: Ring,
    rank: usize,
    max_degree: u32,
    coeff_degree: u32,
    coproducts: BTreeMap<Exponents, Tensor>,
    levels: Vec<FiltrationLevel>,
    kernel_is_degree_one: bool,
}

impl GradedCoalgebra {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// The `Q`-basis `x^gamma [alpha]` of the truncation of `gr_n`.
    pub fn degree_basis(&self, n: u32) -> Vec<(Exponents, Exponents)> {
        let gammas = Exponents::up_to_degree(self.ring.nvars(), 0, self.coeff_degree);
        let mut out = Vec::new();
        for a in Exponents::of_degree(self.rank, n) {
            for g in &gammas {
                out.push((g.clone(), a.clone()));
            }
        }
        out
    }

    /// Filtration data: `ker Delta-bar^(n)` against `span{x^gamma e^alpha : |alpha| <= n}`.
    pub fn levels(&self) -> &[FiltrationLevel] {
        &self.levels
    }

    /// Whether the primitive and natural filtrations agree on every level.
    pub fn filtrations_coincide(&self) -> bool {
        self.levels.iter().all(|l| l.coincides)
    }

    /// Whether `ker Delta-bar^gr` equals `gr_1` on the truncation.
    pub fn kernel_is_degree_one(&self) -> bool {
        self.kernel_is_degree_one
    }
}

impl TruncatedCoalgebra for GradedCoalgebra {
    fn ring(&self) -> &Ring {
        &self.ring
    }

    fn basis(&self) -> Vec<Exponents> {
        Exponents::up_to_degree(self.rank, 1, self.max_degree)
    }

    fn reduced_coproduct(&self, b: &Exponents) -> Tensor {
        self.coproducts
            .get(b)
            .cloned()
            .unwrap_or_else(|| Tensor::zero(2))
    }
}

fn span_coordinates(
    u: &Enveloping,
    elems: &[UElement],
) -> Result<Vec<BTreeMap<(Exponents, Exponents), crate::coeffring::Rational>>> {
    elems.iter().map(|e| u.rational_coordinates(e)).collect()
}

impl Enveloping {
    /// Builds the associated graded coalgebra of the primitive filtration on
    /// the truncation `|alpha| <= d`, `|gamma| <= e`, checking on the way that
    /// the primitive filtration is the natural one and that `ker Delta-bar^gr = gr_1`.
    pub fn graded_from_filtered(&self, d: u32, e: u32) -> Result<GradedCoalgebra> {
        if self.ring().mode() != Mode::Polynomial {
            return Err(Error::ModeMismatch(
                "graded truncations are computed over polynomial coefficients".into(),
            ));
        }
        let inputs = self.truncated_basis(1, d, e);
        let mut levels = Vec::new();
        for n in 1..=d {
            let cols = inputs
                .iter()
                .map(|x| {
                    self.iterated_reduced_coproduct(x, n as usize)?
                        .rational_coordinates()
                })
                .collect::<Result<Vec<_>>>()?;
            let kernel = linalg::nullspace(&linalg::from_sparse_columns(&cols), inputs.len());
            let kernel_elems: Vec<UElement> = kernel
                .iter()
                .map(|v| {
                    v.iter()
                        .zip(&inputs)
                        .fold(self.zero(), |acc, (q, x)| acc.add(&x.scale_rational(q)))
                })
                .collect();
            let expected = self.truncated_basis(1, n, e);
            let a = linalg::from_sparse_rows(
                &[
                    span_coordinates(self, &kernel_elems)?,
                    span_coordinates(self, &expected)?,
                ]
                .concat(),
            );
            let (ka, kb) = a.split_at(kernel_elems.len());
            levels.push(FiltrationLevel {
                n,
                kernel_dim: kernel_elems.len(),
                expected_dim: expected.len(),
                coincides: linalg::same_span(&ka.to_vec(), &kb.to_vec()),
            });
        }

        let mut coproducts = BTreeMap::new();
        for alpha in Exponents::up_to_degree(self.rank(), 1, d) {
            let full = self.reduced_coproduct(&self.monomial(&alpha))?;
            let top = Tensor::from_terms(
                2,
                full.terms()
                    .filter(|(k, _)| k[0].degree() + k[1].degree() == alpha.degree())
                    .map(|(k, c)| (k.clone(), c.clone())),
            );
            coproducts.insert(alpha, top);
        }

        let mut graded = GradedCoalgebra {
            ring: self.ring().clone(),
            rank: self.rank(),
            max_degree: d,
            coeff_degree: e,
            coproducts,
            levels,
            kernel_is_degree_one: false,
        };
        graded.kernel_is_degree_one = graded.check_kernel()?;
        Ok(graded)
    }
}

impl GradedCoalgebra {
    fn check_kernel(&self) -> Result<bool> {
        let mut inputs = Vec::new();
        for n in 1..=self.max_degree {
            inputs.extend(self.degree_basis(n));
        }
        let cols = inputs
            .iter()
            .map(|(g, a)| {
                self.reduced_coproduct(a)
                    .scale(&self.ring.monomial(g))
                    .rational_coordinates()
            })
            .collect::<Result<Vec<_>>>()?;
        let kernel = linalg::nullspace(&linalg::from_sparse_columns(&cols), inputs.len());
        let index: BTreeMap<&(Exponents, Exponents), usize> =
            inputs.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let degree_one: linalg::Matrix = self
            .degree_basis(1)
            .iter()
            .map(|k| {
                let mut row =
                    vec![crate::coeffring::Rational::from_integer(0.into()); inputs.len()];
                row[index[k]] = crate::coeffring::Rational::from_integer(1.into());
                row
            })
            .collect();
        Ok(linalg::same_span(&kernel, &degree_one))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn weyl_graded() {
        let u = Enveloping::new(catalog::weyl()).unwrap();
        let gr = u.graded_from_filtered(3, 1).unwrap();
        assert!(gr.filtrations_coincide());
        assert!(gr.kernel_is_degree_one());
        let d2 = gr.reduced_coproduct(&Exponents::new(vec![2]));
        assert_eq!(u.render_tensor(&d2), "2 · (d ⊗ d)");
        assert_eq!(gr.degree_basis(2).len(), 2);
    }

    #[test]
    fn aff1_graded() {
        let u = Enveloping::new(catalog::aff1()).unwrap();
        let gr = u.graded_from_filtered(2, 1).unwrap();
        assert!(gr.filtrations_coincide());
        assert!(gr.kernel_is_degree_one());
    }
}
