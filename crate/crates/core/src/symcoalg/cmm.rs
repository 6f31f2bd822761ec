//! Truncated verification that `U` and primitives are inverse equivalences
//! on the enveloping algebra at hand.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::coeffring::{Mode, Rational, Scalar};
use crate::enveloping::{Enveloping, UElement};
use crate::error::{Error, Result};
use crate::lie_rinehart::{LElement, LrPresentation};
use crate::linalg::{self, Matrix};
use crate::monomial::Exponents;
use crate::report::{Check, Report};

use super::cofree::{cofree_extend, morphism_failures, CofreeExtension, TruncatedCoalgebra};
use super::graded::GradedCoalgebra;
use super::selement::{generator_names, SElement};

/// Sparse rational coordinates keyed `(gamma, alpha)`.
type Coords = BTreeMap<(Exponents, Exponents), Rational>;

/// Basis keys of a degree together with their image coordinates.
type KeyedImages = (Vec<(Exponents, Exponents)>, Vec<Coords>);

/// The Lie-Rinehart algebra of primitives of `A = U(R, L)`, presented on a
/// basis `p_1..p_m` of constant-coefficient primitives, with the maps needed
/// for the unit/counit identities.
struct PrimitiveModel<'a> {
    a: &'a Enveloping,
    /// Basis primitives, as elements of `A`.
    p: Vec<UElement>,
    /// `t_inv[j][k]`: coordinate change from `e`-coefficients to `p`-coefficients.
    t_inv: Matrix,
    u_prime: Enveloping,
}

impl<'a> PrimitiveModel<'a> {
    fn build(a: &'a Enveloping) -> std::result::Result<Self, String> {
        let m = a.rank();
        let p = a.primitives_basis(1, 0).map_err(|e| e.to_string())?;
        if p.len() != m {
            return Err(format!(
                "found {} constant primitives for rank {m}",
                p.len()
            ));
        }
        let t: Matrix = p
            .iter()
            .map(|q| {
                (0..m)
                    .map(|j| {
                        q.coefficient(&Exponents::unit(m, j))
                            .and_then(|c| c.as_polynomial().and_then(|p| p.constant_value()))
                            .unwrap_or_else(Rational::zero)
                    })
                    .collect()
            })
            .collect();
        let t_inv = linalg::inverse(&t).ok_or("constant primitives are not a basis")?;
        let mut model = PrimitiveModel {
            a,
            p,
            t_inv,
            u_prime: a.clone(),
        };
        let pres = model.presentation()?;
        model.u_prime = Enveloping::new(pres).map_err(|e| e.to_string())?;
        Ok(model)
    }

    /// `q = sum_k r_k p_k` for a primitive `q` of filtration degree at most one.
    fn coordinates(&self, q: &UElement) -> std::result::Result<LElement, String> {
        let a = self.a;
        let m = a.rank();
        if q.max_degree().unwrap_or(0) > 1 || q.constant_part().is_some() {
            return Err(format!("{} is not of degree one", a.render(q)));
        }
        let zero = a.ring().zero();
        let s: Vec<&Scalar> = (0..m)
            .map(|j| q.coefficient(&Exponents::unit(m, j)).unwrap_or(&zero))
            .collect();
        let r = (0..m)
            .map(|k| {
                (0..m).fold(a.ring().zero(), |acc, j| {
                    &acc + &s[j].scale(&self.t_inv[j][k])
                })
            })
            .collect();
        Ok(LElement::new(r))
    }

    fn presentation(&self) -> std::result::Result<LrPresentation, String> {
        let a = self.a;
        let m = a.rank();
        let n = a.ring().nvars();
        let mut brackets = BTreeMap::new();
        for i in 0..m {
            for j in i + 1..m {
                let c = a
                    .commutator(&self.p[i], &self.p[j])
                    .map_err(|e| e.to_string())?;
                brackets.insert((i, j), self.coordinates(&c)?);
            }
        }
        let mut anchor = Vec::with_capacity(m);
        for pi in &self.p {
            let mut row = Vec::with_capacity(n);
            for l in 0..n {
                let x = a.embed_r(&a.ring().var(l)).map_err(|e| e.to_string())?;
                row.push(a.counit(&a.mul(pi, &x)).map_err(|e| e.to_string())?);
            }
            anchor.push(row);
        }
        let names = (1..=m).map(|i| format!("p{i}")).collect();
        let mut pres = LrPresentation::new(a.ring().clone(), names, anchor, brackets)
            .map_err(|e| e.to_string())?;
        let report = pres.validate();
        if !report.is_valid() {
            return Err(format!(
                "primitives fail the axioms: {}",
                report.render(&pres).trim_end()
            ));
        }
        Ok(pres)
    }

    /// The counit `U(R, P(A)) -> A`: `r p^alpha -> r p_1^a1 ... p_m^am`.
    fn beta(&self, w: &UElement) -> UElement {
        let a = self.a;
        let mut out = a.zero();
        for (alpha, c) in w.terms() {
            let mut prod = a.one();
            for (i, &k) in alpha.as_slice().iter().enumerate() {
                for _ in 0..k {
                    prod = a.mul(&prod, &self.p[i]);
                }
            }
            out = out.add(&prod.scale(c));
        }
        out
    }

    /// `U(alpha_L): U(R, L) -> U(R, P(U(R, L)))`, sending `e_i` to its
    /// coordinates in the primitive basis.
    fn u_alpha(&self, u: &UElement) -> std::result::Result<UElement, String> {
        let a = self.a;
        let v = &self.u_prime;
        let images = (0..a.rank())
            .map(|i| {
                let x = self.coordinates(&a.generator(i))?;
                v.embed_l(&x).map_err(|e| e.to_string())
            })
            .collect::<std::result::Result<Vec<_>, String>>()?;
        let mut out = v.zero();
        for (alpha, c) in u.terms() {
            let mut prod = v.one();
            for (i, &k) in alpha.as_slice().iter().enumerate() {
                for _ in 0..k {
                    prod = v.mul(&prod, &images[i]);
                }
            }
            out = out.add(&prod.scale(c));
        }
        Ok(out)
    }

    /// `alpha_{P(A)}`: a primitive of `A` as a generator-degree element of `U'`.
    fn alpha_primitive(&self, q: &UElement) -> std::result::Result<UElement, String> {
        self.u_prime
            .embed_l(&self.coordinates(q)?)
            .map_err(|e| e.to_string())
    }
}

impl Enveloping {
    /// Runs the five truncated checks (bounds `|alpha| <= d`, `|gamma| <= e`):
    /// unit iso, triangular identities, `gamma` inverts the symbol map,
    /// degree-wise injectivity of `gamma`, and surjectivity of `gamma`.
    pub fn cmm_verify(&self, d: u32, e: u32) -> Result<Report> {
        if self.ring().mode() != Mode::Polynomial {
            return Err(Error::ModeMismatch(
                "the verification runs over polynomial coefficients".into(),
            ));
        }
        let mut report = Report::new();
        report.push(self.check_unit(d, e)?);
        report.push(self.check_triangular(d, e)?);
        let gr = self.graded_from_filtered(d, e)?;
        let (gamma_check, gamma) = self.check_gamma(&gr, d)?;
        report.push(gamma_check);
        match gamma {
            Some(g) => {
                report.push(self.check_injective(&gr, &g, d, e)?);
                report.push(self.check_surjective(&g, d, e)?);
            }
            None => {
                let why = "gamma could not be constructed";
                report.push(Check::fail("injective", injective_text(d), why));
                report.push(Check::fail("surjective", surjective_text(d), why));
            }
        }
        Ok(report)
    }

    fn check_unit(&self, d: u32, e: u32) -> Result<Check> {
        let desc =
            format!("primitives with |alpha| <= {d}, |gamma| <= {e} span the truncation of L");
        let prims = self.primitives_basis(d, e)?;
        let expected = self.truncated_basis(1, 1, e);
        let coords = |xs: &[UElement]| {
            xs.iter()
                .map(|u| self.rational_coordinates(u))
                .collect::<Result<Vec<_>>>()
        };
        let all = linalg::from_sparse_rows(&[coords(&prims)?, coords(&expected)?].concat());
        let (pa, ea) = all.split_at(prims.len());
        let (pa, ea) = (pa.to_vec(), ea.to_vec());
        if linalg::same_span(&pa, &ea) {
            return Ok(Check::pass(
                "unit-iso",
                format!("{desc} (dim {})", prims.len()),
            ));
        }
        let outside = |xs: &[UElement], rows: &Matrix, span: &Matrix| {
            xs.iter().zip(rows).find_map(|(x, row)| {
                let mut m = span.clone();
                m.push(row.clone());
                (linalg::rank(&m) > linalg::rank(span)).then(|| self.render(x))
            })
        };
        let why = outside(&prims, &pa, &ea)
            .map(|x| format!("primitive {x} lies outside L"))
            .or_else(|| outside(&expected, &ea, &pa).map(|x| format!("{x} is not primitive")))
            .unwrap_or_else(|| "spans differ".into());
        Ok(Check::fail("unit-iso", desc, why))
    }

    fn check_triangular(&self, d: u32, e: u32) -> Result<Check> {
        let desc =
            format!("triangular identities on primitives and on |alpha| <= {d}, |gamma| <= {e}");
        let model = match PrimitiveModel::build(self) {
            Ok(m) => m,
            Err(why) => return Ok(Check::fail("triangular", desc, why)),
        };
        Ok(Check::from_outcome(
            "triangular",
            desc,
            self.triangular_failure(&model, d, e),
        ))
    }

    fn triangular_failure(&self, model: &PrimitiveModel, d: u32, e: u32) -> Option<String> {
        let v = &model.u_prime;
        let m = self.rank();
        // P(beta) . alpha_P(A) = id on primitives
        let prims = match self.primitives_basis(d, e) {
            Ok(p) => p,
            Err(err) => return Some(err.to_string()),
        };
        for q in prims {
            match model.alpha_primitive(&q) {
                Ok(w) if model.beta(&w) == q => {}
                Ok(w) => {
                    return Some(format!(
                        "P(beta)(alpha({})) = {}",
                        self.render(&q),
                        self.render(&model.beta(&w))
                    ))
                }
                Err(why) => return Some(why),
            }
        }
        // beta . U(alpha_L) = id on the PBW truncation
        for u in self.truncated_basis(0, d, e) {
            match model.u_alpha(&u) {
                Ok(w) if model.beta(&w) == u => {}
                Ok(w) => {
                    return Some(format!(
                        "beta(U(alpha)({})) = {}",
                        self.render(&u),
                        self.render(&model.beta(&w))
                    ))
                }
                Err(why) => return Some(why),
            }
        }
        // beta and U(alpha_L) respect products of generators and with coordinates
        for i in 0..m {
            for j in 0..m {
                let (gi, gj) = (v.generator(i), v.generator(j));
                let lhs = model.beta(&v.mul(&gi, &gj));
                let rhs = self.mul(&model.beta(&gi), &model.beta(&gj));
                if lhs != rhs {
                    return Some(format!(
                        "beta(p{} p{}) = {}",
                        i + 1,
                        j + 1,
                        self.render(&lhs)
                    ));
                }
                let (ei, ej) = (self.generator(i), self.generator(j));
                let lhs = model.u_alpha(&self.mul(&ei, &ej));
                let rhs = model
                    .u_alpha(&ei)
                    .and_then(|a| model.u_alpha(&ej).map(|b| v.mul(&a, &b)));
                if lhs != rhs {
                    let names = self.presentation().basis_names();
                    return Some(format!(
                        "U(alpha) does not respect {}*{}",
                        names[i], names[j]
                    ));
                }
            }
            for l in 0..self.ring().nvars() {
                let x = self.ring().var(l);
                let xv = v.embed_r(&x).expect("same ring");
                let xa = self.embed_r(&x).expect("same ring");
                let gi = v.generator(i);
                if model.beta(&v.mul(&gi, &xv)) != self.mul(&model.beta(&gi), &xa) {
                    return Some(format!(
                        "beta(p{} {}) differs",
                        i + 1,
                        self.ring().vars()[l]
                    ));
                }
            }
        }
        None
    }

    fn check_gamma(
        &self,
        gr: &GradedCoalgebra,
        d: u32,
    ) -> Result<(Check, Option<CofreeExtension>)> {
        let desc = format!("gamma sends the class of e^alpha to v^alpha for 1 <= |alpha| <= {d}");
        if !gr.filtrations_coincide() {
            let lvl = gr
                .levels()
                .iter()
                .find(|l| !l.coincides)
                .expect("failing level");
            let why = format!(
                "primitive filtration level {} has dimension {} instead of {}",
                lvl.n, lvl.kernel_dim, lvl.expected_dim
            );
            return Ok((Check::fail("gamma", desc, why), None));
        }
        let m = self.rank();
        let g1: BTreeMap<Exponents, SElement> = (0..m)
            .map(|i| {
                (
                    Exponents::unit(m, i),
                    SElement::generator(self.ring(), m, i),
                )
            })
            .collect();
        let gamma = match cofree_extend(gr, &g1, m, d as usize) {
            Ok(g) => g,
            Err(err) => return Ok((Check::fail("gamma", desc, err.to_string()), None)),
        };
        let names = generator_names(m);
        for alpha in gr.basis() {
            let got = gamma.total(&alpha);
            let want = SElement::term(m, alpha.clone(), self.ring().one());
            if got != want {
                let why = format!(
                    "gamma(class of {}) = {}",
                    self.render(&self.monomial(&alpha)),
                    got.display(self.ring().vars(), &names)
                );
                return Ok((Check::fail("gamma", desc, why), Some(gamma)));
            }
        }
        if let Some(b) = morphism_failures(gr, &gamma).first() {
            let why = format!(
                "not a coalgebra map at the class of {}",
                self.render(&self.monomial(b))
            );
            return Ok((Check::fail("gamma", desc, why), Some(gamma)));
        }
        Ok((Check::pass("gamma", desc), Some(gamma)))
    }

    /// Image coordinates of the `Q`-basis `x^gamma [alpha]`, `|alpha| = n`.
    fn gamma_matrix(&self, g: &CofreeExtension, n: u32, e: u32) -> Result<KeyedImages> {
        let gammas = Exponents::up_to_degree(self.ring().nvars(), 0, e);
        let mut keys = Vec::new();
        let mut cols = Vec::new();
        for alpha in Exponents::of_degree(self.rank(), n) {
            for gm in &gammas {
                let img = g.total(&alpha).scale(&self.ring().monomial(gm));
                cols.push(img.rational_coordinates()?);
                keys.push((gm.clone(), alpha.clone()));
            }
        }
        Ok((keys, cols))
    }

    fn check_injective(
        &self,
        gr: &GradedCoalgebra,
        g: &CofreeExtension,
        d: u32,
        e: u32,
    ) -> Result<Check> {
        let desc = injective_text(d);
        if !gr.kernel_is_degree_one() {
            return Ok(Check::fail(
                "injective",
                desc,
                "the kernel of the graded coproduct is not gr_1",
            ));
        }
        for n in 1..=d {
            let (keys, cols) = self.gamma_matrix(g, n, e)?;
            let m = linalg::from_sparse_columns(&cols);
            let kernel = linalg::nullspace(&m, keys.len());
            if let Some(v) = kernel.first() {
                let (gm, alpha) = &keys[v.iter().position(|q| !q.is_zero()).expect("nonzero")];
                let why = format!(
                    "degree {n}: kernel vector involving {}",
                    self.render(&UElement::term(
                        self.rank(),
                        alpha.clone(),
                        self.ring().monomial(gm)
                    ))
                );
                return Ok(Check::fail("injective", desc, why));
            }
        }
        Ok(Check::pass("injective", desc))
    }

    fn check_surjective(&self, g: &CofreeExtension, d: u32, e: u32) -> Result<Check> {
        let desc = surjective_text(d);
        let names = generator_names(self.rank());
        for n in 1..=d {
            let (keys, cols) = self.gamma_matrix(g, n, e)?;
            let target: Vec<Coords> = keys
                .iter()
                .map(|k| [(k.clone(), Rational::from_integer(1.into()))].into())
                .collect();
            let all = linalg::from_sparse_rows(&[cols.clone(), target].concat());
            let (img, tgt) = all.split_at(cols.len());
            let (img, tgt) = (img.to_vec(), tgt.to_vec());
            if !linalg::same_span(&img, &tgt) {
                let missing = keys.iter().zip(&tgt).find_map(|(k, row)| {
                    let mut m = img.clone();
                    m.push(row.clone());
                    (linalg::rank(&m) > linalg::rank(&img)).then(|| {
                        SElement::term(self.rank(), k.1.clone(), self.ring().monomial(&k.0))
                            .display(self.ring().vars(), &names)
                            .to_string()
                    })
                });
                let why = format!(
                    "degree {n}: {} not in the image",
                    missing.unwrap_or_else(|| "target".into())
                );
                return Ok(Check::fail("surjective", desc, why));
            }
        }
        Ok(Check::pass("surjective", desc))
    }
}

fn injective_text(d: u32) -> String {
    format!("gamma is injective in degree 1 and in every degree up to {d}")
}

fn surjective_text(d: u32) -> String {
    format!("gamma is onto S^n for every degree n up to {d}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn weyl_passes() {
        let u = Enveloping::new(catalog::weyl()).unwrap();
        let r = u.cmm_verify(3, 2).unwrap();
        assert!(r.passed(), "{}", r.render());
        assert_eq!(r.checks.len(), 5);
    }

    #[test]
    fn aff1_passes() {
        let u = Enveloping::new(catalog::aff1()).unwrap();
        let r = u.cmm_verify(2, 2).unwrap();
        assert!(r.passed(), "{}", r.render());
    }

    #[test]
    fn primitive_model_of_sl2_is_sl2() {
        let u = Enveloping::new(catalog::sl2()).unwrap();
        let model = PrimitiveModel::build(&u).unwrap();
        let p = model.u_prime.presentation();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p.basis_bracket(i, j), u.presentation().basis_bracket(i, j));
            }
        }
    }

    #[test]
    fn fraction_mode_is_rejected() {
        let u = Enveloping::new(catalog::weyl().localize().unwrap()).unwrap();
        assert!(matches!(u.cmm_verify(2, 1), Err(Error::ModeMismatch(_))));
    }
}
