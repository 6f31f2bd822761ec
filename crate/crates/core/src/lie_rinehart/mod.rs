//! Lie-Rinehart algebras that are free of finite rank over the coefficient
//! ring, presented by an anchor matrix and structure constants.

mod file;

use std::collections::BTreeMap;
use std::fmt;

pub use file::{parse_definition, write_definition};

use crate::coeffring::{write_scaled_term, Mode, Ring, Scalar};
use crate::error::{Error, Result};

/// An element `sum_i r_i e_i` of a free Lie-Rinehart algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LElement {
    coeffs: Vec<Scalar>,
}

impl LElement {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        LElement { coeffs }
    }

    pub fn zero(ring: &Ring, rank: usize) -> Self {
        LElement {
            coeffs: vec![ring.zero(); rank],
        }
    }

    pub fn basis(ring: &Ring, rank: usize, i: usize) -> Self {
        let mut e = Self::zero(ring, rank);
        e.coeffs[i] = ring.one();
        e
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &LElement) -> LElement {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        LElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &LElement) -> LElement {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        LElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> LElement {
        LElement {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// The module action `r . X`.
    pub fn scale(&self, r: &Scalar) -> LElement {
        LElement {
            coeffs: self.coeffs.iter().map(|a| r * a).collect(),
        }
    }

    pub fn display<'a>(&'a self, pres: &'a LrPresentation) -> LElementDisplay<'a> {
        LElementDisplay { x: self, pres }
    }
}

pub struct LElementDisplay<'a> {
    x: &'a LElement,
    pres: &'a LrPresentation,
}

impl fmt::Display for LElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.x.coeffs.iter().zip(&self.pres.basis) {
            if c.is_zero() {
                continue;
            }
            write_scaled_term(f, c, self.pres.ring.vars(), name, first)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A Lie-Rinehart algebra over `R = Q[x1..xn]` (or its fraction field), free
/// on a named basis `e1..em`.
///
/// `anchor[i][j]` is the coefficient of `d/dx_j` in the anchor of `e_i`;
/// `brackets` holds `[e_i, e_j]` for `i < j` only, omitted pairs being zero.
#[derive(Clone, Debug, PartialEq)]
pub struct LrPresentation {
    ring: Ring,
    basis: Vec<String>,
    anchor: Vec<Vec<Scalar>>,
    brackets: BTreeMap<(usize, usize), LElement>,
    validated: bool,
}

impl LrPresentation {
    /// Checks shapes and coerces every scalar into the ring's mode. The result
    /// is not yet validated; call [`LrPresentation::validate`].
    pub fn new(
        ring: Ring,
        basis: Vec<String>,
        anchor: Vec<Vec<Scalar>>,
        brackets: BTreeMap<(usize, usize), LElement>,
    ) -> Result<Self> {
        let m = basis.len();
        let n = ring.nvars();
        for (i, name) in basis.iter().enumerate() {
            if basis[..i].contains(name) || ring.var_index(name).is_some() {
                return Err(Error::Invalid(format!("duplicate name `{name}`")));
            }
        }
        if anchor.len() != m {
            return Err(Error::ArityMismatch(format!(
                "anchor has {} rows for {m} basis elements",
                anchor.len()
            )));
        }
        let anchor = anchor
            .iter()
            .map(|row| {
                if row.len() != n {
                    return Err(Error::ArityMismatch(format!(
                        "anchor row has {} entries for {n} variables",
                        row.len()
                    )));
                }
                row.iter().map(|s| ring.coerce(s)).collect()
            })
            .collect::<Result<Vec<Vec<Scalar>>>>()?;
        let mut clean = BTreeMap::new();
        for (&(i, j), v) in &brackets {
            if i >= j || j >= m {
                return Err(Error::Invalid(format!(
                    "bracket pair ({}, {}) must satisfy i < j <= {m}",
                    i + 1,
                    j + 1
                )));
            }
            if v.rank() != m {
                return Err(Error::ArityMismatch(format!(
                    "bracket value has rank {} instead of {m}",
                    v.rank()
                )));
            }
            let v = LElement::new(
                v.coeffs()
                    .iter()
                    .map(|s| ring.coerce(s))
                    .collect::<Result<_>>()?,
            );
            if !v.is_zero() {
                clean.insert((i, j), v);
            }
        }
        Ok(LrPresentation {
            ring,
            basis,
            anchor,
            brackets: clean,
            validated: false,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn mode(&self) -> Mode {
        self.ring.mode()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn anchor_entry(&self, i: usize, j: usize) -> &Scalar {
        &self.anchor[i][j]
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// Runs [`check_axioms`](Self::check_axioms) and marks the presentation
    /// validated when the report is empty.
    pub fn validate(&mut self) -> ValidationReport {
        let report = self.check_axioms();
        self.validated = report.is_valid();
        report
    }

    pub fn require_validated(&self) -> Result<()> {
        if self.validated {
            Ok(())
        } else {
            Err(Error::NotValidated)
        }
    }

    pub fn zero(&self) -> LElement {
        LElement::zero(&self.ring, self.rank())
    }

    pub fn generator(&self, i: usize) -> LElement {
        LElement::basis(&self.ring, self.rank(), i)
    }

    /// `[e_i, e_j]` for any ordered pair, using antisymmetry.
    pub fn basis_bracket(&self, i: usize, j: usize) -> LElement {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => self.zero(),
            Less => self
                .brackets
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| self.zero()),
            Greater => self
                .brackets
                .get(&(j, i))
                .map(LElement::neg)
                .unwrap_or_else(|| self.zero()),
        }
    }

    /// The structure constant `c[i,j,k]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.basis_bracket(i, j).coeff(k).clone()
    }

    /// `e_i(f) = sum_j a[i][j] df/dx_j`, for `f` already in the ring's mode.
    pub fn generator_apply(&self, i: usize, f: &Scalar) -> Scalar {
        let mut acc = self.ring.zero();
        for (j, a) in self.anchor[i].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let d = f.derive(j).expect("variable index in range");
            if !d.is_zero() {
                acc = &acc + &(a * &d);
            }
        }
        acc
    }

    fn check_element(&self, x: &LElement) -> Result<()> {
        if x.rank() != self.rank() {
            return Err(Error::ArityMismatch(format!(
                "element of rank {} used with a presentation of rank {}",
                x.rank(),
                self.rank()
            )));
        }
        for c in x.coeffs() {
            self.ring.coerce(c)?;
        }
        Ok(())
    }

    /// The anchor `rho(X)(f) = sum_i r_i e_i(f)`.
    pub fn anchor_apply(&self, x: &LElement, f: &Scalar) -> Result<Scalar> {
        self.check_element(x)?;
        let f = self.ring.coerce(f)?;
        let mut acc = self.ring.zero();
        for (i, r) in x.coeffs().iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            acc = &acc + &(r * &self.generator_apply(i, &f));
        }
        Ok(acc)
    }

    /// The Lie bracket, extended from the basis by the Leibniz rule:
    /// `sum_{i,j} r_i s_j [e_i,e_j] + r_i e_i(s_j) e_j - s_j e_j(r_i) e_i`.
    pub fn bracket(&self, x: &LElement, y: &LElement) -> Result<LElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        let m = self.rank();
        let mut out: Vec<Scalar> = vec![self.ring.zero(); m];
        for i in 0..m {
            let r = self.ring.coerce(x.coeff(i))?;
            if r.is_zero() {
                continue;
            }
            for j in 0..m {
                let s = self.ring.coerce(y.coeff(j))?;
                if s.is_zero() {
                    continue;
                }
                let rs = &r * &s;
                let b = self.basis_bracket(i, j);
                for (k, c) in b.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&rs * c);
                    }
                }
                out[j] = &out[j] + &(&r * &self.generator_apply(i, &s));
                out[i] = &out[i] - &(&s * &self.generator_apply(j, &r));
            }
        }
        Ok(LElement::new(out))
    }

    /// Checks that the anchor is a Lie homomorphism on basis pairs (tested on
    /// each coordinate function) and the Jacobi identity on basis triples.
    pub fn check_axioms(&self) -> ValidationReport {
        let m = self.rank();
        let mut report = ValidationReport::default();
        for i in 0..m {
            for j in i + 1..m {
                let c = self.basis_bracket(i, j);
                for l in 0..self.nvars() {
                    let xl = self.ring.var(l);
                    let lhs = &self.generator_apply(i, &self.generator_apply(j, &xl))
                        - &self.generator_apply(j, &self.generator_apply(i, &xl));
                    let rhs = self
                        .anchor_apply(&c, &xl)
                        .expect("bracket values are well-formed");
                    let defect = &lhs - &rhs;
                    if !defect.is_zero() {
                        report.anchor_failures.push(AnchorFailure {
                            pair: (i, j),
                            var: l,
                            defect,
                        });
                    }
                }
            }
        }
        let bracket = |a: &LElement, b: &LElement| self.bracket(a, b).expect("well-formed");
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let (ei, ej, ek) = (self.generator(i), self.generator(j), self.generator(k));
                    let defect = bracket(&bracket(&ei, &ej), &ek)
                        .add(&bracket(&bracket(&ej, &ek), &ei))
                        .add(&bracket(&bracket(&ek, &ei), &ej));
                    if !defect.is_zero() {
                        report.jacobi_failures.push(JacobiFailure {
                            triple: (i, j, k),
                            defect,
                        });
                    }
                }
            }
        }
        report
    }

    /// Promotes the presentation to the fraction field of its coefficient
    /// ring (localization at the generic point). The result is validated.
    pub fn localize(&self) -> Result<LrPresentation> {
        self.require_validated()?;
        let ring = self.ring.with_mode(Mode::FractionField);
        let promote = |s: &Scalar| s.to_mode(Mode::FractionField).expect("promotion succeeds");
        let mut out = LrPresentation {
            anchor: self
                .anchor
                .iter()
                .map(|row| row.iter().map(promote).collect())
                .collect(),
            brackets: self
                .brackets
                .iter()
                .map(|(&k, v)| (k, LElement::new(v.coeffs().iter().map(promote).collect())))
                .collect(),
            basis: self.basis.clone(),
            ring,
            validated: false,
        };
        let report = out.validate();
        if !report.is_valid() {
            return Err(Error::Invalid(format!(
                "localized presentation fails the axioms:\n{}",
                report.render(&out)
            )));
        }
        Ok(out)
    }

    /// `[s^-1 X, t^-1 Y]` by the closed formula for a localized algebra:
    /// `(st)^-1 [X,Y] - s^-1 t^-2 X(t) Y + t^-1 s^-2 Y(s) X`.
    /// Requires fraction-field mode and nonzero `s`, `t`.
    pub fn localized_bracket(
        &self,
        s: &Scalar,
        x: &LElement,
        t: &Scalar,
        y: &LElement,
    ) -> Result<LElement> {
        if self.mode() != Mode::FractionField {
            return Err(Error::ModeMismatch(
                "the localization formula needs a localized presentation".into(),
            ));
        }
        let s = self.ring.coerce(s)?;
        let t = self.ring.coerce(t)?;
        let one = self.ring.one();
        let s_inv = one.div(&s)?;
        let t_inv = one.div(&t)?;
        let xy = self.bracket(x, y)?.scale(&(&s_inv * &t_inv));
        let xt = self.anchor_apply(x, &t)?;
        let ys = self.anchor_apply(y, &s)?;
        let second = y.scale(&(&(&s_inv * &(&t_inv * &t_inv)) * &xt));
        let third = x.scale(&(&(&t_inv * &(&s_inv * &s_inv)) * &ys));
        Ok(xy.sub(&second).add(&third))
    }

    /// Parses a Lie-Rinehart element such as `e1 + x*e2`.
    pub fn parse_element(&self, text: &str) -> Result<LElement> {
        file::parse_l_element(self, text, 1, 0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnchorFailure {
    /// 0-based basis indices `(i, j)` with `i < j`.
    pub pair: (usize, usize),
    /// 0-based variable index.
    pub var: usize,
    /// `e_i(e_j(x_l)) - e_j(e_i(x_l)) - [e_i,e_j](x_l)`.
    pub defect: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiFailure {
    pub triple: (usize, usize, usize),
    pub defect: LElement,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub anchor_failures: Vec<AnchorFailure>,
    pub jacobi_failures: Vec<JacobiFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.anchor_failures.is_empty() && self.jacobi_failures.is_empty()
    }

    pub fn failure_count(&self) -> usize {
        self.anchor_failures.len() + self.jacobi_failures.len()
    }

    /// One line per failure, with 1-based indices.
    pub fn render(&self, pres: &LrPresentation) -> String {
        let names = pres.basis_names();
        let mut out = String::new();
        for a in &self.anchor_failures {
            let (i, j) = a.pair;
            out.push_str(&format!(
                "anchor-homomorphism failure: pair ({},{}) [{},{}], variable {}: defect {}\n",
                i + 1,
                j + 1,
                names[i],
                names[j],
                pres.ring().vars()[a.var],
                pres.ring().display(&a.defect)
            ));
        }
        for f in &self.jacobi_failures {
            let (i, j, k) = f.triple;
            out.push_str(&format!(
                "jacobi failure: triple ({},{},{}) [{},{},{}]: defect {}\n",
                i + 1,
                j + 1,
                k + 1,
                names[i],
                names[j],
                names[k],
                f.defect.display(pres)
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn weyl_bracket() {
        let p = catalog::weyl();
        let d = p.generator(0);
        let x = p.ring().var(0);
        let xd = d.scale(&x);
        assert_eq!(p.bracket(&xd, &d).unwrap(), d.neg());
    }

    #[test]
    fn aff1_bracket() {
        let p = catalog::aff1();
        let u = p.generator(0);
        let v = p.generator(1);
        let x = p.ring().var(0);
        let got = p.bracket(&u, &v.scale(&x)).unwrap();
        assert_eq!(got, u.scale(&x).add(&v));
    }

    #[test]
    fn anchor_examples() {
        let p = catalog::weyl();
        let r = p.ring();
        let xd = p.generator(0).scale(&r.var(0));
        assert_eq!(
            p.anchor_apply(&xd, &r.parse("x^2").unwrap()).unwrap(),
            r.parse("2*x^2").unwrap()
        );
        assert!(p.anchor_apply(&xd, &r.one()).unwrap().is_zero());
        let a = catalog::aff1();
        let v = a.generator(1);
        assert_eq!(
            a.anchor_apply(&v, &a.ring().parse("x^3").unwrap()).unwrap(),
            a.ring().parse("3*x^3").unwrap()
        );
    }

    #[test]
    fn anchor_mode_rules() {
        let weyl = catalog::weyl();
        let frac = weyl.localize().unwrap();
        let poly_f = weyl.ring().parse("x^2").unwrap();
        let d = frac.generator(0);
        assert_eq!(
            frac.anchor_apply(&d, &poly_f).unwrap(),
            frac.ring().parse("2*x").unwrap()
        );
        let frac_f = frac.ring().parse("1/x").unwrap();
        assert!(matches!(
            weyl.anchor_apply(&weyl.generator(0), &frac_f),
            Err(Error::ModeMismatch(_))
        ));
    }

    #[test]
    fn catalog_algebras_are_valid() {
        for (name, p) in catalog::test_algebras() {
            assert!(p.check_axioms().is_valid(), "{name}");
        }
    }

    #[test]
    fn bad_presentation_reports_single_anchor_defect() {
        let p = catalog::bad();
        let report = p.check_axioms();
        assert_eq!(report.failure_count(), 1);
        let f = &report.anchor_failures[0];
        assert_eq!((f.pair, f.var), ((0, 1), 0));
        assert!(f.defect.is_one());
        assert_eq!(
            report.render(&p),
            "anchor-homomorphism failure: pair (1,2) [e1,e2], variable x: defect 1\n"
        );
    }

    #[test]
    fn jacobi_failure_detected() {
        // Lie algebra over Q with [a,b] = c, [b,c] = a, [a,c] = a violates Jacobi.
        let text = "basis: a, b, c\nbracket [a,b]: c\nbracket [b,c]: a\nbracket [a,c]: a\n";
        let p = parse_definition(text).unwrap();
        let report = p.check_axioms();
        assert!(report.anchor_failures.is_empty());
        assert_eq!(report.jacobi_failures.len(), 1);
    }

    #[test]
    fn localization_spot_value() {
        // [d, x^{-1} d] = -x^{-2} d over Q(x)
        let p = catalog::weyl().localize().unwrap();
        let r = p.ring();
        let d = p.generator(0);
        let lhs = p.bracket(&d, &d.scale(&r.parse("1/x").unwrap())).unwrap();
        assert_eq!(lhs, d.scale(&r.parse("-1/x^2").unwrap()));
        let formula = p.localized_bracket(&r.one(), &d, &r.var(0), &d).unwrap();
        assert_eq!(formula, lhs);
    }

    #[test]
    fn localization_formula_matches_leibniz() {
        let p = catalog::der2().localize().unwrap();
        let r = p.ring();
        let s = r.parse("x^2 + y").unwrap();
        let t = r.parse("x*y - 3").unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let (x, y) = (p.generator(i), p.generator(j));
                let lhs = p
                    .bracket(
                        &x.scale(&r.one().div(&s).unwrap()),
                        &y.scale(&r.one().div(&t).unwrap()),
                    )
                    .unwrap();
                assert_eq!(lhs, p.localized_bracket(&s, &x, &t, &y).unwrap());
            }
        }
    }

    #[test]
    fn localization_formula_needs_fraction_mode() {
        let p = catalog::weyl();
        let r = p.ring();
        let d = p.generator(0);
        assert!(matches!(
            p.localized_bracket(&r.one(), &d, &r.one(), &d),
            Err(Error::ModeMismatch(_))
        ));
    }

    #[test]
    fn unvalidated_presentation_cannot_localize() {
        let p = parse_definition(catalog::WEYL).unwrap();
        assert_eq!(p.localize(), Err(Error::NotValidated));
    }
}
