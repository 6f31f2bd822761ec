//! Property suites over an enveloping algebra, each producing a [`Report`].

use crate::enveloping::{Enveloping, Rewriter, Strategy, UElement};
use crate::error::Result;
use crate::monomial::Exponents;
use crate::report::{Check, Report};
use crate::sample::Sampler;
use crate::symcoalg::SElement;
use crate::tensor::Tensor;

/// Size and seed of the random part of a suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleSpec {
    pub samples: usize,
    pub pbw_deg: u32,
    pub coeff_deg: u32,
    pub seed: u64,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            samples: 20,
            pbw_deg: 2,
            coeff_deg: 2,
            seed: 1,
        }
    }
}

fn first_failure<T>(
    items: impl IntoIterator<Item = T>,
    mut fails: impl FnMut(&T) -> Result<Option<String>>,
) -> Result<Option<String>> {
    for it in items {
        if let Some(why) = fails(&it)? {
            return Ok(Some(why));
        }
    }
    Ok(None)
}

/// Coassociativity as equal 3-fold tensors: expand slot 1 versus slot 2.
pub fn coassociativity_defect(env: &Enveloping, u: &UElement) -> Result<Tensor> {
    let t = env.coproduct(u)?;
    let left = t.map_slot(0, 2, |a| {
        env.coproduct(&env.monomial(a)).expect("same algebra")
    });
    let right = t.map_slot(1, 2, |a| {
        env.coproduct(&env.monomial(a)).expect("same algebra")
    });
    Ok(left.sub(&right))
}

/// Symbol multiplicativity on all monomial pairs `|alpha|, |beta| <= d`,
/// on random pairs, and agreement of two rewriting strategies with the
/// multiplication on monomial pairs.
pub fn pbw_suite(env: &Enveloping, d: u32, spec: SampleSpec) -> Result<Report> {
    let mut report = Report::new();
    let m = env.rank();
    let monos = Exponents::up_to_degree(m, 0, d);
    let pairs: Vec<(&Exponents, &Exponents)> = monos
        .iter()
        .flat_map(|a| monos.iter().map(move |b| (a, b)))
        .collect();
    let one = env.ring().one();

    let fail = first_failure(pairs.iter(), |(a, b)| {
        let prod = env.multiply(&env.monomial(a), &env.monomial(b))?;
        let want = SElement::term(m, a.add(b), one.clone());
        Ok((env.symbol(&prod)? != want).then(|| {
            format!(
                "symbol of {} * {}",
                env.render(&env.monomial(a)),
                env.render(&env.monomial(b))
            )
        }))
    })?;
    report.push(Check::from_outcome(
        "monomial-symbols",
        format!("symbol(e^a * e^b) = v^(a+b) for |a|, |b| <= {d}"),
        fail,
    ));

    let mut sampler = Sampler::new(spec.seed);
    let samples: Vec<(UElement, UElement)> = (0..spec.samples)
        .map(|_| {
            (
                sampler.uelement(env, spec.pbw_deg, spec.coeff_deg),
                sampler.uelement(env, spec.pbw_deg, spec.coeff_deg),
            )
        })
        .collect();
    let fail = first_failure(samples.iter(), |(u, v)| {
        let lhs = env.symbol(&env.multiply(u, v)?)?;
        let rhs = env.symbol(u)?.s_multiply(&env.symbol(v)?)?;
        Ok((lhs != rhs).then(|| format!("u = {}, v = {}", env.render(u), env.render(v))))
    })?;
    report.push(Check::from_outcome(
        "random-symbols",
        format!(
            "symbol(u v) = symbol(u) symbol(v) on {} random pairs",
            spec.samples
        ),
        fail,
    ));

    let fail = first_failure(
        samples.iter().zip(samples.iter().rev()),
        |((u, v), (w, _))| {
            let lhs = env.multiply(&env.multiply(u, v)?, w)?;
            let rhs = env.multiply(u, &env.multiply(v, w)?)?;
            Ok((lhs != rhs).then(|| {
                format!(
                    "u = {}, v = {}, w = {}",
                    env.render(u),
                    env.render(v),
                    env.render(w)
                )
            }))
        },
    )?;
    report.push(Check::from_outcome(
        "associativity",
        format!("(u v) w = u (v w) on {} random triples", spec.samples),
        fail,
    ));

    let pres = env.presentation();
    let left = Rewriter::new(pres, Strategy::Leftmost);
    let right = Rewriter::new(pres, Strategy::Rightmost);
    let fail = first_failure(pairs.iter(), |(a, b)| {
        let (u, v) = (env.monomial(a), env.monomial(b));
        let prod = env.multiply(&u, &v)?;
        Ok(
            (left.multiply(&u, &v) != prod || right.multiply(&u, &v) != prod)
                .then(|| format!("{} * {}", env.render(&u), env.render(&v))),
        )
    })?;
    report.push(Check::from_outcome(
        "confluence",
        format!("leftmost and rightmost rewriting agree with the product for |a|, |b| <= {d}"),
        fail,
    ));
    Ok(report)
}

/// The bialgebra axioms on random elements: coassociativity,
/// cocommutativity, counit laws, multiplicativity of the coproduct, the
/// counit-product law and bar-tensor membership of coproducts.
pub fn bialgebra_suite(env: &Enveloping, spec: SampleSpec, probe_deg: u32) -> Result<Report> {
    let mut sampler = Sampler::new(spec.seed);
    let us: Vec<UElement> = (0..spec.samples)
        .map(|_| sampler.uelement(env, spec.pbw_deg, spec.coeff_deg))
        .collect();
    let vs: Vec<UElement> = (0..spec.samples)
        .map(|_| sampler.uelement(env, spec.pbw_deg, spec.coeff_deg))
        .collect();
    let probes = env.probe_monomials(probe_deg);
    let n = spec.samples;
    let show = |u: &UElement| env.render(u);
    let mut report = Report::new();

    let fail = first_failure(&us, |u| {
        Ok((!coassociativity_defect(env, u)?.is_zero()).then(|| show(u)))
    })?;
    report.push(Check::from_outcome(
        "coassociative",
        format!("(D x id) D = (id x D) D on {n} elements"),
        fail,
    ));

    let fail = first_failure(&us, |u| {
        let t = env.coproduct(u)?;
        Ok((t.swap() != t).then(|| show(u)))
    })?;
    report.push(Check::from_outcome(
        "cocommutative",
        format!("D is symmetric on {n} elements"),
        fail,
    ));

    let fail = first_failure(&us, |u| {
        let t = env.coproduct(u)?;
        Ok((env.counit_slot(&t, 0)? != **u).then(|| show(u)))
    })?;
    report.push(Check::from_outcome(
        "counit-left",
        format!("(eps x id) D = id on {n} elements"),
        fail,
    ));

    let fail = first_failure(&us, |u| {
        let t = env.coproduct(u)?;
        Ok((env.counit_slot(&t, 1)? != **u).then(|| show(u)))
    })?;
    report.push(Check::from_outcome(
        "counit-right",
        format!("(id x eps) D = id on {n} elements"),
        fail,
    ));

    let fail = first_failure(us.iter().zip(&vs), |(u, v)| {
        let lhs = env.coproduct(&env.multiply(u, v)?)?;
        let rhs = env.tensor_mul(&env.coproduct(u)?, &env.coproduct(v)?)?;
        Ok((lhs != rhs).then(|| format!("u = {}, v = {}", show(u), show(v))))
    })?;
    report.push(Check::from_outcome(
        "multiplicative",
        format!("D(u v) = D(u) D(v) on {n} pairs"),
        fail,
    ));

    let fail = first_failure(us.iter().zip(&vs), |(u, v)| {
        let lhs = env.counit(&env.multiply(u, v)?)?;
        let rhs = env.counit(&env.multiply(u, &env.embed_r(&env.counit(v)?)?)?)?;
        Ok((lhs != rhs).then(|| format!("u = {}, v = {}", show(u), show(v))))
    })?;
    report.push(Check::from_outcome(
        "counit-product",
        format!("eps(u v) = eps(u eps(v)) on {n} pairs"),
        fail,
    ));

    let fail = first_failure(&us, |u| {
        let t = env.coproduct(u)?;
        Ok((!env.bar_tensor_check(&t, &probes)?).then(|| show(u)))
    })?;
    report.push(Check::from_outcome(
        "bar-tensor",
        format!("D(u) is balanced against ring monomials of degree <= {probe_deg} on {n} elements"),
        fail,
    ));
    Ok(report)
}

/// Primitive filtration degree against PBW degree on random elements of the
/// augmentation ideal.
pub fn filtration_suite(env: &Enveloping, spec: SampleSpec) -> Result<Report> {
    let mut sampler = Sampler::new(spec.seed);
    let us: Vec<UElement> = (0..spec.samples)
        .map(|_| sampler.augmented(env, spec.pbw_deg, spec.coeff_deg))
        .collect();
    let fail = first_failure(&us, |u| {
        let p = env.primitive_filtration_degree(u)?;
        let q = env.pbw_degree(u)?;
        Ok((p != q).then(|| format!("{}: primitive degree {p}, PBW degree {q}", env.render(u))))
    })?;
    let mut report = Report::new();
    report.push(Check::from_outcome(
        "filtrations",
        format!(
            "primitive filtration degree = PBW degree on {} elements",
            spec.samples
        ),
        fail,
    ));
    Ok(report)
}

/// Structure of primitives: commutators of primitives are primitive, the
/// anchor is recovered as `eps(a r)`, and `a r = eps(a r) + r a`.
pub fn primitive_structure_suite(env: &Enveloping, d: u32, e: u32) -> Result<Report> {
    let prims = env.primitives_basis(d, e)?;
    let ring = env.ring();
    let vars: Vec<UElement> = (0..ring.nvars())
        .map(|l| env.embed_r(&ring.var(l)))
        .collect::<Result<_>>()?;
    let mut report = Report::new();

    let fail = first_failure(
        prims.iter().flat_map(|a| prims.iter().map(move |b| (a, b))),
        |(a, b)| {
            let c = env.commutator(a, b)?;
            let ok = env.counit(&c)?.is_zero() && env.reduced_coproduct(&c)?.is_zero();
            Ok((!ok).then(|| format!("[{}, {}]", env.render(a), env.render(b))))
        },
    )?;
    report.push(Check::from_outcome(
        "commutators",
        "commutators of primitives are primitive",
        fail,
    ));

    let fail = first_failure(0..env.rank(), |&i| {
        let x = env.presentation().generator(i);
        let a = env.embed_l(&x)?;
        for (l, r) in vars.iter().enumerate() {
            let lhs = env.counit(&env.multiply(&a, r)?)?;
            if lhs != env.presentation().anchor_apply(&x, &ring.var(l))? {
                return Ok(Some(format!("eps({} {})", env.render(&a), ring.vars()[l])));
            }
        }
        Ok(None)
    })?;
    report.push(Check::from_outcome(
        "anchor",
        "eps(e_i x_l) equals the anchor",
        fail,
    ));

    let fail = first_failure(prims.iter(), |a| {
        for r in &vars {
            let ar = env.multiply(a, r)?;
            let rhs = env.embed_r(&env.counit(&ar)?)?.add(&env.multiply(r, a)?);
            if ar != rhs {
                return Ok(Some(format!("{} times {}", env.render(a), env.render(r))));
            }
        }
        Ok(None)
    })?;
    report.push(Check::from_outcome(
        "commute-past-ring",
        "a r = eps(a r) + r a for primitive a",
        fail,
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn suites_pass_on_weyl() {
        let env = Enveloping::new(catalog::weyl()).unwrap();
        let spec = SampleSpec {
            samples: 5,
            ..SampleSpec::default()
        };
        for r in [
            pbw_suite(&env, 2, spec).unwrap(),
            bialgebra_suite(&env, spec, 2).unwrap(),
            filtration_suite(&env, spec).unwrap(),
            primitive_structure_suite(&env, 2, 1).unwrap(),
        ] {
            assert!(r.passed(), "{}", r.render());
        }
    }
}
