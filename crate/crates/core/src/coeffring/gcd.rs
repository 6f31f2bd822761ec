//! Polynomial gcd over Q: Euclid in one variable, and dense evaluation /
//! interpolation in the last occurring variable otherwise.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{Polynomial, Rational};
use crate::monomial::Exponents;

/// Monic gcd; `gcd(0, 0) = 0`.
pub(super) fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.nvars());
    }
    let vars: Vec<usize> = (0..a.nvars())
        .filter(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
        .collect();
    match vars[..] {
        [v] => euclid(a, b, v),
        _ => interpolated(a, b, *vars.last().expect("nonconstant")),
    }
}

fn euclid(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let (mut p, mut q) = (a.monic(), b.monic());
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        let r = remainder(&p, &q, v);
        p = q;
        q = r.monic();
    }
    p
}

/// Remainder of `p` modulo the monic univariate `q`.
fn remainder(p: &Polynomial, q: &Polynomial, v: usize) -> Polynomial {
    let dq = q.degree_in(v);
    let mut r = p.clone();
    while !r.is_zero() && r.degree_in(v) >= dq {
        let dr = r.degree_in(v);
        let lr = r.coeff_in(v, dr).constant_value().expect("univariate");
        let shift = Exponents::zero(r.nvars()).with(v, dr - dq);
        r = &r - &q.mul_monomial(&shift, &lr);
    }
    r
}

/// Coefficients of `p` viewed in the variables other than `v`, each a
/// polynomial in `x_v` alone.
fn split(p: &Polynomial, v: usize) -> BTreeMap<Exponents, Polynomial> {
    let n = p.nvars();
    let mut out: BTreeMap<Exponents, Polynomial> = BTreeMap::new();
    for (e, c) in p.terms() {
        let y = Polynomial::term(Exponents::zero(n).with(v, e.get(v)), c.clone());
        let slot = out
            .entry(e.with(v, 0))
            .or_insert_with(|| Polynomial::zero(n));
        *slot = &*slot + &y;
    }
    out
}

fn content(p: &Polynomial, v: usize) -> Polynomial {
    let mut g = Polynomial::zero(p.nvars());
    for c in split(p, v).values() {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn leading_coefficient(p: &Polynomial, v: usize) -> Polynomial {
    split(p, v).into_iter().next_back().expect("nonzero").1
}

/// `p` with `x_v` replaced by `y0`.
fn substitute(p: &Polynomial, v: usize, y0: &Rational) -> Polynomial {
    Polynomial::from_terms(
        p.nvars(),
        p.terms()
            .map(|(e, c)| (e.with(v, 0), c * pow(y0, e.get(v)))),
    )
}

fn pow(y: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * y)
}

fn value(p: &Polynomial, v: usize, y0: &Rational) -> Rational {
    substitute(p, v, y0)
        .constant_value()
        .expect("univariate in x_v")
}

/// Brown's scheme over Q: contents in `x_v`, then gcds of specializations
/// `x_v = 1, 2, ...` scaled by the gcd of leading coefficients, Newton
/// interpolation in `x_v`, and a trial-division check once the interpolant
/// stops changing.
fn interpolated(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let n = a.nvars();
    let (ca, cb) = (content(a, v), content(b, v));
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    if pa.is_constant() || pb.is_constant() {
        return c;
    }
    let (la, lb) = (leading_coefficient(&pa, v), leading_coefficient(&pb, v));
    let gamma = gcd(&la, &lb);
    let bound = pa.degree_in(v).min(pb.degree_in(v)) + gamma.degree_in(v);
    let y = Polynomial::var(n, v);

    let mut h = Polynomial::zero(n);
    let mut basis = Polynomial::one(n);
    let mut lead: Option<Exponents> = None;
    let mut points = 0;
    let mut k = 0i64;
    loop {
        k += 1;
        let y0 = Rational::from_integer(k.into());
        if value(&la, v, &y0).is_zero() || value(&lb, v, &y0).is_zero() {
            continue;
        }
        let g = gcd(&substitute(&pa, v, &y0), &substitute(&pb, v, &y0));
        if g.is_constant() {
            return c;
        }
        let lm = g.leading_term().expect("nonzero").0.clone();
        match &lead {
            Some(cur) if lm > *cur => continue,
            Some(cur) if lm == *cur => {}
            _ => {
                h = Polynomial::zero(n);
                basis = Polynomial::one(n);
                points = 0;
                lead = Some(lm);
            }
        }
        let g = g.scale(&value(&gamma, v, &y0));
        let delta = &g - &substitute(&h, v, &y0);
        let unchanged = delta.is_zero() && points > 0;
        if !delta.is_zero() {
            let scale = value(&basis, v, &y0).recip();
            h = &h + &(&delta * &basis).scale(&scale);
        }
        basis = &basis * &(&y - &Polynomial::constant(n, y0));
        points += 1;
        if unchanged || points > bound {
            let pp = h.div_exact(&content(&h, v)).expect("content divides");
            if pa.div_exact(&pp).is_some() && pb.div_exact(&pp).is_some() {
                return (&c * &pp).monic();
            }
            assert!(
                points <= bound + 1,
                "gcd interpolation exceeded its degree bound"
            );
        }
    }
}
