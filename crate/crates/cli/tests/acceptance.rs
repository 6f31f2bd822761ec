//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use lrkit_core::catalog;
use lrkit_core::coeffring::{Mode, Rational, Ring, Scalar};
use lrkit_core::enveloping::Enveloping;
use lrkit_core::lie_rinehart::{LElement, LrPresentation};
use lrkit_core::linalg;
use lrkit_core::monomial::Exponents;
use lrkit_core::report::Report;
use lrkit_core::sample::Sampler;
use lrkit_core::symcoalg::{
    cofree_extend, morphism_failures, symmetrize, SElement, SymmetricTruncation,
};
use lrkit_core::tensor::factorial;
use lrkit_core::verify::{self, SampleSpec};

type Outcome = Result<(), String>;

/// id, description, time limit in seconds, check.
type Criterion = (&'static str, &'static str, u64, fn() -> Outcome);

fn envs() -> Vec<(&'static str, Enveloping)> {
    catalog::test_algebras()
        .into_iter()
        .map(|(n, p)| (n, Enveloping::new(p).unwrap()))
        .collect()
}

fn require(report: Report, what: &str) -> Outcome {
    if report.passed() {
        Ok(())
    } else {
        Err(format!("{what}:\n{}", report.render()))
    }
}

fn axioms() -> Outcome {
    for (name, p) in catalog::test_algebras() {
        let r = p.check_axioms();
        if !r.is_valid() {
            return Err(format!("{name}: {}", r.render(&p)));
        }
    }
    let bad = catalog::bad();
    let r = bad.check_axioms();
    let exact = r.jacobi_failures.is_empty()
        && r.anchor_failures.len() == 1
        && r.anchor_failures[0].pair == (0, 1)
        && r.anchor_failures[0].var == 0;
    if exact {
        Ok(())
    } else {
        Err(format!("bad presentation reported:\n{}", r.render(&bad)))
    }
}

fn pbw() -> Outcome {
    let spec = SampleSpec::default();
    for (name, env) in envs() {
        let report = verify::pbw_suite(&env, 3, spec).map_err(|e| e.to_string())?;
        let check = report.get("monomial-symbols").expect("check present");
        if !check.passed() {
            return Err(format!("{name}: {}", report.render()));
        }
    }
    Ok(())
}

fn bialgebra() -> Outcome {
    let spec = SampleSpec {
        samples: 20,
        pbw_deg: 3,
        coeff_deg: 2,
        seed: 11,
    };
    for (name, env) in envs() {
        require(
            verify::bialgebra_suite(&env, spec, 4).map_err(|e| e.to_string())?,
            name,
        )?;
    }
    Ok(())
}

/// Rows of `r e_i` for `deg r <= e`, in rational coordinates.
fn truncated_l(env: &Enveloping, e: u32) -> Vec<BTreeMap<(Exponents, Exponents), Rational>> {
    let ring = env.ring();
    let mut rows = Vec::new();
    for gamma in Exponents::up_to_degree(ring.nvars(), 0, e) {
        for i in 0..env.rank() {
            let u = env.generator(i).scale(&ring.monomial(&gamma));
            rows.push(env.rational_coordinates(&u).unwrap());
        }
    }
    rows
}

fn primitives() -> Outcome {
    let mut cases: Vec<(&str, Enveloping, u32, usize)> = envs()
        .into_iter()
        .map(|(n, env)| {
            let dim = env.rank() * Exponents::up_to_degree(env.ring().nvars(), 0, 2).len();
            (n, env, 2, dim)
        })
        .collect();
    cases.push(("sl2 (E=0)", Enveloping::new(catalog::sl2()).unwrap(), 0, 3));
    for (name, env, e, dim) in cases {
        let basis = env.primitives_basis(2, e).map_err(|err| err.to_string())?;
        let got: Vec<_> = basis
            .iter()
            .map(|u| env.rational_coordinates(u).unwrap())
            .collect();
        let expected = truncated_l(&env, e);
        let joint: Vec<_> = got.iter().chain(&expected).cloned().collect();
        let ranks = [
            linalg::rank(&linalg::from_sparse_rows(&got)),
            linalg::rank(&linalg::from_sparse_rows(&expected)),
            linalg::rank(&linalg::from_sparse_rows(&joint)),
        ];
        if basis.len() != dim || ranks != [dim; 3] {
            return Err(format!(
                "{name}: {} primitives, ranks {ranks:?}, expected {dim}",
                basis.len()
            ));
        }
    }
    Ok(())
}

fn filtration() -> Outcome {
    let spec = SampleSpec {
        samples: 20,
        pbw_deg: 3,
        coeff_deg: 2,
        seed: 5,
    };
    for (name, env) in envs() {
        require(
            verify::filtration_suite(&env, spec).map_err(|e| e.to_string())?,
            name,
        )?;
    }
    Ok(())
}

fn cmm() -> Outcome {
    for (name, env) in envs() {
        require(env.cmm_verify(3, 2).map_err(|e| e.to_string())?, name)?;
    }
    Ok(())
}

fn cofree() -> Outcome {
    let one = Rational::from_integer(1.into());
    for (vars, rank) in [(vec![], 2usize), (vec!["x".to_string()], 2), (vec![], 3)] {
        let ring = Ring::new(vars, Mode::Polynomial);
        let c = SymmetricTruncation::new(ring.clone(), rank, 4);
        let g1: BTreeMap<Exponents, SElement> = (0..rank)
            .map(|i| {
                (
                    Exponents::unit(rank, i),
                    SElement::generator(&ring, rank, i),
                )
            })
            .collect();
        let g = cofree_extend(&c, &g1, rank, 4).map_err(|e| e.to_string())?;
        for b in Exponents::up_to_degree(rank, 1, 4) {
            for n in 1..=4 {
                let want = if b.degree() == n as u32 {
                    SElement::term(rank, b.clone(), ring.one())
                } else {
                    SElement::zero(rank)
                };
                if g.component(n, &b) != want {
                    return Err(format!(
                        "component {n} is not the identity on degree {}",
                        b.degree()
                    ));
                }
            }
        }
        if !morphism_failures(&c, &g).is_empty() {
            return Err("extension is not a coalgebra map".into());
        }
        let mut sampler = Sampler::new(3);
        for n in 1..=4u32 {
            for _ in 0..5 {
                let a = sampler.selement(&ring, rank, 4, 2).homogeneous(n);
                let want = a.scale_rational(&(factorial(n) * &one));
                if symmetrize(&a, n as usize) != want {
                    return Err(format!("symmetrization fails in degree {n}"));
                }
            }
        }
    }
    Ok(())
}

fn localization() -> Outcome {
    let weyl = catalog::weyl().localize().map_err(|e| e.to_string())?;
    let der2 = catalog::der2().localize().map_err(|e| e.to_string())?;
    let mut sampler = Sampler::new(9);
    for p in [&weyl, &catalog::aff1().localize().unwrap(), &der2] {
        let ring = p.ring();
        for _ in 0..10 {
            let s = sampler.nonzero_scalar(ring, 2);
            let t = sampler.nonzero_scalar(ring, 2);
            let q = sampler.nonzero_scalar(ring, 1);
            let x = sampler.l_element(p, 2).scale(&ring.one().div(&q).unwrap());
            let y = sampler.l_element(p, 2);
            let lhs = leibniz(p, &s, &x, &t, &y)?;
            let rhs = p
                .localized_bracket(&s, &x, &t, &y)
                .map_err(|e| e.to_string())?;
            if lhs != rhs {
                return Err(format!(
                    "s = {}, t = {}, X = {}, Y = {}",
                    ring.display(&s),
                    ring.display(&t),
                    x.display(p),
                    y.display(p)
                ));
            }
        }
    }
    let ring = weyl.ring();
    let d = weyl.generator(0);
    let x_inv = ring.one().div(&ring.var(0)).unwrap();
    let spot = weyl
        .bracket(&d, &d.scale(&x_inv))
        .map_err(|e| e.to_string())?;
    let want = d.scale(&(&x_inv * &x_inv)).neg();
    if spot != want {
        return Err(format!("[d, x^-1 d] = {}", spot.display(&weyl)));
    }
    Ok(())
}

/// `[s^-1 X, t^-1 Y]` through the Leibniz-extended bracket.
fn leibniz(
    p: &LrPresentation,
    s: &Scalar,
    x: &LElement,
    t: &Scalar,
    y: &LElement,
) -> Result<LElement, String> {
    let one = p.ring().one();
    let (si, ti) = (
        one.div(s).map_err(|e| e.to_string())?,
        one.div(t).map_err(|e| e.to_string())?,
    );
    p.bracket(&x.scale(&si), &y.scale(&ti))
        .map_err(|e| e.to_string())
}

fn cli_goldens() -> Outcome {
    let tests = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests");
    let cases: [(&[&str], &str, i32); 3] = [
        (&["nf", "weyl.lr", "d*x"], "nf_weyl.out", 0),
        (&["check", "bad.lr"], "check_bad.out", 1),
        (
            &["verify-cmm", "weyl.lr", "--pbw-deg", "3"],
            "verify_cmm_weyl.out",
            0,
        ),
    ];
    for (args, golden, code) in cases {
        let out = Command::new(env!("CARGO_BIN_EXE_lrkit"))
            .current_dir(tests.join("data"))
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        let want = std::fs::read(tests.join("golden").join(golden)).map_err(|e| e.to_string())?;
        if out.stdout != want || out.status.code() != Some(code) {
            return Err(format!(
                "lrkit {}: exit {:?}",
                args.join(" "),
                out.status.code()
            ));
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "1",
            "axiom gate on the test algebras and the bad presentation",
            1,
            axioms,
        ),
        ("2", "PBW symbols multiply for |a|, |b| <= 3", 10, pbw),
        (
            "3",
            "bialgebra suite, 20 samples, PBW <= 3, coeff <= 2, probes <= 4",
            30,
            bialgebra,
        ),
        (
            "4",
            "primitives with D=2 span the truncation of L",
            10,
            primitives,
        ),
        (
            "5",
            "primitive filtration equals PBW filtration on 20 samples",
            10,
            filtration,
        ),
        (
            "6",
            "cmm_verify with D=3, E=2 on all test algebras",
            60,
            cmm,
        ),
        (
            "7",
            "cofree extension identity through degree 4, symmetrization n!",
            5,
            cofree,
        ),
        (
            "8",
            "localized bracket formula on 10 random cases, spot value",
            5,
            localization,
        ),
        ("9", "CLI golden outputs and exit codes", 10, cli_goldens),
    ];
    let mut failed = 0;
    for (id, desc, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if took > Duration::from_secs(limit) {
                Err(format!("took {took:.2?}, limit {limit} s"))
            } else {
                Ok(())
            }
        });
        match outcome {
            Ok(()) => println!("PASS criterion {id}: {desc} ({took:.2?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id}: {desc} ({took:.2?}) -- {why}");
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
