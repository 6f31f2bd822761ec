use std::path::PathBuf;
use std::process::{Command, Output};

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn lrkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrkit"))
        .current_dir(data_dir().join("data"))
        .args(args)
        .output()
        .expect("spawn lrkit")
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(data_dir().join("golden").join(name)).expect("golden file")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn nf_weyl() {
    let o = lrkit(&["nf", "weyl.lr", "d*x"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("nf_weyl.out"));
    assert_eq!(stdout(&o), "x*d + 1\n");
}

#[test]
fn check_bad() {
    let o = lrkit(&["check", "bad.lr"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), golden("check_bad.out"));
    assert!(stdout(&o).contains("anchor-homomorphism failure: pair (1,2)"));
}

#[test]
fn verify_cmm_weyl() {
    let o = lrkit(&["verify-cmm", "weyl.lr", "--pbw-deg", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("verify_cmm_weyl.out"));
    assert_eq!(
        stdout(&o)
            .lines()
            .filter(|l| l.starts_with("PASS "))
            .count(),
        5
    );
}

#[test]
fn check_good_algebras() {
    for f in ["weyl.lr", "der2.lr", "sl2.lr", "aff1.lr"] {
        let o = lrkit(&["check", f]);
        assert_eq!(o.status.code(), Some(0), "{f}");
        assert!(lrkit(&["check", "--quiet", f]).stdout.is_empty());
    }
}

#[test]
fn coproduct_and_counit() {
    let o = lrkit(&["coproduct", "weyl.lr", "x*d^2"]);
    assert_eq!(
        stdout(&o),
        "x · (d^2 ⊗ 1) + 2*x · (d ⊗ d) + x · (1 ⊗ d^2)\n"
    );
    let o = lrkit(&["counit", "aff1.lr", "x^2 + u*x"]);
    assert_eq!(stdout(&o), "x^2 + 1\n");
    let o = lrkit(&["nf", "sl2.lr", "-f*e"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-e*f + h\n");
}

#[test]
fn primitives_listing() {
    let o = lrkit(&["primitives", "weyl.lr"]);
    assert_eq!(
        stdout(&o),
        "# 3 primitives with |alpha| <= 2, coefficient degree <= 2\nd\nx*d\nx^2*d\n"
    );
    let o = lrkit(&["primitives", "sl2.lr", "--coeff-deg", "0", "--quiet"]);
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn localize_round_trips() {
    let o = lrkit(&["localize", "aff1.lr"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("mode: frac"));
    let dir = tempdir();
    let path = dir.join("aff1_frac.lr");
    std::fs::write(&path, &text).unwrap();
    let again = lrkit(&["localize", path.to_str().unwrap()]);
    assert_eq!(stdout(&again), text);
}

fn tempdir() -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("golden");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn verify_suites_quiet() {
    let o = lrkit(&["verify-bialgebra", "der2.lr", "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("[summary]\n"));
    let o = lrkit(&["verify-pbw", "aff1.lr", "--pbw-deg", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS confluence"));
}

#[test]
fn usage_errors_exit_two() {
    let o = lrkit(&["nf", "weyl.lr", "d*"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`d*`"));
    assert!(stderr(&o).contains("column 3"));

    let o = lrkit(&["nf", "weyl.lr", "q"]);
    assert_eq!(o.status.code(), Some(2));

    let o = lrkit(&["check", "missing.lr"]);
    assert_eq!(o.status.code(), Some(2));

    let o = lrkit(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));

    let dir = tempdir();
    let path = dir.join("broken.lr");
    std::fs::write(&path, "ring: x\nmode: poly\nbasis: d\nanchor d: 1 +\n").unwrap();
    let o = lrkit(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
}

#[test]
fn invalid_presentation_blocks_other_verbs() {
    let o = lrkit(&["nf", "bad.lr", "e1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), golden("check_bad.out"));
}

#[test]
fn output_is_deterministic() {
    let a = lrkit(&["verify-bialgebra", "aff1.lr"]);
    let b = lrkit(&["verify-bialgebra", "aff1.lr"]);
    assert_eq!(a.stdout, b.stdout);
}
