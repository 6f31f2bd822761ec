//! The built-in test algebras.

use crate::lie_rinehart::{parse_definition, LrPresentation};

pub const WEYL: &str = include_str!("../algebras/weyl.lr");
pub const DER2: &str = include_str!("../algebras/der2.lr");
pub const SL2: &str = include_str!("../algebras/sl2.lr");
pub const AFF1: &str = include_str!("../algebras/aff1.lr");
pub const BAD: &str = include_str!("../algebras/bad.lr");

fn load(text: &str) -> LrPresentation {
    let mut p = parse_definition(text).expect("built-in definition parses");
    let report = p.validate();
    assert!(report.is_valid(), "built-in algebra fails the axioms");
    p
}

/// `Q[x]` with `d = d/dx`.
pub fn weyl() -> LrPresentation {
    load(WEYL)
}

/// `Der(Q[x,y])` on the coordinate derivations.
pub fn der2() -> LrPresentation {
    load(DER2)
}

/// `sl2` over `Q`.
pub fn sl2() -> LrPresentation {
    load(SL2)
}

/// `u = d/dx`, `v = x d/dx` over `Q[x]`.
pub fn aff1() -> LrPresentation {
    load(AFF1)
}

/// A presentation whose anchor is not a Lie homomorphism. Not validated.
pub fn bad() -> LrPresentation {
    parse_definition(BAD).expect("built-in definition parses")
}

/// The four valid test algebras, by name.
pub fn test_algebras() -> Vec<(&'static str, LrPresentation)> {
    vec![
        ("weyl", weyl()),
        ("der2", der2()),
        ("sl2", sl2()),
        ("aff1", aff1()),
    ]
}
