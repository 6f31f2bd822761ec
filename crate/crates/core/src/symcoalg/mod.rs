//! The symmetric algebra `S_R(V)` as a coalgebra, coalgebra maps into it,
//! the graded coalgebra of the primitive filtration, and the truncated
//! equivalence checks between `U` and primitives.

mod cmm;
mod cofree;
mod graded;
mod selement;

pub use cofree::{
    cofree_extend, morphism_failures, symmetrize, CofreeExtension, SymmetricTruncation,
    TruncatedCoalgebra,
};
pub use graded::{FiltrationLevel, GradedCoalgebra};
pub use selement::{generator_names, multiply_slots, SElement, SElementDisplay};
