//! Exact computations with universal enveloping algebras of Lie-Rinehart
//! algebras presented over polynomial rings with rational coefficients.

pub mod catalog;
pub mod coeffring;
pub mod enveloping;
pub mod error;
pub mod expr;
pub mod lie_rinehart;
pub mod linalg;
pub mod monomial;
pub mod report;
pub mod sample;
pub mod symcoalg;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
