//! Exact computations around the nilpotent cohomological Hall algebra of
//! Higgs sheaves on a smooth projective curve.
//!
//! - [`ktheory`]: numerical classes and Euler forms.
//! - [`jordan`]: Jordan types, their partial order and enumeration.
//! - [`tautalg`]: the tautological algebra `ℍ`, Chern calculus, coproduct and series.
//! - [`grcoha`]: the associated graded of the nilpotent COHA.

pub mod error;
pub mod grcoha;
pub mod jordan;
pub mod ktheory;
pub mod tautalg;

pub use error::{Error, Result};
pub use ktheory::{CurveModel, NumClass};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/ktheory.md")]
    mod ktheory {}
    #[doc = include_str!("../../../book/src/jordan.md")]
    mod jordan {}
    #[doc = include_str!("../../../book/src/tautalg.md")]
    mod tautalg {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/grcoha.md")]
    mod grcoha {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
