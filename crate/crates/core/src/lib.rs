//! Exact computations with annihilator ideals, approximations and quotient
//! endomorphism rings, together with certificates for the derived
//! equivalences they produce.
//!
//! Composition is written left to right throughout: `fg` means `f` first.

pub mod algebra;
pub mod angulate;
pub mod catideal;
pub mod category;
pub mod complexes;
pub mod derivedeq;
pub mod error;
pub mod examples;
pub mod exactla;
pub mod orbit;
pub mod report;

pub use error::{Error, Result};
