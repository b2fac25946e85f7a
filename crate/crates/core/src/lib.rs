//! Subtractive ideals and Bourne congruences of finite semirings.
//!
//! A finite semiring is given by its addition and multiplication tables
//! ([`kernel`]). On top of that the crate computes ideals and their
//! subtractive closures ([`ideals`]), congruences, Bourne relations and
//! quotients ([`congruence`]), isomorphism classes and small-order censuses
//! ([`classify`]), and finitely generated ideals of the nonnegative integers
//! ([`natsr`]). [`checks`] bundles the end-to-end verification items run by
//! the command-line `check-paper` command.

pub mod analysis;
pub mod checks;
pub mod classify;
pub mod congruence;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod ideals;
pub mod kernel;
pub mod natsr;
pub mod partition;
pub mod specfmt;
pub mod subset;

pub use congruence::{Congruence, QuotientSemiring};
pub use error::Error;
pub use kernel::{AxiomReport, ElementId, FiniteSemiring, OpTable};
pub use partition::Partition;
pub use subset::ElementSubset;
