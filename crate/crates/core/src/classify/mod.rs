//! Isomorphism classes of small semirings.
//!
//! [`iso`] decides isomorphism and computes canonical keys, [`enumerate`]
//! lists every semiring of a small order up to isomorphism, [`census`]
//! summarises an enumeration with per-class flags, and [`verify`] runs the
//! incline and `Z_n` classification checks over those enumerations.

pub mod census;
pub mod enumerate;
pub mod iso;
pub mod verify;

pub use census::{census, search_k_simple, CensusEntry, CensusReport};
pub use enumerate::{enumerate_inclines, enumerate_keys, enumerate_semirings, Constraints};
pub use iso::{are_isomorphic, canonical_form, canonical_key, CanonicalKey};
pub use verify::{verify_k_simple_inclines, zn_simplicity_conditions, InclineReport, ZnConditions};
