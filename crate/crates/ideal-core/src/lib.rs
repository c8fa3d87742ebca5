//! Finite stand-ins for free ideals and their sigma-completions.
//!
//! A ground set of at most 128 atoms, a generator family for the ideal J
//! (membership = subset of one generator), and a stage bound `s` for the
//! completion (membership = subset of a union of at most `s` generators).
//! Families of completion members carry their strict-inclusion order.

pub mod family;
pub mod ground;
pub mod instance;
pub mod io;
pub mod set;

pub use family::{locally_small_check, rank_family, FamilyError, FamilySpec, LocalSmallness};
pub use ground::{Atom, GroundSet};
pub use instance::{validate_instance, IdealInstance, SigmaSet, ValidationReport, Violation};
pub use set::{AtomSet, MAX_ATOMS};
