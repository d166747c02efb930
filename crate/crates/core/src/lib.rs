//! Exact combinatorics of spherical systems: root data, the spherical root
//! catalog, colors and axioms, quotients and distinguished subsets, tails and
//! the reduction to primitive systems, and exhaustive enumeration.
//!
//! Everything is integer or rational arithmetic; nothing uses floating point.

pub mod bitset;
pub mod catalog;
pub mod enumerate;
pub mod format;
pub mod par;
pub mod quotient;
pub mod rootkit;
pub mod structure;
pub mod system;

pub use bitset::BitSet;
pub use catalog::{compatible_roots, is_compatible, Tag, TailShape};
pub use enumerate::{enumerate, probe_distinguished_not_star, EnumerationQuery};
pub use format::{parse_system, parse_systems, print_system, ParseError};
pub use quotient::{QuotientError, QuotientReport, SubsetKind};
pub use rootkit::{CartanType, LatticeVector, RootError, RootSet, RootSystem};
pub use structure::{ReductionNode, StepTag};
pub use system::{
    build_colors, validate, ColorSet, ColorTable, SphericalSystem, SystemError, Violation,
};
