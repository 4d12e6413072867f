//! A finite-group computation laboratory built on explicit permutation
//! groups: exhaustive subgroup lattices, classical structure predicates,
//! a zoo of subgroup embedding properties centered on the Π-property and
//! Π-supplementation, and brute-force verification suites that check the
//! supporting theorems over a catalog of small groups.
//!
//! Everything quantifies exhaustively: groups materialize their full
//! element lists, lattices enumerate every subgroup, and "for every
//! chief factor" means every covering pair of the normal lattice.

pub mod catalog;
pub mod config;
pub mod error;
pub mod harness;
pub mod lattice;
mod memo;
pub mod perm;
pub mod props;
pub mod report;
pub mod structure;

pub use error::{Error, Result};
pub use perm::{
    direct_product, quotient, Caps, FiniteGroup, Group, Permutation, QuotientMap, Subgroup,
};
