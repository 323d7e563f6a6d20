//! Exact-arithmetic kernel for discrete-series multiplicities.
//!
//! The crate computes the finite, closed-form data entering multiplicity
//! and L2-Lefschetz totals for a small catalog of reductive groups: exact
//! root-system and Weyl-group combinatorics, the axiomatic integer table on
//! pairs of positive systems, averaged and stable discrete-series
//! characters, tempered-packet transfer-factor linear algebra, endoscopic
//! coefficient arithmetic, and the assembled geometric expansions. All
//! torsion-point evaluations run in exact cyclotomic arithmetic; generic
//! points fall back to complex floating point under a global tolerance.

pub mod assembly;
pub mod catalog;
pub mod cbar;
pub mod characters;
pub mod cli;
pub mod cyclotomic;
pub mod endoscopy;
pub mod error;
pub mod exact;
pub mod packets;
pub mod rootsys;
pub mod value;

pub use error::{Error, Result};
