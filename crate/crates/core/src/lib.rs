//! Loops (quasigroups with identity) in two guises: finite loops given by
//! Cayley tables, and smooth local loops given by differentiable charts.
//!
//! The finite side builds extensions of a base loop by an abelian group from
//! a pair of matrix-valued maps on base pairs, checks nine weak associativity
//! and inverse properties on base, cocycle, and extension, and audits that
//! the three viewpoints agree. The smooth side prolongs a differentiable
//! loop to its tangent bundle with forward-mode derivatives and runs the
//! matching checks numerically.

pub mod abelian;
pub mod conditions;
pub mod extension;
pub mod finite;
pub mod fixtures;
pub mod io;
pub mod mapping;
pub mod perm;
pub mod phi;
pub mod search;
pub mod smooth;
