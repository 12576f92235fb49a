//! Exact-arithmetic toolkit for lattice polytopes.
//!
//! The crate computes Ehrhart δ-vectors, Hermite/Smith normal forms, the
//! finite abelian group attached to a lattice simplex, unimodular
//! equivalence, and the complete classification of lattice polytopes of
//! normalized volume at most 4 (together with an independent brute-force
//! enumeration that cross-checks it).
//!
//! Everything runs over checked 64-bit integers and exact rationals;
//! overflow is a reported error, never a silent wrap. Points are row
//! vectors and affine lattice maps act as `x ↦ x·U + w` with `U`
//! unimodular.
//!
//! Start with the `examples/` directory: each example is a runnable tour
//! of one capability (invariants, catalog generation, classification,
//! equivalence testing, enumeration, verification of the published data).

pub mod arith;
pub mod catalog;
pub mod ehrhart;
pub mod enumerate;
pub mod equiv;
pub mod io;
pub mod lambda;
pub mod matrix;
pub mod polytope;
pub mod transform;
pub mod verify;

mod error;
mod lp;

pub use error::{Error, Result};
