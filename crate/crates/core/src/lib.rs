//! Polynomial functions over finite groups.
//!
//! The crate builds the free product `G[x₁,…,xₙ] = G ∗ Fₙ` of a finite group with a
//! free group, the group `Ḡ[x₁,…,xₙ]` of functions `Gⁿ → G` it induces, and the
//! integer-matrix machinery (Smith normal form, annihilating polynomials of
//! automorphisms, shift-word rewriting) used to reason about it. The `verifiers`
//! module checks the structural claims about these groups exhaustively or within
//! explicit search bounds.

pub mod abelian;
pub mod corpus;
pub mod error;
pub mod group;
pub mod polyfun;
pub mod terms;
pub mod verifiers;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
