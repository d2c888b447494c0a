//! Shuffle-algebra realization of cohomological Hall algebras of quivers with
//! involution, together with their orthosymplectic modules, and exact
//! machine certification of the algebraic identities they satisfy.
//!
//! Layers, bottom up:
//! - [`symbolic`]: exact polynomials, factored rational functions, Laurent
//!   expansion at infinity;
//! - [`quiver`]: quivers with duality structure, validation, arrow-orbit
//!   classification, doubled/tripled and framed constructions;
//! - [`weyl`]: signed-permutation groups, minimal coset representatives,
//!   symmetrization;
//! - [`kernels`]: equivariant Euler-class kernels (shuffle, orthosymplectic,
//!   framing, bracket calculus);
//! - [`hall`]: the graded algebra/module operations (product, action,
//!   coaction, loop-Cartan series);
//! - [`harness`]: batch identity certification with machine-readable
//!   certificates.

pub mod symbolic;
pub mod quiver;
pub mod weyl;
pub mod kernels;
pub mod hall;
pub mod harness;
