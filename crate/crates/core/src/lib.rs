//! Exact decision procedures for monotypic and strongly monotypic polytopes.
//!
//! The crate works entirely in exact rational arithmetic. Given the set of
//! facet directions of a polytope it decides whether every polytope with
//! those directions is combinatorially equivalent (monotypy), whether the
//! stronger hyperplane-arrangement version holds, and, for polytopes that
//! are monotypic but not strongly so, constructs a translate `t` for which
//! `P ∩ (P + t)` is not a Minkowski summand of `P`.
//!
//! Module map:
//!
//! * [`exact`]: rationals, vectors, matrices, the simplex kernel.
//! * [`cone`]: positive hulls, conical position, Radon and Carathéodory.
//! * [`criteria`]: the four combinatorial conditions and the classifier.
//! * [`polytope`]: vertex enumeration, faces, sums, summand tests.
//! * [`witness`]: the translate construction and its verification battery.
//! * [`search`]: seeded instance generation and example mining.
//! * [`format`]: JSON interchange types.

pub mod cone;
pub mod criteria;
pub mod exact;
pub mod format;
pub mod par;
pub mod polytope;
pub mod search;
pub mod subsets;
pub mod witness;
