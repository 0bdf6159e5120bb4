//! Closures of rational subsets of free groups in the pro-p, pro-nilpotent
//! and profinite topologies, and the finite-monoid decision procedures built
//! on top of them (nilpotent kernels, pointlike pairs, membership in
//! `J * G_nil` and `J m G_nil`).
//!
//! The layers, bottom up:
//!
//! * [`freegroup`]: alphabets, words and free reduction.
//! * [`automata`]: automata over the doubled alphabet, rational expressions,
//!   reduced-word languages and their boolean algebra.
//! * [`stallings`]: subgroup graphs, folding, intersections, overgroups.
//! * [`closures`]: prime spectra, p-closures, nil-closures of subgroups,
//!   products and rational subsets.
//! * [`monoids`]: finite monoids and the kernel / pointlike computations.
//! * [`oracle`]: brute-force homomorphisms into small nilpotent groups, used
//!   to falsify closure outputs.

pub mod automata;
pub mod closures;
mod error;
pub mod freegroup;
pub mod monoids;
pub mod oracle;
pub mod stallings;

pub use error::{Error, Limits, Result};
pub use freegroup::{Alphabet, Letter, ReducedWord, Word};
