//! Ramsey-type problems on Boolean lattices.
//!
//! The crate models subsets of `[N]` as bit masks and provides:
//!
//! * [`lattice`]: subset masks, finite posets, up-sets of `Q_n`, antichain
//!   counts and the 2-dimension of a poset;
//! * [`embeddings`]: order embeddings `Q_n -> Q_N`, their good-sequence
//!   encoding, exact counts and enumeration;
//! * [`coloring`]: colorings of `Q_N`, layered colorings and Lubell mass;
//! * [`detect`]: searches for monochromatic copies of `Q_n` and of general
//!   posets, layered sub-cubes, Hilbert cubes and Boolean algebras;
//! * [`constructions`]: the constructive strategies that turn an arbitrary
//!   coloring into a monochromatic witness;
//! * [`ramsey`]: exhaustive arrowing checks, small Ramsey numbers and a
//!   simulated-annealing witness search.
//!
//! Heavy loops take an [`Exec`] so callers choose between the rayon pool and
//! a plain sequential loop. The `parallel` feature (on by default) enables
//! the former.

pub mod coloring;
pub mod constructions;
pub mod detect;
pub mod embeddings;
mod error;
mod exec;
pub mod lattice;
pub mod ramsey;

pub use error::{Budget, Error, Result};
pub use exec::Exec;
