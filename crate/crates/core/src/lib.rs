//! Cliques in xor-powers of Kneser graphs, viewed as semi-intersecting
//! set systems.
//!
//! A vertex of `KG(n, k)^ell` is a set meeting each of `ell` disjoint
//! `n`-element blocks in `k` points; two vertices are adjacent when they are
//! disjoint in an odd number of blocks. This crate builds the known large
//! families, verifies them, computes exact clique numbers on small
//! instances, and evaluates the closed-form bounds.

pub mod analysis;
mod bits;
pub mod constructions;
pub mod error;
pub mod setsystem;
pub mod solver;
pub mod subsets;

pub use bits::BitSet;
pub use error::{Error, Result};
pub use setsystem::{
    verify_family, xor_adjacent, Family, Layout, TransversalSet, VerifyReport, Violation,
};
