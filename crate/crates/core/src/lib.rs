//! Exact computations in acyclic, coefficient-free, skew-symmetric cluster
//! algebras, together with the representation theory needed to cross-check
//! them: denominator vectors against positive roots, clusters against
//! tilting objects, and mutation against the Caldero-Chapoton map.

#![allow(clippy::needless_range_loop, clippy::len_without_is_empty)]

pub mod cc;
pub mod error;
pub mod laurent;
pub mod linalg;
pub mod quiver;
pub mod report;
pub mod reps;
pub mod roots;
pub mod seed;

pub use error::{DivisionFailure, Error, Result};
pub use laurent::{monomial_of_dimvector, ExponentVector, LaurentPoly, ReducedForm};
pub use quiver::{DynkinType, ExchangeMatrix};
pub use report::{Verdict, VerificationReport};
pub use seed::{explore, CanonicalSeed, ExploreLimits, MutationGraph, Seed};
