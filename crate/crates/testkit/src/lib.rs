//! Brute-force oracles for the test suites.
//!
//! Nothing here depends on the engine: structures are plain nested tables,
//! and each oracle uses the most literal algorithm available (powersets,
//! Floyd-Warshall closure, enumeration of balanced maps) so that agreement
//! with the engine is evidence rather than repetition.

#![allow(clippy::needless_range_loop)]

pub mod abelian;
pub mod axioms;
pub mod enumerate;
pub mod fractions;
pub mod ideals;
pub mod raw;
pub mod tensor;

pub use abelian::invariant_factors_from_elements;
pub use axioms::naive_axiom_failures;
pub use enumerate::{divisors, modular_presets, subsets_up_to, units};
pub use fractions::naive_fraction_classes;
pub use ideals::{naive_ideals, naive_is_prime, naive_spectrum};
pub use raw::{RawModule, RawSemiring};
pub use tensor::{naive_tensor_invariants, naive_tor1_cyclic};
