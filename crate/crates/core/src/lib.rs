//! Exact computational engine for Majorana fermions on
//! reflection-symmetric lattices.
//!
//! The crate builds Gibbs trace functionals Tr(A ϑ(B) e^{−H}) over a
//! Clifford algebra of 2N Majoranas split by a reflection, and
//! certifies, refutes, or bounds their positivity on the even
//! half-algebras:
//!
//! - [`clifford`] — exact symbolic algebra: canonical monomials, signed
//!   products, adjoints, traces, and the reflection ϑ.
//! - [`geometry`] — lattice sites, flavors, and the reflection pairing.
//! - [`dense`] — the standard 2^N-dimensional matrix representation and
//!   the monomial-basis expansion in both directions.
//! - [`hamiltonian`] — H = H₋ + H₀ + H₊ construction and the
//!   coupling-sign classification.
//! - [`gibbs`] — RP functionals, Gram-matrix certification with witness
//!   extraction, reflection bounds, and the Schwarz identities.
//! - [`trotter`] — Lie-product approximants and the expansion machinery
//!   behind the positivity proof, checkable at small sizes.
//! - [`spin`] — Pauli operators from four Majoranas per site and the
//!   Ising / rotator / Heisenberg bond builders.
//! - [`sample`] — seeded random models for reproducible studies.
//! - [`config`] — the TOML model schema used by the CLI.

pub mod clifford;
pub mod config;
pub mod dense;
pub mod error;
pub mod geometry;
pub mod gibbs;
pub mod hamiltonian;
pub mod linalg;
pub mod sample;
pub mod spin;
pub mod trotter;

pub use error::{Error, Result};

/// Largest number of fermionic modes for which dense matrices may be
/// built (dimension 2^13 = 8192).
pub const MODE_CAP: usize = 13;
