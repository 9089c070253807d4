//! Polynomial representatives of Schubert classes in the quantum cohomology
//! ring of a generalized flag manifold `G/B`.
//!
//! The pipeline: build a [`RootDatum`](rootsystem::RootDatum), enumerate its
//! [`WeylGroup`](weyl::WeylGroup), produce the divided-difference family
//! `c_w` ([`classical`]), build the commuting operators `Λ_i` and the
//! quantization map `ψ` ([`quantum`]), and read off quantum products and
//! Gromov–Witten numbers from `ĉ_w = ψ⁻¹(c_w)`.

pub mod algebra;
pub mod classical;
pub mod engine;
pub mod error;
pub mod fixtures;
pub mod quantum;
pub mod rootsystem;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};

/// Version tag carried by every JSON document this crate writes.
pub const SCHEMA: &str = "qschubert/1";
