//! Exact spectra of circulant graphs `Cay(Z_n, S)`.
//!
//! Eigenvalues are elements of `Z[ω]` kept as remainders modulo `Φ_n`, so
//! isospectrality and repeated-eigenvalue checks are exact comparisons.
//! On top of that sit an isomorphism decider (multiplier search, gates, and a
//! brute-force oracle), an exhaustive checker for spectral characterization,
//! and the `2^r·p` isospectral construction.
//!
//! The arithmetic core is generic over the coefficient type; the aliases
//! below fix it to `i64` (checked, never wrapping) or `BigInt`.

pub mod arith;
pub mod characterization;
pub mod construction;
pub mod cyclotomic;
pub mod error;
pub mod graph;
pub mod isomorphism;
pub mod scalar;

pub use error::{Error, Result};

pub type GroupRingElement = cyclotomic::GroupRingElementOf<i64>;
pub type CyclotomicValue = cyclotomic::CyclotomicValueOf<i64>;
pub type BigGroupRingElement = cyclotomic::GroupRingElementOf<num_bigint::BigInt>;
pub type BigCyclotomicValue = cyclotomic::CyclotomicValueOf<num_bigint::BigInt>;
pub type KernelDecomposition = cyclotomic::KernelDecomposition<i64>;

pub use graph::{CirculantGraph, ConnectionMultiset, Spectrum};
pub use isomorphism::IsomorphismVerdict;
