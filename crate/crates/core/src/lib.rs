//! Certification of symmetric Galois groups for trimmed exponentials and
//! integer-normalized generalized Laguerre polynomials.
//!
//! The pipeline: exact p-adic valuations ([`valuations`]) feed Newton
//! polygon geometry ([`polygon`]), whose segments become cycle witnesses
//! assembled into certificates ([`certify`]). An independent oracle
//! ([`modpoly`]) confirms certificates by factoring the instance modulo
//! random primes and reading Frobenius cycle types. Smooth-number counts
//! ([`smooth`]) quantify how often the witness searches succeed, and a
//! Monte-Carlo harness ([`experiment`]) measures certification rates and
//! oracle agreement at scale.

pub mod certify;
pub mod experiment;
pub mod modpoly;
pub mod polygon;
pub mod smooth;
pub mod valuations;
