//! Exact symbolic computation for two-part q-Dyson constant terms.
//!
//! The crate provides the arithmetic kernels and the verification machinery
//! for the generalized constant term `D_{v,lambda}(a; n, n0)`: exact
//! rational functions in `q` ([`qpoly`]), multivariate Laurent polynomials
//! ([`laurent`]), symmetric functions on finite alphabets ([`symfun`]), a
//! brute-force constant-term oracle ([`ctengine`]), closed-form identities
//! and vanishing tests ([`identities`]), the subset-indexed recursion
//! ([`recursion`]), the partial-fraction splitting of the associated
//! rational function ([`splitting`]), and grid-style verification drivers
//! ([`verify`]).
//!
//! All arithmetic is exact over arbitrary-precision integers; every check
//! in [`verify`] is an equality in the field of rational functions in `q`.

pub mod ctengine;
mod error;
pub mod identities;
pub mod laurent;
pub mod qpoly;
pub mod recursion;
pub mod splitting;
pub mod symfun;
pub mod verify;

// pub use ctengine::{dyson_product, two_part_ct, DysonInstance, Evaluator};
pub use error::{Error, Result};
pub use qpoly::{poch_int, q_binomial, q_multinomial, QPoly, ScalarQ};
pub use symfun::Partition;
