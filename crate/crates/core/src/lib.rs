//! Bezout matrices over exact fields and the constructions built on them:
//! common-zero counts, Hankel inverses, the Hermite root-location test,
//! determinantal implicitization of rational curves, quadrature-domain
//! boundaries, operator vessels and intersection indices of plane maps.

pub mod arith;
pub mod bezout;
pub mod braid;
pub mod cli;
pub mod error;
pub mod implicit;
pub mod json;
pub mod structured;
pub mod vessel;

pub use error::{Error, Result};
