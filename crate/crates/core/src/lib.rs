//! Exact machinery for intersection problems in linear codes.
//!
//! The crate constructs extended Reed-Solomon codes and their projective
//! systems (normal rational curves), computes exact Cayley-graph spectra from
//! hyperplane-avoidance geometry, evaluates Erdos-Ko-Rado-type properties and
//! bounds per code instance, runs exact maximum-clique searches for small
//! intersecting-family problems, and builds the translation schemes on
//! bivariate/trivariate homogeneous polynomials together with their exact
//! eigenvalue matrices.
//!
//! Everything is integer or rational arithmetic; there is no floating-point
//! eigensolver anywhere.

pub mod codes;
pub mod config;
pub mod ekr;
pub mod error;
mod group;
pub mod gf;
pub mod pg;
pub mod nrc;
pub mod schemes;
pub mod search;
pub mod spectral;

pub use config::Caps;
pub use error::{Error, Result};
