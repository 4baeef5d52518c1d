//! Uniform experimental designs over the unit cube.
//!
//! Designs are scored by the squared centered L2-discrepancy
//! ([`discrepancy`]). Construction starts with threshold accepting over
//! U-type lattice designs ([`lattice`]) and continues with coordinate-descent
//! refiners over the continuous cube ([`optimize`]). Latin hypercube samplers
//! ([`sampling`]), Kriging surrogates ([`surrogate`]) and the wood and
//! camelback responses ([`benchfns`]) support comparing designs by
//! prediction error.

pub mod benchfns;
pub mod discrepancy;
pub mod error;
pub mod lattice;
pub mod optimize;
mod rng;
pub mod sampling;
pub mod surrogate;

pub use discrepancy::{cd2, cd2_gradient, zero_gradient_solve, DesignMatrix, DiscrepancyCache, GradientMatrix};
pub use error::{Error, Result};
pub use lattice::{embed, random_utype, ta_optimize, TaConfig, UTypeDesign};
pub use optimize::{refine, refine_pipeline, Algorithm, RefineResult, RefinerConfig};

/// Library version recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
