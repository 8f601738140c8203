//! Numerics for the colored Jones polynomial of the figure-eight knot
//! evaluated at exp(xi/N), its large-N asymptotics, and the associated
//! hyperbolic invariants (Reidemeister torsion, Chern-Simons, Riley
//! representations).

pub mod asymptotics_verifier;
pub mod error;
pub mod figure_eight_core;
mod mp;
pub mod quantum_dilog;
pub mod region_atlas;
pub mod special_functions;
pub mod topology_invariants;

pub use error::{Error, Result};
