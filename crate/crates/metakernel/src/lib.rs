//! Kernel machines built from deformed coherent states.
//!
//! One deformation parameter α interpolates between a compact kernel
//! family (`AlphaSU2`), the flat Gaussian regime, and a hyperbolic family
//! (`AlphaSU11`). Each kernel is the overlap of two coherent states, so the
//! feature space carries a constant-curvature geometry (R = +4/k on the
//! compact side, −4/k on the hyperbolic side) that this crate both exploits
//! and verifies numerically.
//!
//! The pieces:
//!
//! - [`kernels`]: closed-form kernel evaluation and Gram matrices, with the
//!   real projection used by the classifier.
//! - [`coherent_states`]: explicit truncated Fock expansions whose overlaps
//!   serve as a brute-force oracle for the closed forms.
//! - [`geometry`]: feature-space metrics, Christoffel symbols, Ricci
//!   curvature (closed form and finite-difference), and revolution-surface
//!   meshes for plotting.
//! - [`svm`]: an SMO solver over precomputed Gram matrices, one-vs-rest
//!   multiclass, an independent KKT verifier, and JSON model serialization.
//! - [`datasets`]: seeded moons/circles generators, the embedded iris
//!   table, splitting, and the [0, π] scaling that keeps the periodic
//!   kernels out of their aliasing regime.
//! - [`tuning`]: grid search and learning curves.

pub mod coherent_states;
pub mod datasets;
pub mod error;
pub mod geometry;
pub mod kernels;
#[cfg(feature = "reference")]
pub mod reference;
mod rng;
pub mod svm;
pub mod tuning;

pub use error::{Error, ErrorKind, Result};
pub use kernels::{KernelFamily, KernelParams};
