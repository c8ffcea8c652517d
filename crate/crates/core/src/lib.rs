//! Explicit solution families of the Kadomtsev-Petviashvili equation
//!
//!   d/dx [ f_t + f_xxx + 6 f f_x ] + 3 alpha^2 f_yy = 0,   alpha^2 = 1,
//!
//! evaluated from their determinant closed forms: multi-solitons, harmonic
//! breathers (trigonometric family), solitonic dipoles (hyperbolic family)
//! and their nonlinear superpositions. On top of the pointwise kernel the
//! crate provides display regularization, singular-curve geometry, the
//! physical-layer velocity conditions, finite-difference verification that
//! sampled fields satisfy the equation, and detection of the short-lived
//! rogue-wave transient produced by colliding dipole troughs.
//!
//! Grid-level operations are data-parallel via rayon when the default
//! `parallel` feature is enabled and fall back to sequential loops without
//! it; results are bit-identical either way.

pub mod error;
pub mod exec;
pub mod field;
pub mod geometry;
pub mod grid;
pub mod kinematics;
pub mod matrix;
pub mod phase;
pub mod regularize;
pub mod rogue;
pub mod solution;
pub mod verification;

pub use error::{Error, Result};
pub use field::{field_f, field_f_fd, field_f_grid, field_f_x, field_f_x_fd};
pub use grid::{GridSpec, ScalarField};
pub use solution::{EvalPoint, Family, SolitonMode, SolutionSpec, SpectralMode};
