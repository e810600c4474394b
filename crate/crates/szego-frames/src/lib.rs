//! Szegő-kernel representing system for the Hardy space H² on a ring grid.
//!
//! The library builds the grid of scaled roots of unity
//! `λ_{k,j} = (1 − 1/k)·e^{2πij/k}`, the normalized kernel family
//! `K̂_λ = (1 − |λ|²)^{1/2}/(1 − λ̄z)`, and everything needed to check, at
//! machine precision or with quantified margins, that this family is a
//! frame with respect to the mixed-norm space ℓ¹(ℓ²_k) — and therefore a
//! representing system: every H² function admits a series expansion in the
//! kernels with ring-blocked ℓ¹(ℓ²) coefficient control.
//!
//! Functionality is grouped by module:
//!
//! - [`hardy`] — truncated power series, inner products, dilation, Szegő
//!   kernel elements.
//! - [`grid`] — the ring grid, its normalization weights, flat indexing,
//!   and Blaschke-sum diagnostics.
//! - [`discrete`] — root-of-unity norms `‖f‖_k` and the dilated-norm
//!   inequalities they satisfy.
//! - [`frame`] — mixed-norm sequence spaces, the analysis map, empirical
//!   frame bounds, and the Duffin–Schaeffer failure demonstration.
//! - [`synthesis`] — the group-sparse synthesis solver that computes
//!   actual expansion coefficients for a target function.
//! - [`rng`] — the fixed linear-congruential generator used for
//!   reproducible test suites.
//! - [`io`] — JSON/CSV serialization schemas and run manifests.
//! - [`cli`] — the `szego-frames` command-line driver.
//!
//! Each runnable capability has a corresponding program under `examples/`;
//! start with `examples/decompose_poly.rs` for the end-to-end story.

pub mod cli;
pub mod discrete;
pub mod error;
pub mod frame;
pub mod grid;
pub mod hardy;
pub mod io;
pub mod rng;
pub mod synthesis;

pub use discrete::{
    discrete_norm, evaluate_at_roots, roots_of_unity, sup_bracket_upper_constant, sup_dilated_norm,
    sup_dilated_norm_argmax, verify_dilation_bound, verify_exactness, verify_sup_bracket,
    DiscreteNormReport,
};
pub use error::{Error, Result};
pub use frame::{
    analysis_map, analysis_upper_constant, ds_frame_divergence, duality_pair,
    frame_bounds_empirical, synthesis_partial_sum, AnalysisSequence, FrameBoundEstimate,
    MixedCoefficients,
};
pub use grid::{blaschke_partial_sum, flat_index, node, ring_index, Grid, GridNode, RingIndex};
pub use hardy::{
    kernel_function, normalized_kernel_function, szego_kernel_value, DiskPoint, HardyFunction,
};
pub use rng::Lcg64;
pub use synthesis::{
    build_synthesis_matrix, solve, verify_decomposition, Decomposition, DecompositionReport,
    SolveStatus, SolverConfig, SynthesisProblem,
};

/// Complex scalar used throughout: double-precision Cartesian form.
pub type Scalar = num_complex::Complex64;
