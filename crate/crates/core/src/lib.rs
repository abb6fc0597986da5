//! Eigenvector empirical spectral distributions (VESD) of Wigner matrices.
//!
//! For a Hermitian matrix `W = U Λ U*` and a unit vector `x`, the VESD places
//! mass `|u_i* x|²` at each eigenvalue `λ_i`:
//!
//! ```text
//! H(t) = Σ_i |y_i|² · 1{λ_i ≤ t},     y = U* x
//! ```
//!
//! while the ordinary ESD places mass `1/n` at each eigenvalue. Both converge
//! to the semicircle law, but at different speeds. This crate samples Wigner
//! ensembles, builds both distributions, measures exact Kolmogorov distances to
//! the semicircle law, fits convergence rates, evaluates the Stieltjes-transform
//! smoothing inequality, and scans the bias of `E x*(W - z)^{-1} x`.
//!
//! The modules follow the pipeline:
//!
//! - [`ensemble`]: matrix and unit-vector sampling, truncation preprocessing
//! - [`spectral`]: eigendecomposition, weights `|y_i|²`, resolvent quadratic forms
//! - [`semicircle`]: the limit law (CDF, density, Stieltjes transform)
//! - [`empirical`]: step CDFs, empirical Stieltjes transforms, the bridge process
//! - [`metrics`]: Kolmogorov distances and rate fits
//! - [`berry_esseen`]: both sides of the smoothing inequality
//! - [`harness`]: seeded Monte Carlo sweeps, aggregation and persistence
//!
//! See `examples/` for one runnable program per capability.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod berry_esseen;
pub mod cli;
pub mod config;
pub mod empirical;
pub mod ensemble;
mod error;
pub mod harness;
pub mod metrics;
pub mod semicircle;
pub mod spectral;

pub use error::{Error, Result};

pub use num_complex::Complex64;
