//! Band selection for hyperspectral images driven by mutual information
//! with the ground-truth map, using either spectral MI or GLCM texture
//! features to order the candidate bands, plus a one-vs-one SMO SVM to
//! measure what the retained bands are worth.
//!
//! Module map:
//!
//! - [`dataset`]: cube and ground-truth I/O, synthetic data, stratified split
//! - [`glcm`]: quantization, co-occurrence matrices, texture features
//! - [`mi`]: entropy and mutual information
//! - [`selection`]: the greedy selection filters
//! - [`classify`]: SVM training, prediction and evaluation
//! - [`experiment`]: threshold × band-count sweeps and the batch runner
//! - [`cli`]: the `bandsel` command line

pub mod classify;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod experiment;
pub mod glcm;
pub mod mi;
pub mod published;
pub mod selection;
mod util;

pub use error::{Error, Result};
