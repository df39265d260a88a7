//! Coarse-to-fine pupil localization on grayscale eye images.
//!
//! The crate is organized around a small feed-forward CNN engine
//! (convolution, average pooling, one fully connected layer, a single
//! logistic output) and the machinery needed to train and run it as a
//! sliding-window detector:
//!
//! - [`imaging`]: grayscale rasters, PGM codec, bicubic rescaling, patch
//!   extraction.
//! - [`nn`]: network configuration, forward pass, backpropagation, batch
//!   gradient descent, finite-difference gradient checking, model codec.
//! - [`datagen`]: label parsing, training-sample generation, dataset
//!   splitting, and a synthetic eye-image generator with exact ground truth.
//! - [`pipeline`]: the two-stage detector (coarse sweep on a downscaled
//!   image, fine refinement on the original) plus single-stage and
//!   ray-refinement variants.
//! - [`eval`]: detection-rate curves, the layer cost model, filter/weight
//!   visualization maps.
//!
//! Everything here is pure computation over in-memory buffers; file and
//! thread handling live in the companion CLI crate. The crate is `no_std`
//! (with `alloc`) outside of tests.

// EXPERIMENT: std temporarily enabled
//#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod datagen;
pub mod error;
pub mod eval;
pub mod imaging;
pub mod nn;
pub mod pipeline;
pub mod rng;

pub use error::{Error, Result};
