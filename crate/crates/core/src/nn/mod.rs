//! Minimal feed-forward CNN engine: one convolution layer with logistic
//! activation, average pooling, one fully connected logistic layer, and a
//! single logistic output perceptron rating a patch in (0, 1).
//!
//! Training is plain batch gradient descent over the per-sample squared
//! error, with analytic gradients that are cross-checked against central
//! finite differences.

mod backward;
pub mod codec;
mod config;
mod forward;
mod gradcheck;
mod model;
pub mod presets;
mod train;

pub use backward::compute_gradients;
pub use config::CnnConfig;
pub use forward::{forward, forward_full, logistic, Activations};
pub use gradcheck::{finite_difference_gradients, gradient_check, max_relative_error};
pub use model::{init_model, CnnModel, Gradients, TrainingSample};
pub use train::{train, TrainOptions};
