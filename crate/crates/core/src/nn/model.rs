use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::nn::CnnConfig;

/// Learned weights for one network.
///
/// Storage order is fixed and shared with the serialized form: convolution
/// kernels are filter-major then row-major, fully connected weights are
/// perceptron-major with inputs indexed filter-major over the pooled grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CnnModel {
    pub config: CnnConfig,
    /// `num_filters * kernel_size^2`.
    pub conv_kernels: Vec<f64>,
    /// One bias per filter.
    pub conv_biases: Vec<f64>,
    /// `num_perceptrons * fc_inputs`.
    pub fc_weights: Vec<f64>,
    /// One bias per perceptron.
    pub fc_biases: Vec<f64>,
    /// One output weight per perceptron.
    pub out_weights: Vec<f64>,
    pub out_bias: f64,
}

/// One partial derivative per model weight and bias, same layout as
/// [`CnnModel`].
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub conv_kernels: Vec<f64>,
    pub conv_biases: Vec<f64>,
    pub fc_weights: Vec<f64>,
    pub fc_biases: Vec<f64>,
    pub out_weights: Vec<f64>,
    pub out_bias: f64,
}

/// A fixed-size patch with a binary pupil-center label.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingSample {
    /// `input_size^2` intensities in `[0, 1]`, row-major.
    pub patch: Vec<f64>,
    /// 1.0 for a valid pupil center, 0.0 otherwise.
    pub target: f64,
}

impl TrainingSample {
    pub fn new(patch: Vec<f64>, valid: bool) -> Self {
        Self { patch, target: if valid { 1.0 } else { 0.0 } }
    }
}

/// Draws initial weights uniformly from the symmetric per-layer range
/// `[-sqrt(6 / (fan_in + fan_out)), +sqrt(6 / (fan_in + fan_out))]`; biases
/// start at zero. Deterministic for a given seed: kernels are drawn first
/// in storage order, then fully connected weights, then output weights.
pub fn init_model(config: CnnConfig, seed: u64) -> Result<CnnModel> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k2 = config.kernel_size * config.kernel_size;
    let filters = config.num_filters;
    let perceptrons = config.num_perceptrons;
    let fc_inputs = config.fc_inputs();

    let conv_limit = glorot_limit(k2, k2 * filters);
    let fc_limit = glorot_limit(fc_inputs, perceptrons);
    let out_limit = glorot_limit(perceptrons, 1);

    let mut draw = |count: usize, limit: f64| -> Vec<f64> {
        (0..count).map(|_| rng.gen_range(-limit..=limit)).collect()
    };

    Ok(CnnModel {
        config,
        conv_kernels: draw(filters * k2, conv_limit),
        conv_biases: vec![0.0; filters],
        fc_weights: draw(perceptrons * fc_inputs, fc_limit),
        fc_biases: vec![0.0; perceptrons],
        out_weights: draw(perceptrons, out_limit),
        out_bias: 0.0,
    })
}

fn glorot_limit(fan_in: usize, fan_out: usize) -> f64 {
    // TEMPORARY experiment knob, remove before release.
    let scale = std::env::var("INIT_SCALE")
        .ok()
        .and_then(|v| v.parse::<f64>().ok())
        .unwrap_or(1.0);
    scale * libm::sqrt(6.0 / (fan_in + fan_out) as f64)
}

impl CnnModel {
    /// Checks weight-buffer lengths against the config and that every
    /// weight is finite.
    pub fn validate(&self) -> Result<()> {
        self.config.validate()?;
        let cfg = &self.config;
        let k2 = cfg.kernel_size * cfg.kernel_size;
        let dims_ok = self.conv_kernels.len() == cfg.num_filters * k2
            && self.conv_biases.len() == cfg.num_filters
            && self.fc_weights.len() == cfg.num_perceptrons * cfg.fc_inputs()
            && self.fc_biases.len() == cfg.num_perceptrons
            && self.out_weights.len() == cfg.num_perceptrons;
        if !dims_ok {
            return Err(Error::ModelDimensionMismatch);
        }
        if !self.all_finite() {
            return Err(Error::NonFiniteWeights);
        }
        Ok(())
    }

    pub fn all_finite(&self) -> bool {
        self.param_iter().all(f64::is_finite)
    }

    pub fn param_count(&self) -> usize {
        self.config.param_count()
    }

    /// All parameters in storage order.
    pub fn param_iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.conv_kernels
            .iter()
            .chain(&self.conv_biases)
            .chain(&self.fc_weights)
            .chain(&self.fc_biases)
            .chain(&self.out_weights)
            .copied()
            .chain(core::iter::once(self.out_bias))
    }

    /// Gradient-descent step: `w <- w - rate * g` over every parameter.
    pub fn apply_step(&mut self, grads: &Gradients, rate: f64) {
        for (w, g) in self.conv_kernels.iter_mut().zip(&grads.conv_kernels) {
            *w -= rate * g;
        }
        for (w, g) in self.conv_biases.iter_mut().zip(&grads.conv_biases) {
            *w -= rate * g;
        }
        for (w, g) in self.fc_weights.iter_mut().zip(&grads.fc_weights) {
            *w -= rate * g;
        }
        for (w, g) in self.fc_biases.iter_mut().zip(&grads.fc_biases) {
            *w -= rate * g;
        }
        for (w, g) in self.out_weights.iter_mut().zip(&grads.out_weights) {
            *w -= rate * g;
        }
        self.out_bias -= rate * grads.out_bias;
    }
}

impl Gradients {
    pub fn zeroed(config: &CnnConfig) -> Self {
        let k2 = config.kernel_size * config.kernel_size;
        Self {
            conv_kernels: vec![0.0; config.num_filters * k2],
            conv_biases: vec![0.0; config.num_filters],
            fc_weights: vec![0.0; config.num_perceptrons * config.fc_inputs()],
            fc_biases: vec![0.0; config.num_perceptrons],
            out_weights: vec![0.0; config.num_perceptrons],
            out_bias: 0.0,
        }
    }

    pub fn param_iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.conv_kernels
            .iter()
            .chain(&self.conv_biases)
            .chain(&self.fc_weights)
            .chain(&self.fc_biases)
            .chain(&self.out_weights)
            .copied()
            .chain(core::iter::once(self.out_bias))
    }

    /// Elementwise accumulate, in storage order.
    pub fn add_assign(&mut self, other: &Gradients) {
        for (a, b) in self.conv_kernels.iter_mut().zip(&other.conv_kernels) {
            *a += b;
        }
        for (a, b) in self.conv_biases.iter_mut().zip(&other.conv_biases) {
            *a += b;
        }
        for (a, b) in self.fc_weights.iter_mut().zip(&other.fc_weights) {
            *a += b;
        }
        for (a, b) in self.fc_biases.iter_mut().zip(&other.fc_biases) {
            *a += b;
        }
        for (a, b) in self.out_weights.iter_mut().zip(&other.out_weights) {
            *a += b;
        }
        self.out_bias += other.out_bias;
    }

    pub fn scale(&mut self, factor: f64) {
        for v in self
            .conv_kernels
            .iter_mut()
            .chain(&mut self.conv_biases)
            .chain(&mut self.fc_weights)
            .chain(&mut self.fc_biases)
            .chain(&mut self.out_weights)
        {
            *v *= factor;
        }
        self.out_bias *= factor;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::presets;

    #[test]
    fn init_is_seed_deterministic() {
        let cfg = presets::by_name("C_K8P8").unwrap();
        let a = init_model(cfg, 1).unwrap();
        let b = init_model(cfg, 1).unwrap();
        assert_eq!(a, b);
        let c = init_model(cfg, 2).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn init_rejects_invalid_config() {
        let cfg = CnnConfig {
            input_size: 4,
            kernel_size: 5,
            conv_stride: 1,
            num_filters: 2,
            pool_window: 1,
            pool_stride: 1,
            num_perceptrons: 2,
        };
        assert!(init_model(cfg, 0).is_err());
    }

    #[test]
    fn init_biases_zero_weights_bounded() {
        let cfg = presets::by_name("C_K8P16").unwrap();
        let m = init_model(cfg, 3).unwrap();
        assert!(m.conv_biases.iter().all(|&b| b == 0.0));
        assert!(m.fc_biases.iter().all(|&b| b == 0.0));
        assert_eq!(m.out_bias, 0.0);
        let conv_limit = libm::sqrt(6.0 / (25.0 + 25.0 * 8.0));
        assert!(m.conv_kernels.iter().all(|w| w.abs() <= conv_limit));
        assert_eq!(m.param_iter().count(), cfg.param_count());
    }
}
