//! Shared test oracles, kept deliberately naive and independent of the
//! library's optimized paths.

#![allow(dead_code)]

use pupil_core::imaging::GrayImage;
use pupil_core::nn::{CnnConfig, CnnModel, Gradients, TrainingSample};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Brute-force direct-summation forward pass: plain nested loops, scalar
/// accumulation, bias added last. Shares no code with the library.
pub fn naive_forward(model: &CnnModel, patch: &[f64]) -> f64 {
    let cfg = &model.config;
    let s = cfg.input_size;
    let k = cfg.kernel_size;
    let cs = s - k + 1;
    let ps = (cs - cfg.pool_window) / cfg.pool_stride + 1;

    let sigma = |z: f64| 1.0 / (1.0 + (-z).exp());

    let mut conv = vec![vec![vec![0.0f64; cs]; cs]; cfg.num_filters];
    for f in 0..cfg.num_filters {
        for y in 0..cs {
            for x in 0..cs {
                let mut acc = 0.0;
                for ky in 0..k {
                    for kx in 0..k {
                        acc += model.conv_kernels[(f * k + ky) * k + kx]
                            * patch[(y + ky) * s + (x + kx)];
                    }
                }
                conv[f][y][x] = sigma(acc + model.conv_biases[f]);
            }
        }
    }

    let mut pooled = vec![0.0f64; cfg.num_filters * ps * ps];
    for f in 0..cfg.num_filters {
        for py in 0..ps {
            for px in 0..ps {
                let mut acc = 0.0;
                for wy in 0..cfg.pool_window {
                    for wx in 0..cfg.pool_window {
                        acc += conv[f][py * cfg.pool_stride + wy][px * cfg.pool_stride + wx];
                    }
                }
                pooled[(f * ps + py) * ps + px] =
                    acc / (cfg.pool_window * cfg.pool_window) as f64;
            }
        }
    }

    let fc_inputs = cfg.fc_inputs();
    let mut out_acc = 0.0;
    for p in 0..cfg.num_perceptrons {
        let mut acc = 0.0;
        for (i, v) in pooled.iter().enumerate() {
            acc += model.fc_weights[p * fc_inputs + i] * v;
        }
        out_acc += model.out_weights[p] * sigma(acc + model.fc_biases[p]);
    }
    sigma(out_acc + model.out_bias)
}

/// Full-re-forward central differences over every parameter via the naive
/// oracle. Quadratic cost; only for small configs.
pub fn naive_fd_gradients(model: &CnnModel, sample: &TrainingSample, eps: f64) -> Gradients {
    let loss = |m: &CnnModel| {
        let diff = naive_forward(m, &sample.patch) - sample.target;
        0.5 * diff * diff
    };
    let mut grads = Gradients::zeroed(&model.config);

    macro_rules! fd_field {
        ($field:ident) => {
            for i in 0..model.$field.len() {
                let mut plus = model.clone();
                plus.$field[i] += eps;
                let mut minus = model.clone();
                minus.$field[i] -= eps;
                grads.$field[i] = (loss(&plus) - loss(&minus)) / (2.0 * eps);
            }
        };
    }
    fd_field!(conv_kernels);
    fd_field!(conv_biases);
    fd_field!(fc_weights);
    fd_field!(fc_biases);
    fd_field!(out_weights);
    let mut plus = model.clone();
    plus.out_bias += eps;
    let mut minus = model.clone();
    minus.out_bias -= eps;
    grads.out_bias = (loss(&plus) - loss(&minus)) / (2.0 * eps);
    grads
}

/// A tiny config for tests that compare against quadratic-cost oracles.
pub fn tiny_config() -> CnnConfig {
    CnnConfig {
        input_size: 10,
        kernel_size: 3,
        conv_stride: 1,
        num_filters: 2,
        pool_window: 2,
        pool_stride: 2,
        num_perceptrons: 3,
    }
}

pub fn random_patch(rng: &mut ChaCha8Rng, side: usize) -> Vec<f64> {
    (0..side * side).map(|_| rng.gen_range(0.0..1.0)).collect()
}

pub fn random_image(rng: &mut ChaCha8Rng, width: usize, height: usize) -> GrayImage {
    GrayImage::from_fn(width, height, |_, _| rng.gen_range(0.0..1.0))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Hand-built model whose rating decreases monotonically with window
/// brightness, so its sliding-window argmax lands on the darkest window.
/// Used as a stand-in detector where training would be overkill.
pub fn dark_window_model(config: CnnConfig) -> CnnModel {
    let mut model = CnnModel {
        config,
        conv_kernels: vec![0.0; config.num_filters * config.kernel_size * config.kernel_size],
        conv_biases: vec![0.0; config.num_filters],
        fc_weights: vec![-1.0; config.num_perceptrons * config.fc_inputs()],
        fc_biases: vec![0.55 * config.fc_inputs() as f64; config.num_perceptrons],
        out_weights: vec![1.0; config.num_perceptrons],
        out_bias: -(config.num_perceptrons as f64) / 2.0,
    };
    // Mean-brightness kernels.
    let k2 = (config.kernel_size * config.kernel_size) as f64;
    for w in &mut model.conv_kernels {
        *w = 1.0 / k2;
    }
    model
}
