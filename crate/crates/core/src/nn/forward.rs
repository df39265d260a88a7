use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::nn::CnnModel;

/// Numerically stable logistic function; strictly inside (0, 1) for any
/// non-saturating finite input.
#[inline]
pub fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + libm::exp(-z))
    } else {
        let e = libm::exp(z);
        e / (1.0 + e)
    }
}

#[inline]
pub(crate) fn logistic_derivative(activated: f64) -> f64 {
    activated * (1.0 - activated)
}

/// Every intermediate of one forward pass, kept for backpropagation and
/// finite-difference checks.
#[derive(Debug, Clone)]
pub struct Activations {
    /// Convolution pre-activations, `num_filters * conv_side^2`.
    pub conv_preact: Vec<f64>,
    /// Convolution outputs after the logistic, same shape.
    pub conv: Vec<f64>,
    /// Pooled plane, `num_filters * pooled_side^2`, filter-major.
    pub pooled: Vec<f64>,
    /// Fully connected pre-activations, one per perceptron.
    pub fc_preact: Vec<f64>,
    /// Fully connected outputs after the logistic.
    pub hidden: Vec<f64>,
    /// Output perceptron pre-activation.
    pub out_preact: f64,
    /// Final rating in (0, 1).
    pub output: f64,
}

/// Rates one patch.
pub fn forward(model: &CnnModel, patch: &[f64]) -> Result<f64> {
    Ok(forward_full(model, patch)?.output)
}

/// Rates one patch, returning all intermediate activations.
///
/// Summation order is fixed: convolution cells accumulate kernel taps in
/// row-major kernel order, pooling sums its window row-major, and the dense
/// layers accumulate over ascending input index. The sliding-window sweep
/// reproduces these orders exactly, so both paths are bit-identical.
pub fn forward_full(model: &CnnModel, patch: &[f64]) -> Result<Activations> {
    let cfg = &model.config;
    let s = cfg.input_size;
    if patch.len() != s * s {
        return Err(Error::ShapeMismatch { expected: s * s, actual: patch.len() });
    }
    let k = cfg.kernel_size;
    let cs = cfg.conv_side();

    // Convolution (valid mode, stride 1) + bias. The kernel-tap loops are
    // outermost so the inner loop walks contiguous rows of both the patch
    // and the output plane.
    let mut conv_preact = vec![0.0f64; cfg.num_filters * cs * cs];
    for f in 0..cfg.num_filters {
        let plane = &mut conv_preact[f * cs * cs..(f + 1) * cs * cs];
        plane.fill(model.conv_biases[f]);
        let kernel = &model.conv_kernels[f * k * k..(f + 1) * k * k];
        for ky in 0..k {
            for kx in 0..k {
                let w = kernel[ky * k + kx];
                for y in 0..cs {
                    let src = &patch[(y + ky) * s + kx..(y + ky) * s + kx + cs];
                    let dst = &mut plane[y * cs..(y + 1) * cs];
                    for (d, &p) in dst.iter_mut().zip(src) {
                        *d += w * p;
                    }
                }
            }
        }
    }
    let conv: Vec<f64> = conv_preact.iter().map(|&z| logistic(z)).collect();

    let pooled = pool_planes(&conv, cfg.num_filters, cs, cfg.pool_window, cfg.pool_stride);

    // Fully connected layer.
    let fc_inputs = cfg.fc_inputs();
    let mut fc_preact = Vec::with_capacity(cfg.num_perceptrons);
    for p in 0..cfg.num_perceptrons {
        let weights = &model.fc_weights[p * fc_inputs..(p + 1) * fc_inputs];
        let mut acc = model.fc_biases[p];
        for (w, v) in weights.iter().zip(&pooled) {
            acc += w * v;
        }
        fc_preact.push(acc);
    }
    let hidden: Vec<f64> = fc_preact.iter().map(|&z| logistic(z)).collect();

    // Single output perceptron.
    let mut out_preact = model.out_bias;
    for (w, h) in model.out_weights.iter().zip(&hidden) {
        out_preact += w * h;
    }
    let output = logistic(out_preact);

    Ok(Activations { conv_preact, conv, pooled, fc_preact, hidden, out_preact, output })
}

/// Average-pools each filter plane. Shared with the sliding-window sweep.
pub(crate) fn pool_planes(
    conv: &[f64],
    filters: usize,
    conv_side: usize,
    window: usize,
    stride: usize,
) -> Vec<f64> {
    let ps = (conv_side - window) / stride + 1;
    let inv = 1.0 / (window * window) as f64;
    let mut pooled = Vec::with_capacity(filters * ps * ps);
    for f in 0..filters {
        let plane = &conv[f * conv_side * conv_side..(f + 1) * conv_side * conv_side];
        for py in 0..ps {
            for px in 0..ps {
                let mut sum = 0.0;
                for wy in 0..window {
                    let row = (py * stride + wy) * conv_side + px * stride;
                    for v in &plane[row..row + window] {
                        sum += v;
                    }
                }
                pooled.push(sum * inv);
            }
        }
    }
    pooled
}
