//! Central-difference gradient verification.
//!
//! `finite_difference_gradients` perturbs every weight and bias by ±epsilon
//! and differentiates the loss numerically. It never touches the
//! backpropagation code: each perturbed loss is evaluated forward-only,
//! starting from the cached pre-activations of the unperturbed pass. All
//! pre-activations are linear in any single parameter, so adding the
//! epsilon-scaled input term reproduces a full re-forward exactly (up to
//! rounding), while costing only the perturbed filter's plane instead of
//! the whole network.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::nn::forward::{forward_full, logistic, pool_planes, Activations};
use crate::nn::{compute_gradients, CnnModel, Gradients, TrainingSample};

/// Numerical gradients of the squared-error loss via central differences.
pub fn finite_difference_gradients(
    model: &CnnModel,
    sample: &TrainingSample,
    epsilon: f64,
) -> Result<Gradients> {
    let acts = forward_full(model, &sample.patch)?;
    let cfg = &model.config;
    let k = cfg.kernel_size;
    let s = cfg.input_size;
    let cs = cfg.conv_side();
    let target = sample.target;
    let mut grads = Gradients::zeroed(cfg);
    let mut scratch = ConvScratch::new(cs);

    // Convolution kernels: the pre-activation of cell (y, x) in filter f
    // shifts by eps * patch[y + ky, x + kx].
    for f in 0..cfg.num_filters {
        for ky in 0..k {
            for kx in 0..k {
                let mut losses = [0.0f64; 2];
                for (side, signed) in [epsilon, -epsilon].into_iter().enumerate() {
                    let plane = scratch.recompute(&acts, f, cs, |y, x| {
                        signed * sample.patch[(y + ky) * s + (x + kx)]
                    });
                    losses[side] = loss_from_filter_plane(model, &acts, f, plane, target);
                }
                grads.conv_kernels[(f * k + ky) * k + kx] =
                    (losses[0] - losses[1]) / (2.0 * epsilon);
            }
        }
        // Convolution bias: a constant shift of the whole plane.
        let mut losses = [0.0f64; 2];
        for (side, signed) in [epsilon, -epsilon].into_iter().enumerate() {
            let plane = scratch.recompute(&acts, f, cs, |_, _| signed);
            losses[side] = loss_from_filter_plane(model, &acts, f, plane, target);
        }
        grads.conv_biases[f] = (losses[0] - losses[1]) / (2.0 * epsilon);
    }

    // Fully connected weights and biases: only one perceptron's
    // pre-activation moves.
    let fc_inputs = cfg.fc_inputs();
    for p in 0..cfg.num_perceptrons {
        for i in 0..fc_inputs {
            let shift = epsilon * acts.pooled[i];
            grads.fc_weights[p * fc_inputs + i] = central(
                loss_from_fc_shift(model, &acts, p, shift, target),
                loss_from_fc_shift(model, &acts, p, -shift, target),
                epsilon,
            );
        }
        grads.fc_biases[p] = central(
            loss_from_fc_shift(model, &acts, p, epsilon, target),
            loss_from_fc_shift(model, &acts, p, -epsilon, target),
            epsilon,
        );
    }

    // Output weights and bias: only the output pre-activation moves.
    for p in 0..cfg.num_perceptrons {
        let shift = epsilon * acts.hidden[p];
        grads.out_weights[p] = central(
            loss_from_out_shift(&acts, shift, target),
            loss_from_out_shift(&acts, -shift, target),
            epsilon,
        );
    }
    grads.out_bias = central(
        loss_from_out_shift(&acts, epsilon, target),
        loss_from_out_shift(&acts, -epsilon, target),
        epsilon,
    );

    Ok(grads)
}

/// Max over all parameters of the relative disagreement between analytic
/// and numerical gradients: `|a - n| / max(|a|, |n|, 1e-12)`.
pub fn max_relative_error(analytic: &Gradients, numeric: &Gradients) -> f64 {
    let mut worst = 0.0f64;
    for (a, n) in analytic.param_iter().zip(numeric.param_iter()) {
        let rel = libm::fabs(a - n) / libm::fabs(a).max(libm::fabs(n)).max(1e-12);
        worst = worst.max(rel);
    }
    worst
}

/// Runs backpropagation and central differences on one sample and reports
/// the worst relative disagreement over all parameters.
pub fn gradient_check(model: &CnnModel, sample: &TrainingSample, epsilon: f64) -> Result<f64> {
    let (_, analytic) = compute_gradients(model, sample)?;
    let numeric = finite_difference_gradients(model, sample, epsilon)?;
    Ok(max_relative_error(&analytic, &numeric))
}

#[inline]
fn central(loss_plus: f64, loss_minus: f64, epsilon: f64) -> f64 {
    (loss_plus - loss_minus) / (2.0 * epsilon)
}

struct ConvScratch {
    plane: Vec<f64>,
}

impl ConvScratch {
    fn new(conv_side: usize) -> Self {
        Self { plane: vec![0.0; conv_side * conv_side] }
    }

    /// Recomputes filter `f`'s activated plane with the pre-activation of
    /// cell (y, x) shifted by `delta(y, x)`.
    fn recompute(
        &mut self,
        acts: &Activations,
        f: usize,
        conv_side: usize,
        delta: impl Fn(usize, usize) -> f64,
    ) -> &[f64] {
        let base = f * conv_side * conv_side;
        for y in 0..conv_side {
            for x in 0..conv_side {
                let idx = y * conv_side + x;
                self.plane[idx] = logistic(acts.conv_preact[base + idx] + delta(y, x));
            }
        }
        &self.plane
    }
}

/// Loss after replacing filter `f`'s activated plane, propagating the
/// pooled deltas through the dense layers.
fn loss_from_filter_plane(
    model: &CnnModel,
    acts: &Activations,
    f: usize,
    plane: &[f64],
    target: f64,
) -> f64 {
    let cfg = &model.config;
    let cs = cfg.conv_side();
    let ps = cfg.pooled_side();
    let pooled_f = pool_planes(plane, 1, cs, cfg.pool_window, cfg.pool_stride);

    let fc_inputs = cfg.fc_inputs();
    let filter_base = f * ps * ps;
    let mut out_preact = model.out_bias;
    for p in 0..cfg.num_perceptrons {
        let row = p * fc_inputs + filter_base;
        let weights = &model.fc_weights[row..row + ps * ps];
        let mut zh = acts.fc_preact[p];
        for (j, &pv) in pooled_f.iter().enumerate() {
            zh += weights[j] * (pv - acts.pooled[filter_base + j]);
        }
        out_preact += model.out_weights[p] * logistic(zh);
    }
    squared_error(logistic(out_preact), target)
}

fn loss_from_fc_shift(
    model: &CnnModel,
    acts: &Activations,
    p: usize,
    shift: f64,
    target: f64,
) -> f64 {
    let hidden_p = logistic(acts.fc_preact[p] + shift);
    let out_preact = acts.out_preact + model.out_weights[p] * (hidden_p - acts.hidden[p]);
    squared_error(logistic(out_preact), target)
}

fn loss_from_out_shift(acts: &Activations, shift: f64, target: f64) -> f64 {
    squared_error(logistic(acts.out_preact + shift), target)
}

#[inline]
fn squared_error(output: f64, target: f64) -> f64 {
    let diff = output - target;
    0.5 * diff * diff
}
