use alloc::vec;

use crate::error::Result;
use crate::nn::forward::{forward_full, logistic_derivative};
use crate::nn::{CnnModel, Gradients, TrainingSample};

/// Loss and exact analytic gradients for one sample.
///
/// The loss is the per-sample squared error `0.5 * (rating - target)^2`;
/// gradients come from backpropagation through the logistic output, the
/// fully connected layer, average pooling (overlap-aware), and the
/// convolution.
pub fn compute_gradients(model: &CnnModel, sample: &TrainingSample) -> Result<(f64, Gradients)> {
    let cfg = &model.config;
    let acts = forward_full(model, &sample.patch)?;

    let diff = acts.output - sample.target;
    let loss = 0.5 * diff * diff;
    let mut grads = Gradients::zeroed(cfg);

    // Output perceptron.
    let d_out = diff * logistic_derivative(acts.output);
    grads.out_bias = d_out;
    for (g, h) in grads.out_weights.iter_mut().zip(&acts.hidden) {
        *g = d_out * h;
    }

    // Fully connected layer.
    let fc_inputs = cfg.fc_inputs();
    let mut d_pool = vec![0.0f64; fc_inputs];
    for p in 0..cfg.num_perceptrons {
        let d_h = d_out * model.out_weights[p] * logistic_derivative(acts.hidden[p]);
        grads.fc_biases[p] = d_h;
        let weights = &model.fc_weights[p * fc_inputs..(p + 1) * fc_inputs];
        let g_row = &mut grads.fc_weights[p * fc_inputs..(p + 1) * fc_inputs];
        for i in 0..fc_inputs {
            g_row[i] = d_h * acts.pooled[i];
            d_pool[i] += d_h * weights[i];
        }
    }

    // Average pooling: each pooled cell spreads its gradient uniformly over
    // its window. Windows overlap when pool_stride < pool_window, so the
    // conv-cell deltas accumulate.
    let cs = cfg.conv_side();
    let ps = cfg.pooled_side();
    let inv_window = 1.0 / (cfg.pool_window * cfg.pool_window) as f64;
    let s = cfg.input_size;
    let k = cfg.kernel_size;
    let mut d_conv = vec![0.0f64; cs * cs];
    for f in 0..cfg.num_filters {
        d_conv.fill(0.0);
        for py in 0..ps {
            for px in 0..ps {
                let d = d_pool[(f * ps + py) * ps + px] * inv_window;
                for wy in 0..cfg.pool_window {
                    let row = (py * cfg.pool_stride + wy) * cs + px * cfg.pool_stride;
                    for cell in &mut d_conv[row..row + cfg.pool_window] {
                        *cell += d;
                    }
                }
            }
        }

        // Through the conv logistic, then into kernel/bias gradients.
        let plane = &acts.conv[f * cs * cs..(f + 1) * cs * cs];
        let g_kernel = &mut grads.conv_kernels[f * k * k..(f + 1) * k * k];
        let mut g_bias = 0.0;
        for y in 0..cs {
            for x in 0..cs {
                let d_pre = d_conv[y * cs + x] * logistic_derivative(plane[y * cs + x]);
                if d_pre == 0.0 {
                    continue;
                }
                g_bias += d_pre;
                for ky in 0..k {
                    let src = &sample.patch[(y + ky) * s + x..(y + ky) * s + x + k];
                    let dst = &mut g_kernel[ky * k..(ky + 1) * k];
                    for (g, &p) in dst.iter_mut().zip(src) {
                        *g += d_pre * p;
                    }
                }
            }
        }
        grads.conv_biases[f] = g_bias;
    }

    Ok((loss, grads))
}
