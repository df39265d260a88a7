use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::nn::{compute_gradients, CnnModel, Gradients, TrainingSample};

/// Batch gradient descent hyperparameters. The defaults are the standard
/// regimen: ten epochs, batch 500, fixed learning rate 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainOptions {
    pub epochs: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub seed: u64,
}

impl Default for TrainOptions {
    fn default() -> Self {
        Self { epochs: 10, batch_size: 500, learning_rate: 1.0, seed: 0 }
    }
}

/// Trains by batch gradient descent and returns the final model plus the
/// mean per-sample loss of each epoch.
///
/// Samples are reshuffled every epoch with a generator seeded by
/// `opts.seed`; within a batch, gradients accumulate in the shuffled order
/// and the update applies their mean (a short final batch averages over its
/// actual size). `batch_size == 1` is stochastic gradient descent. The whole
/// procedure is bitwise deterministic for fixed inputs and seed, and fails
/// if any weight stops being finite.
pub fn train(
    model: CnnModel,
    samples: &[TrainingSample],
    opts: &TrainOptions,
) -> Result<(CnnModel, Vec<f64>)> {
    if samples.is_empty() {
        return Err(Error::EmptyInput("training sample set"));
    }
    if opts.epochs == 0 {
        return Err(Error::ZeroCount("epochs"));
    }
    if opts.batch_size == 0 {
        return Err(Error::ZeroCount("batch_size"));
    }
    let mut model = model;
    model.validate()?;
    let expected = model.config.input_size * model.config.input_size;
    for sample in samples {
        if sample.patch.len() != expected {
            return Err(Error::ShapeMismatch { expected, actual: sample.patch.len() });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut order: Vec<usize> = (0..samples.len()).collect();
    let mut history = Vec::with_capacity(opts.epochs);

    for _ in 0..opts.epochs {
        order.shuffle(&mut rng);
        let mut epoch_loss = 0.0;
        for batch in order.chunks(opts.batch_size) {
            let mut acc = Gradients::zeroed(&model.config);
            for &idx in batch {
                let (loss, grads) = compute_gradients(&model, &samples[idx])?;
                epoch_loss += loss;
                acc.add_assign(&grads);
            }
            acc.scale(1.0 / batch.len() as f64);
            model.apply_step(&acc, opts.learning_rate);
            if !model.all_finite() {
                return Err(Error::NonFiniteWeights);
            }
        }
        history.push(epoch_loss / samples.len() as f64);
    }
    Ok((model, history))
}
