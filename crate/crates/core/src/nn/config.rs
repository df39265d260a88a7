use alloc::format;

use crate::error::{Error, Result};

/// Architecture hyperparameters for one network.
///
/// The convolution runs in valid mode (no padding) with stride 1; pooling
/// windows may overlap when `pool_stride < pool_window`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CnnConfig {
    /// Side of the square input patch, in pixels.
    pub input_size: usize,
    /// Side of the square convolution kernels.
    pub kernel_size: usize,
    /// Convolution stride; always 1 in this architecture family.
    pub conv_stride: usize,
    /// Number of convolution filters.
    pub num_filters: usize,
    /// Side of the square average-pooling window.
    pub pool_window: usize,
    /// Pooling stride.
    pub pool_stride: usize,
    /// Number of perceptrons in the fully connected layer.
    pub num_perceptrons: usize,
}

impl CnnConfig {
    pub fn validate(&self) -> Result<()> {
        let all_counts = [
            self.input_size,
            self.kernel_size,
            self.conv_stride,
            self.num_filters,
            self.pool_window,
            self.pool_stride,
            self.num_perceptrons,
        ];
        if all_counts.iter().any(|&c| c == 0) {
            return Err(Error::InvalidConfig(format!("zero-valued field in {self:?}")));
        }
        if self.conv_stride != 1 {
            return Err(Error::InvalidConfig(format!(
                "conv_stride {} unsupported (must be 1)",
                self.conv_stride
            )));
        }
        if self.kernel_size > self.input_size {
            return Err(Error::InvalidConfig(format!(
                "kernel {} larger than input {}",
                self.kernel_size, self.input_size
            )));
        }
        if self.pool_window > self.conv_side() {
            return Err(Error::InvalidConfig(format!(
                "pool window {} larger than conv output {}",
                self.pool_window,
                self.conv_side()
            )));
        }
        Ok(())
    }

    /// Side of the convolution output plane: `input - kernel + 1`.
    pub fn conv_side(&self) -> usize {
        self.input_size - self.kernel_size + 1
    }

    /// Side of the pooled plane: `(conv_side - pool_window) / pool_stride + 1`.
    pub fn pooled_side(&self) -> usize {
        (self.conv_side() - self.pool_window) / self.pool_stride + 1
    }

    /// Inputs per fully connected perceptron: all pooled cells of all filters.
    pub fn fc_inputs(&self) -> usize {
        self.num_filters * self.pooled_side() * self.pooled_side()
    }

    /// Total number of weights and biases.
    pub fn param_count(&self) -> usize {
        let k2 = self.kernel_size * self.kernel_size;
        self.num_filters * k2                        // conv kernels
            + self.num_filters                       // conv biases
            + self.num_perceptrons * self.fc_inputs() // fc weights
            + self.num_perceptrons                   // fc biases
            + self.num_perceptrons                   // output weights
            + 1 // output bias
    }
}
