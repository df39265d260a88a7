//! Named network configurations.
//!
//! `C_*` presets rate 24x24 windows of the downscaled image (5x5 kernels,
//! 4x4 pooling at stride 4). `F_K8P8` rates 89x89 windows of the original
//! image (20x20 kernels, 5x5 pooling at stride 5). `S_K8P8` is the
//! single-stage variant: 25x25 windows of the downscaled image with 20x20
//! kernels and overlapping 2x2 pooling at stride 1, so its fully connected
//! layer sees the same 5x5 pooled grid as the coarse presets.

use super::CnnConfig;

/// `K<n>P<k>`: n convolution filters, k fully connected perceptrons.
pub const PRESET_NAMES: [&str; 6] =
    ["C_K4P8", "C_K8P8", "C_K8P16", "C_K16P32", "F_K8P8", "S_K8P8"];

/// Looks up a preset by name. Names are case-sensitive.
pub fn by_name(name: &str) -> Option<CnnConfig> {
    let cfg = match name {
        "C_K4P8" => coarse(4, 8),
        "C_K8P8" => coarse(8, 8),
        "C_K8P16" => coarse(8, 16),
        "C_K16P32" => coarse(16, 32),
        "F_K8P8" => CnnConfig {
            input_size: 89,
            kernel_size: 20,
            conv_stride: 1,
            num_filters: 8,
            pool_window: 5,
            pool_stride: 5,
            num_perceptrons: 8,
        },
        "S_K8P8" => CnnConfig {
            input_size: 25,
            kernel_size: 20,
            conv_stride: 1,
            num_filters: 8,
            pool_window: 2,
            pool_stride: 1,
            num_perceptrons: 8,
        },
        _ => return None,
    };
    Some(cfg)
}

fn coarse(filters: usize, perceptrons: usize) -> CnnConfig {
    CnnConfig {
        input_size: 24,
        kernel_size: 5,
        conv_stride: 1,
        num_filters: filters,
        pool_window: 4,
        pool_stride: 4,
        num_perceptrons: perceptrons,
    }
}
