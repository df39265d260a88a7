//! Layer cost model.
//!
//! [`flop_accounting`] reproduces the published convention for this
//! architecture family exactly as printed, including its pooling term of
//! `kernel_area * filters` (which is not the arithmetic cost of pooling
//! the stated shapes). For the single-stage network on a 96x72 image it
//! yields conv 115200, pool 3200, fc 1600, out 8, total 120008 over 3456
//! runs. [`mac_accounting`] reports true multiply-accumulate counts for
//! benchmarking; the gap between the two is the measured size of the
//! convention's inconsistency.

use crate::error::Result;
use crate::nn::CnnConfig;

/// Per-run cost split plus the sliding-window totals for one image size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlopBreakdown {
    pub conv: u64,
    pub pool: u64,
    pub fc: u64,
    pub out: u64,
    /// conv + pool + fc + out.
    pub total: u64,
    /// Stride-1 window positions on the given image.
    pub runs_per_image: u64,
    /// total * runs_per_image.
    pub image_total: u64,
}

/// Cost per the published convention:
/// conv = conv_area * kernel_area * filters, pool = kernel_area * filters,
/// fc = pooled_area * filters * perceptrons, out = filters.
pub fn flop_accounting(config: &CnnConfig, image: (usize, usize)) -> Result<FlopBreakdown> {
    config.validate()?;
    let conv_area = (config.conv_side() * config.conv_side()) as u64;
    let kernel_area = (config.kernel_size * config.kernel_size) as u64;
    let pooled_area = (config.pooled_side() * config.pooled_side()) as u64;
    let filters = config.num_filters as u64;
    let perceptrons = config.num_perceptrons as u64;

    let conv = conv_area * kernel_area * filters;
    let pool = kernel_area * filters;
    let fc = pooled_area * filters * perceptrons;
    let out = filters;
    finish(config, image, conv, pool, fc, out)
}

/// True multiply-accumulate counts for the same layers: convolution taps,
/// pooling additions, dense products.
pub fn mac_accounting(config: &CnnConfig, image: (usize, usize)) -> Result<FlopBreakdown> {
    config.validate()?;
    let conv_area = (config.conv_side() * config.conv_side()) as u64;
    let kernel_area = (config.kernel_size * config.kernel_size) as u64;
    let pooled_area = (config.pooled_side() * config.pooled_side()) as u64;
    let pool_window_area = (config.pool_window * config.pool_window) as u64;
    let filters = config.num_filters as u64;
    let perceptrons = config.num_perceptrons as u64;

    let conv = conv_area * kernel_area * filters;
    let pool = pooled_area * pool_window_area * filters;
    let fc = pooled_area * filters * perceptrons;
    let out = perceptrons;
    finish(config, image, conv, pool, fc, out)
}

fn finish(
    config: &CnnConfig,
    image: (usize, usize),
    conv: u64,
    pool: u64,
    fc: u64,
    out: u64,
) -> Result<FlopBreakdown> {
    let (w, h) = image;
    let s = config.input_size;
    if w < s || h < s {
        return Err(crate::error::Error::ImageTooSmall { width: w, height: h, needed: s });
    }
    let runs_per_image = ((w - s + 1) * (h - s + 1)) as u64;
    let total = conv + pool + fc + out;
    Ok(FlopBreakdown {
        conv,
        pool,
        fc,
        out,
        total,
        runs_per_image,
        image_total: total * runs_per_image,
    })
}
