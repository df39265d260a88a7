//! Filter and weight visualization.
//!
//! For every convolution filter: an intensity map (weights normalized to
//! `[0, 1]`, then bicubically upscaled) and a sign map (white for
//! non-negative, black for negative, upscaled by pixel replication so it
//! stays binary). For every perceptron/filter pair: the fully connected
//! weight slice rendered over the pooled grid the same way as the
//! intensity maps.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Result;
use crate::imaging::{bicubic_resize, GrayImage};
use crate::nn::CnnModel;

/// Renders all visualization maps for a model, named as they should be
/// written to disk: `filter_<i>.pgm`, `sign_<i>.pgm`, `fc_p<j>_f<i>.pgm`.
/// Emits `2 * filters + filters * perceptrons` images.
pub fn filter_maps(model: &CnnModel, scale: usize) -> Result<Vec<(String, GrayImage)>> {
    model.validate()?;
    let cfg = &model.config;
    let k = cfg.kernel_size;
    let ps = cfg.pooled_side();
    let mut maps = Vec::with_capacity(2 * cfg.num_filters + cfg.num_filters * cfg.num_perceptrons);

    for f in 0..cfg.num_filters {
        let kernel = &model.conv_kernels[f * k * k..(f + 1) * k * k];
        maps.push((format!("filter_{f}.pgm"), upscaled_intensity(kernel, k, scale)?));
        let sign = GrayImage::from_fn(k, k, |x, y| {
            if kernel[y * k + x] < 0.0 {
                0.0
            } else {
                1.0
            }
        });
        maps.push((format!("sign_{f}.pgm"), upscale_nearest(&sign, scale)));
    }

    let fc_inputs = cfg.fc_inputs();
    for p in 0..cfg.num_perceptrons {
        for f in 0..cfg.num_filters {
            let base = p * fc_inputs + f * ps * ps;
            let slice = &model.fc_weights[base..base + ps * ps];
            maps.push((format!("fc_p{p}_f{f}.pgm"), upscaled_intensity(slice, ps, scale)?));
        }
    }
    Ok(maps)
}

/// Min-max normalizes a square weight grid into `[0, 1]` (an all-equal
/// grid renders mid-gray) and upscales it bicubically.
fn upscaled_intensity(weights: &[f64], side: usize, scale: usize) -> Result<GrayImage> {
    let lo = weights.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let flat = GrayImage::from_fn(side, side, |x, y| {
        if hi > lo {
            (weights[y * side + x] - lo) / (hi - lo)
        } else {
            0.5
        }
    });
    if scale <= 1 {
        return Ok(flat);
    }
    bicubic_resize(&flat, scale as f64)
}

fn upscale_nearest(image: &GrayImage, scale: usize) -> GrayImage {
    if scale <= 1 {
        return image.clone();
    }
    GrayImage::from_fn(image.width() * scale, image.height() * scale, |x, y| {
        image.get(x / scale, y / scale)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::{init_model, presets};

    #[test]
    fn map_counts_and_sizes() {
        let model = init_model(presets::by_name("C_K8P8").unwrap(), 6).unwrap();
        let maps = filter_maps(&model, 20).unwrap();
        assert_eq!(maps.len(), 8 * 2 + 8 * 8);
        let (name, img) = &maps[0];
        assert_eq!(name, "filter_0.pgm");
        assert_eq!((img.width(), img.height()), (100, 100));
    }

    #[test]
    fn degenerate_filter_renders_mid_gray() {
        let mut model = init_model(presets::by_name("C_K4P8").unwrap(), 6).unwrap();
        for w in &mut model.conv_kernels[..25] {
            *w = 0.25;
        }
        let maps = filter_maps(&model, 1).unwrap();
        assert!(maps[0].1.pixels().iter().all(|&v| v == 0.5));
    }

    #[test]
    fn sign_map_counts_negative_pixels() {
        let mut model = init_model(presets::by_name("C_K4P8").unwrap(), 6).unwrap();
        for w in &mut model.conv_kernels[..25] {
            *w = 0.1;
        }
        model.conv_kernels[7] = -0.2;
        let maps = filter_maps(&model, 1).unwrap();
        let sign = &maps[1].1;
        assert_eq!(maps[1].0, "sign_0.pgm");
        let black = sign.pixels().iter().filter(|&&v| v == 0.0).count();
        assert_eq!(black, 1);
    }
}
