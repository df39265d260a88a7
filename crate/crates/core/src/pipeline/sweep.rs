//! Sliding-window evaluation.
//!
//! Scoring every stride-1 window with an independent forward pass would
//! redo the convolution for massively overlapping patches, so the sweep
//! computes each filter's activation plane once over the whole image and
//! then pools/classifies per window from the shared planes. Summation
//! orders match `forward` exactly, making a window's sweep score
//! bit-identical to `forward` on the extracted patch.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::imaging::GrayImage;
use crate::nn::{logistic, CnnModel};

/// Per-filter convolution activation planes over a full image.
pub struct ConvPlanes {
    /// Plane width: `image_width - kernel_size + 1`.
    pub width: usize,
    /// Plane height: `image_height - kernel_size + 1`.
    pub height: usize,
    planes: Vec<f64>,
}

impl ConvPlanes {
    /// Convolves the whole image with every filter and applies the
    /// logistic, mirroring the patch forward pass cell for cell.
    pub fn compute(model: &CnnModel, image: &GrayImage) -> Result<ConvPlanes> {
        let cfg = &model.config;
        let k = cfg.kernel_size;
        if image.width() < k || image.height() < k {
            return Err(Error::ImageTooSmall {
                width: image.width(),
                height: image.height(),
                needed: k,
            });
        }
        let pw = image.width() - k + 1;
        let ph = image.height() - k + 1;
        let iw = image.width();
        let pixels = image.pixels();

        let mut planes = vec![0.0f64; cfg.num_filters * pw * ph];
        for f in 0..cfg.num_filters {
            let plane = &mut planes[f * pw * ph..(f + 1) * pw * ph];
            plane.fill(model.conv_biases[f]);
            let kernel = &model.conv_kernels[f * k * k..(f + 1) * k * k];
            for ky in 0..k {
                for kx in 0..k {
                    let w = kernel[ky * k + kx];
                    for y in 0..ph {
                        let src = &pixels[(y + ky) * iw + kx..(y + ky) * iw + kx + pw];
                        let dst = &mut plane[y * pw..(y + 1) * pw];
                        for (d, &p) in dst.iter_mut().zip(src) {
                            *d += w * p;
                        }
                    }
                }
            }
            for z in plane.iter_mut() {
                *z = logistic(*z);
            }
        }
        Ok(ConvPlanes { width: pw, height: ph, planes })
    }

    #[inline]
    fn plane(&self, f: usize) -> &[f64] {
        &self.planes[f * self.width * self.height..(f + 1) * self.width * self.height]
    }
}

/// Rates the window whose top-left corner is `(tx, ty)` from precomputed
/// planes. Equals `forward` on the extracted patch, bit for bit.
pub fn score_window(model: &CnnModel, planes: &ConvPlanes, tx: usize, ty: usize) -> f64 {
    let cfg = &model.config;
    let ps = cfg.pooled_side();
    let window = cfg.pool_window;
    let stride = cfg.pool_stride;
    let inv = 1.0 / (window * window) as f64;
    let fc_inputs = cfg.fc_inputs();

    let mut pooled = Vec::with_capacity(fc_inputs);
    for f in 0..cfg.num_filters {
        let plane = planes.plane(f);
        for py in 0..ps {
            for px in 0..ps {
                let mut sum = 0.0;
                for wy in 0..window {
                    let row = (ty + py * stride + wy) * planes.width + tx + px * stride;
                    for v in &plane[row..row + window] {
                        sum += v;
                    }
                }
                pooled.push(sum * inv);
            }
        }
    }

    let mut out_preact = model.out_bias;
    for p in 0..cfg.num_perceptrons {
        let weights = &model.fc_weights[p * fc_inputs..(p + 1) * fc_inputs];
        let mut acc = model.fc_biases[p];
        for (w, v) in weights.iter().zip(&pooled) {
            acc += w * v;
        }
        out_preact += model.out_weights[p] * logistic(acc);
    }
    logistic(out_preact)
}

/// Number of stride-1 window positions per axis: `(W - s + 1, H - s + 1)`.
pub fn window_grid(image: &GrayImage, window: usize) -> Result<(usize, usize)> {
    if image.width() < window || image.height() < window {
        return Err(Error::ImageTooSmall {
            width: image.width(),
            height: image.height(),
            needed: window,
        });
    }
    Ok((image.width() - window + 1, image.height() - window + 1))
}

/// Evaluates every window of the model's input size at stride 1 and
/// returns the center of the highest-rated one with its rating. Ties break
/// to the smallest row-major top-left index.
pub fn coarse_detect(model: &CnnModel, image: &GrayImage) -> Result<(f64, f64, f64)> {
    let window = model.config.input_size;
    let (nx, ny) = window_grid(image, window)?;
    let planes = ConvPlanes::compute(model, image)?;

    let mut best = (0usize, 0usize, f64::NEG_INFINITY);
    for ty in 0..ny {
        for tx in 0..nx {
            let rating = score_window(model, &planes, tx, ty);
            if rating > best.2 {
                best = (tx, ty, rating);
            }
        }
    }
    let half = (window as f64 - 1.0) / 2.0;
    Ok((best.0 as f64 + half, best.1 as f64 + half, best.2))
}

/// Refines an anchor by rating all windows within `radius` pixels of it in
/// the original image. The anchor is rounded to integers and clamped so
/// every window of the grid fits; on images narrower than
/// `input_size + 2 * radius` the grid shrinks per axis. Ties break row-major
/// over the offset grid. Returns the winning window center and its rating.
pub fn fine_detect(
    model: &CnnModel,
    image: &GrayImage,
    anchor: (f64, f64),
    radius: usize,
) -> Result<(f64, f64, f64)> {
    let window = model.config.input_size;
    window_grid(image, window)?;
    let half = (window as i64 - 1) / 2;
    let rx = (radius as i64).min((image.width() - window) as i64 / 2);
    let ry = (radius as i64).min((image.height() - window) as i64 / 2);

    let ax = (libm::round(anchor.0) as i64)
        .clamp(half + rx, image.width() as i64 - window as i64 + half - rx);
    let ay = (libm::round(anchor.1) as i64)
        .clamp(half + ry, image.height() as i64 - window as i64 + half - ry);

    // Shared conv planes over the union of all candidate windows.
    let union_tx = (ax - half - rx) as usize;
    let union_ty = (ay - half - ry) as usize;
    let union_w = window + 2 * rx as usize;
    let union_h = window + 2 * ry as usize;
    let union = GrayImage::from_fn(union_w, union_h, |x, y| {
        image.get(union_tx + x, union_ty + y)
    });
    let planes = ConvPlanes::compute(model, &union)?;

    let mut best = (0i64, 0i64, f64::NEG_INFINITY);
    for dy in -ry..=ry {
        for dx in -rx..=rx {
            let rating =
                score_window(model, &planes, (dx + rx) as usize, (dy + ry) as usize);
            if rating > best.2 {
                best = (dx, dy, rating);
            }
        }
    }
    Ok(((ax + best.0) as f64, (ay + best.1) as f64, best.2))
}
