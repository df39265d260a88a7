//! Bicubic rescaling with the Catmull-Rom kernel (a = -0.5).
//!
//! Output pixel centers map to source coordinates with the usual
//! center-aligned convention `src = (dst + 0.5) / factor - 0.5`, which makes
//! factor 1 the exact identity. Out-of-range taps replicate the edge pixel,
//! tap weights are renormalized by their sum, and the result is clamped to
//! `[0, 1]`, so constant images stay constant at any factor.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::imaging::GrayImage;

/// Rescales `image` by `factor` (output side = round(side * factor), at
/// least 1). The two passes are separable: rows first, then columns.
pub fn bicubic_resize(image: &GrayImage, factor: f64) -> Result<GrayImage> {
    if !(factor > 0.0) || !factor.is_finite() {
        return Err(Error::NonPositiveFactor);
    }
    let out_w = (libm::round(image.width() as f64 * factor) as usize).max(1);
    let out_h = (libm::round(image.height() as f64 * factor) as usize).max(1);

    // Horizontal pass: image.width() -> out_w, height unchanged.
    let taps_x = tap_table(image.width(), out_w, factor);
    let mut mid = vec![0.0f64; out_w * image.height()];
    for y in 0..image.height() {
        let row = image.row(y);
        for (ox, tap) in taps_x.iter().enumerate() {
            mid[y * out_w + ox] = tap.apply(|i| row[i]);
        }
    }

    // Vertical pass: image.height() -> out_h.
    let taps_y = tap_table(image.height(), out_h, factor);
    let mut out = Vec::with_capacity(out_w * out_h);
    for tap in &taps_y {
        for ox in 0..out_w {
            let v = tap.apply(|i| mid[i * out_w + ox]);
            out.push(v.clamp(0.0, 1.0));
        }
    }
    GrayImage::new(out_w, out_h, out)
}

/// Four source indices (edge-replicated) and normalized weights for one
/// output position.
struct Tap {
    idx: [usize; 4],
    w: [f64; 4],
}

impl Tap {
    #[inline]
    fn apply(&self, fetch: impl Fn(usize) -> f64) -> f64 {
        let acc = fetch(self.idx[0]) * self.w[0]
            + fetch(self.idx[1]) * self.w[1]
            + fetch(self.idx[2]) * self.w[2]
            + fetch(self.idx[3]) * self.w[3];
        acc
    }
}

fn tap_table(in_len: usize, out_len: usize, factor: f64) -> Vec<Tap> {
    let mut taps = Vec::with_capacity(out_len);
    for o in 0..out_len {
        let src = (o as f64 + 0.5) / factor - 0.5;
        let base = libm::floor(src) as i64;
        let t = src - base as f64;
        let mut idx = [0usize; 4];
        let mut w = [0.0f64; 4];
        let mut sum = 0.0;
        for j in 0..4 {
            let tap_pos = base - 1 + j as i64;
            idx[j] = tap_pos.clamp(0, in_len as i64 - 1) as usize;
            w[j] = catmull_rom(t - (j as f64 - 1.0));
            sum += w[j];
        }
        for wj in &mut w {
            *wj /= sum;
        }
        taps.push(Tap { idx, w });
    }
    taps
}

/// Keys cubic convolution kernel with a = -0.5.
fn catmull_rom(x: f64) -> f64 {
    const A: f64 = -0.5;
    let x = libm::fabs(x);
    if x <= 1.0 {
        ((A + 2.0) * x - (A + 3.0)) * x * x + 1.0
    } else if x < 2.0 {
        ((A * x - 5.0 * A) * x + 8.0 * A) * x - 4.0 * A
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_factor_shapes() {
        let img = GrayImage::from_fn(384, 288, |x, y| ((x ^ y) % 7) as f64 / 7.0);
        let out = bicubic_resize(&img, 0.25).unwrap();
        assert_eq!((out.width(), out.height()), (96, 72));
    }

    #[test]
    fn factor_one_is_identity() {
        let img = GrayImage::from_fn(31, 17, |x, y| ((3 * x + 5 * y) % 11) as f64 / 11.0);
        let out = bicubic_resize(&img, 1.0).unwrap();
        assert_eq!(out.pixels(), img.pixels());
    }

    #[test]
    fn constants_stay_constant() {
        let img = GrayImage::from_fn(40, 30, |_, _| 0.37);
        for factor in [0.25, 0.5, 1.3, 4.0] {
            let out = bicubic_resize(&img, factor).unwrap();
            for &v in out.pixels() {
                assert!((v - 0.37).abs() < 1e-12, "factor {factor}: {v}");
            }
        }
    }

    #[test]
    fn rejects_bad_factor() {
        let img = GrayImage::from_fn(4, 4, |_, _| 0.5);
        assert_eq!(bicubic_resize(&img, 0.0).unwrap_err(), Error::NonPositiveFactor);
        assert_eq!(bicubic_resize(&img, -1.0).unwrap_err(), Error::NonPositiveFactor);
    }
}
