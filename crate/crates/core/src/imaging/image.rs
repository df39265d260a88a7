use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A grayscale raster with row-major intensities in `[0, 1]`.
///
/// Images are immutable after construction; every operation over them is a
/// pure function, so sharing across threads is free.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<f64>,
}

impl GrayImage {
    /// Builds an image, checking the pixel count and the `[0, 1]` range.
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(Error::ShapeMismatch { expected: width * height, actual: pixels.len() });
        }
        for &v in &pixels {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::PixelOutOfRange(v));
            }
        }
        Ok(Self { width, height, pixels })
    }

    /// Builds an image by evaluating `f(x, y)`, clamping into `[0, 1]`.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y).clamp(0.0, 1.0));
            }
        }
        Self { width, height, pixels }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.pixels[y * self.width + x]
    }

    /// Pixel fetch with edge replication for out-of-range coordinates.
    #[inline]
    pub fn get_clamped(&self, x: i64, y: i64) -> f64 {
        let cx = x.clamp(0, self.width as i64 - 1) as usize;
        let cy = y.clamp(0, self.height as i64 - 1) as usize;
        self.pixels[cy * self.width + cx]
    }

    pub fn row(&self, y: usize) -> &[f64] {
        &self.pixels[y * self.width..(y + 1) * self.width]
    }
}

/// A square window on an image, addressed by its (possibly fractional)
/// center.
///
/// For odd sizes the center is an exact pixel; for even sizes it sits on the
/// half-integer grid, `top_left + (size - 1) / 2`, so every integer top-left
/// corner has a unique center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatchSpec {
    pub center_x: f64,
    pub center_y: f64,
    pub size: usize,
}

impl PatchSpec {
    pub fn new(center_x: f64, center_y: f64, size: usize) -> Self {
        Self { center_x, center_y, size }
    }

    /// Spec for the window with the given integer top-left corner.
    pub fn from_top_left(tx: i64, ty: i64, size: usize) -> Self {
        let half = (size as f64 - 1.0) / 2.0;
        Self { center_x: tx as f64 + half, center_y: ty as f64 + half, size }
    }

    /// Integer top-left corner implied by the center (snapping to the
    /// nearest grid position when the center is slightly off-grid).
    pub fn top_left(&self) -> (i64, i64) {
        let half = (self.size as f64 - 1.0) / 2.0;
        (libm::round(self.center_x - half) as i64, libm::round(self.center_y - half) as i64)
    }
}

/// Copies the window described by `spec` out of `image`, row-major.
///
/// No interpolation happens here: specs are constructed on the integer
/// window grid. A window that does not lie fully inside the image is an
/// error; callers that sweep near borders clamp first.
pub fn extract_patch(image: &GrayImage, spec: &PatchSpec) -> Result<Vec<f64>> {
    let (tx, ty) = spec.top_left();
    let size = spec.size;
    if tx < 0
        || ty < 0
        || tx as usize + size > image.width()
        || ty as usize + size > image.height()
    {
        return Err(Error::OutOfBounds {
            x: tx,
            y: ty,
            size,
            width: image.width(),
            height: image.height(),
        });
    }
    let (tx, ty) = (tx as usize, ty as usize);
    let mut out = Vec::with_capacity(size * size);
    for y in ty..ty + size {
        out.extend_from_slice(&image.row(y)[tx..tx + size]);
    }
    Ok(out)
}
