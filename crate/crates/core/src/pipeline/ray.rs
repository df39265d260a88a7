//! Ray-based refinement: the non-CNN fallback used by the hybrid mode.
//!
//! Eight rays leave the anchor at 45-degree steps. Along each ray the
//! strongest adjacent-pixel intensity jump marks an edge (first maximum,
//! so ties resolve nearest the anchor, and the edge position is the
//! midpoint of the jumping pixel pair). Opposite rays pair up into four
//! midpoints; the mean of the two mutually closest midpoints is the
//! refined center.

use crate::error::{Error, Result};
use crate::imaging::GrayImage;

use crate::datagen::DIRECTIONS;

/// Refines `anchor` on a dark-disc-like structure. `max_range` caps the
/// number of pixel steps per ray; rays clip at the image border.
pub fn refine_ray(image: &GrayImage, anchor: (f64, f64), max_range: usize) -> Result<(f64, f64)> {
    let ax = libm::round(anchor.0) as i64;
    let ay = libm::round(anchor.1) as i64;
    let (w, h) = (image.width() as i64, image.height() as i64);
    if ax < 0 || ay < 0 || ax >= w || ay >= h {
        return Err(Error::OutOfBounds {
            x: ax,
            y: ay,
            size: 1,
            width: image.width(),
            height: image.height(),
        });
    }

    let mut edges = [(0.0f64, 0.0f64); 8];
    for (r, &(dx, dy)) in DIRECTIONS.iter().enumerate() {
        edges[r] = ray_edge(image, (ax, ay), (dx, dy), max_range);
    }

    // Midpoints of opposite-ray pairs.
    let mut mids = [(0.0f64, 0.0f64); 4];
    for j in 0..4 {
        mids[j] = (
            (edges[j].0 + edges[j + 4].0) / 2.0,
            (edges[j].1 + edges[j + 4].1) / 2.0,
        );
    }

    // Mean of the two mutually closest midpoints (first pair wins ties).
    let mut best = (0usize, 1usize, f64::INFINITY);
    for a in 0..4 {
        for b in a + 1..4 {
            let d2 = sq(mids[a].0 - mids[b].0) + sq(mids[a].1 - mids[b].1);
            if d2 < best.2 {
                best = (a, b, d2);
            }
        }
    }
    Ok((
        (mids[best.0].0 + mids[best.1].0) / 2.0,
        (mids[best.0].1 + mids[best.1].1) / 2.0,
    ))
}

/// Walks one ray and returns the sub-pixel position of its strongest
/// adjacent-pixel difference. A ray with no pixel pair (anchor on the
/// border) reports the anchor itself.
fn ray_edge(image: &GrayImage, start: (i64, i64), step: (i64, i64), max_range: usize) -> (f64, f64) {
    let (w, h) = (image.width() as i64, image.height() as i64);
    let in_bounds = |x: i64, y: i64| x >= 0 && y >= 0 && x < w && y < h;

    let mut best_k = None;
    let mut best_diff = f64::NEG_INFINITY;
    for k in 0..max_range as i64 {
        let (x0, y0) = (start.0 + k * step.0, start.1 + k * step.1);
        let (x1, y1) = (x0 + step.0, y0 + step.1);
        if !in_bounds(x1, y1) {
            break;
        }
        let diff = libm::fabs(
            image.get(x1 as usize, y1 as usize) - image.get(x0 as usize, y0 as usize),
        );
        if diff > best_diff {
            best_diff = diff;
            best_k = Some(k);
        }
    }
    match best_k {
        Some(k) => (
            start.0 as f64 + (k as f64 + 0.5) * step.0 as f64,
            start.1 as f64 + (k as f64 + 0.5) * step.1 as f64,
        ),
        None => (start.0 as f64, start.1 as f64),
    }
}

#[inline]
fn sq(v: f64) -> f64 {
    v * v
}
