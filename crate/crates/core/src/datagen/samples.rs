//! Training-sample generation for both detector stages.
//!
//! Coarse stage, per labeled (downscaled) image: the window nearest the
//! label plus its 8 immediate neighbors are the 9 valid samples; the 32
//! invalid samples sit on 8 equally spaced directions at Chebyshev radii
//! 2..=5, so their window centers are 2 to 5 pixels away from the anchor
//! and never collide with the valid 3x3 block.
//!
//! Fine stage, per labeled (original) image: one valid sample centered at
//! the rounded label and 8 invalid samples on the same directions at
//! Euclidean radius 5, componentwise rounded.
//!
//! Labels whose offset grid would leave the image are clamped inward so
//! that every window fits; the clamp is reported, never silently applied
//! to dropped data.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::imaging::{extract_patch, GrayImage, PatchSpec};
use crate::nn::TrainingSample;

use super::PupilLabel;

/// Unit steps for the 8 directions at 45-degree spacing, in angle order.
pub(crate) const DIRECTIONS: [(i64, i64); 8] =
    [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];

/// Maximum offset radius used by either stage's sample grid.
const GRID_RADIUS: i64 = 5;

/// Samples generated from one labeled image.
#[derive(Debug, Clone)]
pub struct SampleSet {
    pub samples: Vec<TrainingSample>,
    /// True when the anchor had to be moved inward so all windows fit.
    pub clamped: bool,
}

/// The 32 invalid-sample offsets for the coarse stage: 8 directions times
/// Chebyshev radii 2..=5.
pub fn coarse_invalid_offsets() -> Vec<(i64, i64)> {
    let mut offsets = Vec::with_capacity(32);
    for (dx, dy) in DIRECTIONS {
        for r in 2..=GRID_RADIUS {
            offsets.push((dx * r, dy * r));
        }
    }
    offsets
}

/// The 8 invalid-sample offsets for the fine stage: radius five along each
/// direction, componentwise rounded, which lands the diagonals on (±4, ±4).
pub fn fine_invalid_offsets() -> [(i64, i64); 8] {
    let mut offsets = [(0i64, 0i64); 8];
    for (k, slot) in offsets.iter_mut().enumerate() {
        let theta = k as f64 * core::f64::consts::FRAC_PI_4;
        *slot = (
            libm::round(5.0 * libm::cos(theta)) as i64,
            libm::round(5.0 * libm::sin(theta)) as i64,
        );
    }
    offsets
}

/// Generates the 41 coarse-stage samples (9 valid + 32 invalid) for one
/// downscaled image and its label in downscaled coordinates.
pub fn gen_coarse_samples(
    image: &GrayImage,
    label: (f64, f64),
    window: usize,
) -> Result<SampleSet> {
    let (anchor_tx, anchor_ty, clamped) = clamp_anchor(image, label, window)?;

    let mut samples = Vec::with_capacity(41);
    let mut push = |dx: i64, dy: i64, valid: bool| -> Result<()> {
        let spec = PatchSpec::from_top_left(anchor_tx + dx, anchor_ty + dy, window);
        samples.push(TrainingSample::new(extract_patch(image, &spec)?, valid));
        Ok(())
    };

    push(0, 0, true)?;
    for dy in -1..=1i64 {
        for dx in -1..=1i64 {
            if (dx, dy) != (0, 0) {
                push(dx, dy, true)?;
            }
        }
    }
    for (dx, dy) in coarse_invalid_offsets() {
        push(dx, dy, false)?;
    }
    Ok(SampleSet { samples, clamped })
}

/// Generates the 9 fine-stage samples (1 valid + 8 invalid) for one
/// original-resolution image and label.
pub fn gen_fine_samples(image: &GrayImage, label: (f64, f64), window: usize) -> Result<SampleSet> {
    let (anchor_tx, anchor_ty, clamped) = clamp_anchor(image, label, window)?;

    let mut samples = Vec::with_capacity(9);
    let spec = PatchSpec::from_top_left(anchor_tx, anchor_ty, window);
    samples.push(TrainingSample::new(extract_patch(image, &spec)?, true));
    for (dx, dy) in fine_invalid_offsets() {
        let spec = PatchSpec::from_top_left(anchor_tx + dx, anchor_ty + dy, window);
        samples.push(TrainingSample::new(extract_patch(image, &spec)?, false));
    }
    Ok(SampleSet { samples, clamped })
}

/// Top-left corner of the window nearest the label, clamped so the whole
/// +-GRID_RADIUS offset grid stays inside the image.
fn clamp_anchor(image: &GrayImage, label: (f64, f64), window: usize) -> Result<(i64, i64, bool)> {
    let needed = window + 2 * GRID_RADIUS as usize;
    if image.width() < needed || image.height() < needed {
        return Err(Error::ImageTooSmall {
            width: image.width(),
            height: image.height(),
            needed,
        });
    }
    let half = (window as f64 - 1.0) / 2.0;
    let raw_tx = libm::round(label.0 - half) as i64;
    let raw_ty = libm::round(label.1 - half) as i64;
    let tx = raw_tx.clamp(GRID_RADIUS, (image.width() - window) as i64 - GRID_RADIUS);
    let ty = raw_ty.clamp(GRID_RADIUS, (image.height() - window) as i64 - GRID_RADIUS);
    Ok((tx, ty, tx != raw_tx || ty != raw_ty))
}

/// Retained indices for the fine-stage subsample: a seeded-random 50% of
/// valid and 25% of invalid positions (counts round half up), in ascending
/// order.
pub fn subsample_fine_indices(is_valid: &[bool], seed: u64) -> Vec<usize> {
    let mut valid: Vec<usize> = (0..is_valid.len()).filter(|&i| is_valid[i]).collect();
    let mut invalid: Vec<usize> = (0..is_valid.len()).filter(|&i| !is_valid[i]).collect();
    let keep_valid = (valid.len() + 1) / 2;
    let keep_invalid = (invalid.len() + 2) / 4;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    valid.shuffle(&mut rng);
    invalid.shuffle(&mut rng);

    let mut kept: Vec<usize> = valid[..keep_valid]
        .iter()
        .chain(&invalid[..keep_invalid])
        .copied()
        .collect();
    kept.sort_unstable();
    kept
}

/// Applies [`subsample_fine_indices`] to a sample list, preserving the
/// original relative order.
pub fn subsample_fine(samples: &[TrainingSample], seed: u64) -> Vec<TrainingSample> {
    let is_valid: Vec<bool> = samples.iter().map(|s| s.target == 1.0).collect();
    subsample_fine_indices(&is_valid, seed)
        .into_iter()
        .map(|i| samples[i].clone())
        .collect()
}

/// Seeded-random partition of labels by image into a training set of
/// round-half-up `fraction * n` images and the remaining evaluation set.
/// Both halves keep the input order.
pub fn split_dataset(
    labels: &[PupilLabel],
    fraction: f64,
    seed: u64,
) -> Result<(Vec<PupilLabel>, Vec<PupilLabel>)> {
    if labels.is_empty() {
        return Err(Error::EmptyInput("label set"));
    }
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::BadFraction(fraction));
    }
    let n = labels.len();
    let n_train = libm::floor(fraction * n as f64 + 0.5) as usize;

    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);

    let mut train_idx: Vec<usize> = order[..n_train].to_vec();
    let mut eval_idx: Vec<usize> = order[n_train..].to_vec();
    train_idx.sort_unstable();
    eval_idx.sort_unstable();

    let pick = |idx: &[usize]| idx.iter().map(|&i| labels[i].clone()).collect();
    Ok((pick(&train_idx), pick(&eval_idx)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn test_image(w: usize, h: usize) -> GrayImage {
        GrayImage::from_fn(w, h, |x, y| ((x * 7 + y * 13) % 97) as f64 / 96.0)
    }

    #[test]
    fn coarse_counts_and_split() {
        let img = test_image(96, 72);
        let set = gen_coarse_samples(&img, (48.0, 36.0), 24).unwrap();
        assert_eq!(set.samples.len(), 41);
        assert_eq!(set.samples.iter().filter(|s| s.target == 1.0).count(), 9);
        assert_eq!(set.samples.iter().filter(|s| s.target == 0.0).count(), 32);
        assert!(!set.clamped);
    }

    #[test]
    fn coarse_invalid_offsets_are_distinct_chebyshev_2_to_5() {
        let offsets = coarse_invalid_offsets();
        assert_eq!(offsets.len(), 32);
        for (i, &(ax, ay)) in offsets.iter().enumerate() {
            let cheb = ax.abs().max(ay.abs());
            assert!((2..=5).contains(&cheb), "offset ({ax}, {ay})");
            for &(bx, by) in &offsets[i + 1..] {
                assert!((ax, ay) != (bx, by));
            }
        }
    }

    #[test]
    fn coarse_anchor_snaps_to_nearest_window_center() {
        let img = test_image(96, 72);
        // Label exactly on a window-center grid point (centers are x.5 for
        // even windows).
        let set = gen_coarse_samples(&img, (30.5, 25.5), 24).unwrap();
        assert!(!set.clamped);
        // First valid sample is the anchor window; reconstruct its center.
        let anchor = &set.samples[0];
        let expected = extract_patch(&img, &PatchSpec::new(30.5, 25.5, 24)).unwrap();
        assert_eq!(anchor.patch, expected);
    }

    #[test]
    fn coarse_clamps_border_labels() {
        let img = test_image(96, 72);
        let set = gen_coarse_samples(&img, (1.0, 1.0), 24).unwrap();
        assert!(set.clamped);
        assert_eq!(set.samples.len(), 41);
    }

    #[test]
    fn coarse_rejects_tiny_images() {
        let img = test_image(30, 30);
        assert!(matches!(
            gen_coarse_samples(&img, (15.0, 15.0), 24).unwrap_err(),
            Error::ImageTooSmall { .. }
        ));
    }

    #[test]
    fn fine_counts_and_offsets() {
        let img = test_image(384, 288);
        let set = gen_fine_samples(&img, (192.0, 144.0), 89).unwrap();
        assert_eq!(set.samples.len(), 9);
        assert_eq!(set.samples.iter().filter(|s| s.target == 1.0).count(), 1);
        let offsets = fine_invalid_offsets();
        let expected: [(i64, i64); 8] =
            [(5, 0), (4, 4), (0, 5), (-4, 4), (-5, 0), (-4, -4), (0, -5), (4, -4)];
        assert_eq!(offsets, expected);
        for (dx, dy) in &offsets[1..2] {
            let dist = libm::sqrt((dx * dx + dy * dy) as f64);
            assert!((dist - 32f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn fine_valid_window_top_left() {
        let img = test_image(384, 288);
        let set = gen_fine_samples(&img, (192.3, 144.0), 89).unwrap();
        // round(192.3) - 44 = 148, round(144.0) - 44 = 100.
        let expected = extract_patch(&img, &PatchSpec::from_top_left(148, 100, 89)).unwrap();
        assert_eq!(set.samples[0].patch, expected);
    }

    #[test]
    fn subsample_keeps_half_valid_quarter_invalid() {
        let mut samples = Vec::new();
        for i in 0..900 {
            samples.push(TrainingSample::new(vec![0.5; 4], i < 100));
        }
        let kept = subsample_fine(&samples, 9);
        let valid = kept.iter().filter(|s| s.target == 1.0).count();
        let invalid = kept.len() - valid;
        assert_eq!((valid, invalid), (50, 200));

        // Round-half-up on tiny sets: 1 valid + 8 invalid -> 1 + 2.
        let tiny: Vec<TrainingSample> =
            (0..9).map(|i| TrainingSample::new(vec![0.0; 4], i == 0)).collect();
        let kept = subsample_fine(&tiny, 1);
        let valid = kept.iter().filter(|s| s.target == 1.0).count();
        assert_eq!((valid, kept.len() - valid), (1, 2));
    }

    #[test]
    fn subsample_is_seed_deterministic() {
        let samples: Vec<TrainingSample> =
            (0..50).map(|i| TrainingSample::new(vec![i as f64 / 50.0; 4], i % 9 == 0)).collect();
        assert_eq!(subsample_fine(&samples, 4), subsample_fine(&samples, 4));
    }

    #[test]
    fn split_is_disjoint_exhaustive_and_sized() {
        let labels: Vec<PupilLabel> =
            (0..101).map(|i| PupilLabel::new(format!("img_{i}"), 1.0, 2.0)).collect();
        let (train, eval) = split_dataset(&labels, 0.5, 3).unwrap();
        assert_eq!((train.len(), eval.len()), (51, 50));
        for t in &train {
            assert!(!eval.iter().any(|e| e.image_id == t.image_id));
        }
        let (train2, eval2) = split_dataset(&labels, 0.5, 3).unwrap();
        assert_eq!(train, train2);
        assert_eq!(eval, eval2);

        let (even_train, even_eval) = split_dataset(&labels[..100], 0.5, 3).unwrap();
        assert_eq!((even_train.len(), even_eval.len()), (50, 50));
    }

    #[test]
    fn split_rejects_bad_inputs() {
        assert!(split_dataset(&[], 0.5, 0).is_err());
        let labels = vec![PupilLabel::new("a", 0.0, 0.0)];
        assert!(matches!(split_dataset(&labels, 1.0, 0).unwrap_err(), Error::BadFraction(_)));
    }
}
