//! Imaging invariants.

mod common;

use common::*;
use proptest::prelude::*;
use pupil_core::imaging::{bicubic_resize, extract_patch, pgm, GrayImage, PatchSpec};

#[test]
fn downscale_then_upscale_of_smooth_image_is_close() {
    // Smoothness sanity check: quarter-scale then back at 4x on a smooth
    // synthetic field.
    let img = GrayImage::from_fn(384, 288, |x, y| {
        0.5 + 0.3 * f64::sin(x as f64 / 40.0) * f64::cos(y as f64 / 30.0)
    });
    let down = bicubic_resize(&img, 0.25).unwrap();
    assert_eq!((down.width(), down.height()), (96, 72));
    let up = bicubic_resize(&down, 4.0).unwrap();
    assert_eq!((up.width(), up.height()), (384, 288));
    let mae: f64 = img
        .pixels()
        .iter()
        .zip(up.pixels())
        .map(|(a, b)| (a - b).abs())
        .sum::<f64>()
        / img.pixels().len() as f64;
    assert!(mae < 0.02, "mean absolute error {mae}");
}

#[test]
fn resize_output_stays_in_unit_range_on_noise() {
    let mut r = rng(7);
    let img = random_image(&mut r, 64, 48);
    for factor in [0.25, 0.5, 2.0] {
        let out = bicubic_resize(&img, factor).unwrap();
        assert!(out.pixels().iter().all(|&v| (0.0..=1.0).contains(&v)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pgm_round_trip_preserves_bytes(seed in 0u64..10_000, w in 1usize..40, h in 1usize..40) {
        let mut r = rng(seed);
        // Quantized image: exactly what a PGM file can hold.
        let img = GrayImage::from_fn(w, h, |_, _| {
            f64::from(rand::Rng::gen_range(&mut r, 0u8..=255)) / 255.0
        });
        let bytes = pgm::encode(&img);
        let back = pgm::decode(&bytes).unwrap();
        prop_assert_eq!(pgm::encode(&back), bytes);
    }

    #[test]
    fn patch_always_has_size_squared_values(
        seed in 0u64..1_000, size in 1usize..30, tx in 0i64..30, ty in 0i64..30
    ) {
        let mut r = rng(seed);
        let img = random_image(&mut r, 64, 64);
        let spec = PatchSpec::from_top_left(tx, ty, size);
        let patch = extract_patch(&img, &spec).unwrap();
        prop_assert_eq!(patch.len(), size * size);
    }

    #[test]
    fn constant_images_resize_to_constants(value in 0.0f64..1.0, num in 1u32..8) {
        let img = GrayImage::from_fn(33, 21, |_, _| value);
        let out = bicubic_resize(&img, f64::from(num) / 4.0).unwrap();
        for &v in out.pixels() {
            prop_assert!((v - value).abs() < 1e-12);
        }
    }
}
