//! Detector invariants, using a hand-built darkness model where a trained
//! network is not required.

mod common;

use common::*;
use pupil_core::datagen::{synth_eye, SynthSpec};
use pupil_core::imaging::bicubic_resize;
use pupil_core::nn::presets;
use pupil_core::pipeline::{
    coarse_detect, detect, fine_detect, map_coarse_to_original, refine_ray, window_grid,
    DetectMode, DetectionResult, PipelineConfig, PipelineModels,
};

fn clean_spec() -> SynthSpec {
    SynthSpec {
        reflection_count: (0, 0),
        gradient: (0.0, 0.0),
        noise_sigma: 0.005,
        blur_radius: (0.0, 0.5),
        ..SynthSpec::default()
    }
}

#[test]
fn coarse_detect_on_clean_synthetic_hits_near_center() {
    // The darkness model scores window darkness, so on a clean synthetic
    // eye its argmax centers on the pupil/iris blob. Downscale, detect,
    // map back: the error budget per the upscaling quantization bound is
    // 2 * factor pixels.
    let model = dark_window_model(presets::by_name("C_K8P8").unwrap());
    let spec = clean_spec();
    for seed in 0..10 {
        let (img, label) = synth_eye(&spec, 3_000 + seed).unwrap();
        let ds = bicubic_resize(&img, 0.25).unwrap();
        let (cx, cy, conf) = coarse_detect(&model, &ds).unwrap();
        let (mx, my) = map_coarse_to_original((cx, cy), 4);
        let err = ((mx - label.x).powi(2) + (my - label.y).powi(2)).sqrt();
        assert!(err <= 8.0, "seed {seed}: error {err:.2} at conf {conf:.3}");
    }
}

#[test]
fn mapping_round_trips_within_half_block() {
    for factor in [1usize, 2, 4, 8] {
        for original in [0.0f64, 17.0, 100.0, 383.0] {
            // Exact downscale of a coordinate, then map back.
            let down = (original - (factor as f64 - 1.0) / 2.0) / factor as f64;
            let (back, _) = map_coarse_to_original((down, down), factor);
            assert!((back - original).abs() <= (factor as f64 - 1.0) / 2.0 + 1e-9);
        }
    }
}

#[test]
fn evaluation_counts_match_closed_form() {
    let mut r = rng(0xE0);
    for (w, h, s) in [(96usize, 72usize, 24usize), (96, 72, 25), (64, 50, 24), (89, 89, 89)] {
        let img = random_image(&mut r, w, h);
        let (nx, ny) = window_grid(&img, s).unwrap();
        assert_eq!((nx, ny), (w - s + 1, h - s + 1));
    }
}

#[test]
fn fine_detect_result_within_radius_chebyshev() {
    let model = dark_window_model(presets::by_name("F_K8P8").unwrap());
    let mut r = rng(0xE1);
    for trial in 0..5 {
        let img = random_image(&mut r, 384, 288);
        let anchor = (
            rand::Rng::gen_range(&mut r, 60.0..324.0),
            rand::Rng::gen_range(&mut r, 60.0..228.0),
        );
        let radius = trial * 3;
        let (fx, fy, _) = fine_detect(&model, &img, anchor, radius).unwrap();
        let (ax, ay) = (anchor.0.round(), anchor.1.round());
        assert!((fx - ax).abs() <= radius as f64 + 1e-9);
        assert!((fy - ay).abs() <= radius as f64 + 1e-9);
    }
}

#[test]
fn two_stage_detection_with_darkness_models_beats_nothing() {
    // End-to-end smoke: darkness models for both stages on a clean eye.
    let models = PipelineModels {
        coarse: Some(dark_window_model(presets::by_name("C_K8P8").unwrap())),
        fine: Some(dark_window_model(presets::by_name("F_K8P8").unwrap())),
    };
    let cfg = PipelineConfig::default();
    let (img, label) = synth_eye(&clean_spec(), 77).unwrap();
    let r: DetectionResult = detect(&cfg, &models, &img).unwrap();
    assert!(r.coarse_confidence > 0.0 && r.coarse_confidence < 1.0);
    assert!(r.fine_x >= 0.0 && r.fine_x < 384.0);
    assert!(r.fine_y >= 0.0 && r.fine_y < 288.0);
    let err = ((r.fine_x - label.x).powi(2) + (r.fine_y - label.y).powi(2)).sqrt();
    assert!(err < 30.0, "error {err}");
}

#[test]
fn single_stage_uses_downscaled_coordinates() {
    let models = PipelineModels {
        coarse: Some(dark_window_model(presets::by_name("S_K8P8").unwrap())),
        fine: None,
    };
    let cfg = PipelineConfig { mode: DetectMode::SingleStage, ..PipelineConfig::default() };
    let (img, _) = synth_eye(&clean_spec(), 78).unwrap();
    let r = detect(&cfg, &models, &img).unwrap();
    // 25x25 windows on 96x72: coarse centers lie on the integer grid
    // within [12, 83] x [12, 59].
    assert!(r.coarse_x >= 12.0 && r.coarse_x <= 83.0);
    assert!(r.coarse_y >= 12.0 && r.coarse_y <= 59.0);
    assert_eq!(r.fine_confidence, r.coarse_confidence);
}

#[test]
fn coarse_ray_mode_runs_and_stays_in_bounds() {
    let models = PipelineModels {
        coarse: Some(dark_window_model(presets::by_name("C_K8P8").unwrap())),
        fine: None,
    };
    let cfg = PipelineConfig { mode: DetectMode::CoarseRay, ..PipelineConfig::default() };
    let (img, label) = synth_eye(&clean_spec(), 79).unwrap();
    let r = detect(&cfg, &models, &img).unwrap();
    let err = ((r.fine_x - label.x).powi(2) + (r.fine_y - label.y).powi(2)).sqrt();
    assert!(err < 40.0, "ray refinement error {err}");
}

#[test]
fn ray_refinement_converges_on_rendered_disc() {
    // Geometric oracle: anchors a few pixels off a rendered disc center
    // must move strictly closer.
    let img = pupil_core::imaging::GrayImage::from_fn(200, 160, |x, y| {
        let d = ((x as f64 - 90.0).powi(2) + (y as f64 - 85.0).powi(2)).sqrt();
        if d <= 18.0 {
            0.08
        } else {
            0.8
        }
    });
    for offset in [(3.0, 0.0), (0.0, 3.0), (-2.0, 2.0)] {
        let anchor = (90.0 + offset.0, 85.0 + offset.1);
        let (x, y) = refine_ray(&img, anchor, 30).unwrap();
        let before = (offset.0.powi(2) + offset.1.powi(2)).sqrt();
        let after = ((x - 90.0).powi(2) + (y - 85.0).powi(2)).sqrt();
        assert!(after < before, "anchor {anchor:?} -> ({x}, {y})");
    }
}
