//! The coarse-to-fine detector and its variants.
//!
//! Two-stage: downscale, sweep the coarse network over every window, map
//! the winning center back to original coordinates, then refine with the
//! fine network over a small offset grid. Coarse-only and single-stage
//! stop after the mapping; the hybrid mode swaps the fine network for ray
//! refinement.

mod ray;
mod sweep;

pub use ray::refine_ray;
pub use sweep::{coarse_detect, fine_detect, score_window, window_grid, ConvPlanes};

use crate::error::{Error, Result};
use crate::imaging::{bicubic_resize, GrayImage};
use crate::nn::CnnModel;

/// Detector composition mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectMode {
    /// Coarse sweep on the downscaled image, then fine refinement.
    TwoStage,
    /// Coarse sweep only; the mapped coarse estimate is the final answer.
    CoarseOnly,
    /// One sweep with the 25x25 single-stage network on the downscaled
    /// image.
    SingleStage,
    /// Coarse sweep followed by ray refinement instead of the fine network.
    CoarseRay,
}

/// Detector parameters. `downscale_factor` is the integer factor between
/// the original and the coarse image; `refine_radius` is the fine-stage
/// offset grid radius; `ray_range` is the maximum ray length for the
/// hybrid mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineConfig {
    pub downscale_factor: usize,
    pub refine_radius: usize,
    pub ray_range: usize,
    pub mode: DetectMode,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self { downscale_factor: 4, refine_radius: 10, ray_range: 30, mode: DetectMode::TwoStage }
    }
}

/// Models for the detector. The coarse slot also carries the single-stage
/// network when that mode is active.
#[derive(Debug, Clone, Default)]
pub struct PipelineModels {
    pub coarse: Option<CnnModel>,
    pub fine: Option<CnnModel>,
}

/// One detection: the raw coarse estimate in downscaled coordinates and
/// the final estimate in original coordinates, each with the winning
/// window's rating.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionResult {
    pub coarse_x: f64,
    pub coarse_y: f64,
    pub coarse_confidence: f64,
    pub fine_x: f64,
    pub fine_y: f64,
    pub fine_confidence: f64,
}

/// Maps a downscaled coordinate to the center of its source block:
/// `factor * c + (factor - 1) / 2`. Plain multiplication would place the
/// estimate on the block's top-left corner and bias every detection by
/// half a block.
pub fn map_coarse_to_original(coarse: (f64, f64), factor: usize) -> (f64, f64) {
    let f = factor as f64;
    (coarse.0 * f + (f - 1.0) / 2.0, coarse.1 * f + (f - 1.0) / 2.0)
}

/// Runs the configured detector on one image.
pub fn detect(
    cfg: &PipelineConfig,
    models: &PipelineModels,
    image: &GrayImage,
) -> Result<DetectionResult> {
    if cfg.downscale_factor == 0 {
        return Err(Error::ZeroCount("downscale_factor"));
    }
    let coarse_model = models.coarse.as_ref().ok_or(Error::MissingModel("coarse"))?;
    if cfg.mode == DetectMode::TwoStage && models.fine.is_none() {
        return Err(Error::MissingModel("fine"));
    }

    let downscaled;
    let coarse_input = if cfg.downscale_factor == 1 {
        image
    } else {
        downscaled = bicubic_resize(image, 1.0 / cfg.downscale_factor as f64)?;
        &downscaled
    };

    let (cx, cy, coarse_confidence) = coarse_detect(coarse_model, coarse_input)?;
    let mapped = map_coarse_to_original((cx, cy), cfg.downscale_factor);
    let mapped = (
        mapped.0.clamp(0.0, image.width() as f64 - 1.0),
        mapped.1.clamp(0.0, image.height() as f64 - 1.0),
    );

    let (fine_x, fine_y, fine_confidence) = match cfg.mode {
        DetectMode::CoarseOnly | DetectMode::SingleStage => {
            (mapped.0, mapped.1, coarse_confidence)
        }
        DetectMode::TwoStage => {
            let fine_model = models.fine.as_ref().expect("checked above");
            fine_detect(fine_model, image, mapped, cfg.refine_radius)?
        }
        DetectMode::CoarseRay => {
            let (x, y) = refine_ray(image, mapped, cfg.ray_range)?;
            (x, y, coarse_confidence)
        }
    };

    Ok(DetectionResult {
        coarse_x: cx,
        coarse_y: cy,
        coarse_confidence,
        fine_x,
        fine_y,
        fine_confidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::{init_model, presets};

    #[test]
    fn mapping_factor_one_is_identity() {
        assert_eq!(map_coarse_to_original((10.0, 20.0), 1), (10.0, 20.0));
    }

    #[test]
    fn mapping_returns_block_centers() {
        assert_eq!(map_coarse_to_original((10.0, 20.0), 4), (41.5, 81.5));
    }

    #[test]
    fn missing_models_are_reported() {
        let cfg = PipelineConfig::default();
        let image = GrayImage::from_fn(384, 288, |_, _| 0.5);
        let err = detect(&cfg, &PipelineModels::default(), &image).unwrap_err();
        assert_eq!(err, Error::MissingModel("coarse"));

        let models = PipelineModels {
            coarse: Some(init_model(presets::by_name("C_K8P8").unwrap(), 0).unwrap()),
            fine: None,
        };
        assert_eq!(detect(&cfg, &models, &image).unwrap_err(), Error::MissingModel("fine"));
    }

    #[test]
    fn coarse_only_mirrors_mapped_coarse() {
        let cfg = PipelineConfig { mode: DetectMode::CoarseOnly, ..PipelineConfig::default() };
        let models = PipelineModels {
            coarse: Some(init_model(presets::by_name("C_K8P8").unwrap(), 1).unwrap()),
            fine: None,
        };
        let image = GrayImage::from_fn(384, 288, |x, y| ((x + 2 * y) % 119) as f64 / 119.0);
        let r = detect(&cfg, &models, &image).unwrap();
        let mapped = map_coarse_to_original((r.coarse_x, r.coarse_y), 4);
        assert_eq!((r.fine_x, r.fine_y), mapped);
        assert_eq!(r.fine_confidence, r.coarse_confidence);
    }

    #[test]
    fn two_stage_and_coarse_only_share_coarse_fields() {
        let models = PipelineModels {
            coarse: Some(init_model(presets::by_name("C_K8P8").unwrap(), 1).unwrap()),
            fine: Some(init_model(presets::by_name("F_K8P8").unwrap(), 2).unwrap()),
        };
        let image = GrayImage::from_fn(384, 288, |x, y| ((3 * x + y) % 97) as f64 / 97.0);
        let two = detect(&PipelineConfig::default(), &models, &image).unwrap();
        let only = detect(
            &PipelineConfig { mode: DetectMode::CoarseOnly, ..PipelineConfig::default() },
            &models,
            &image,
        )
        .unwrap();
        assert_eq!((two.coarse_x, two.coarse_y), (only.coarse_x, only.coarse_y));
        assert_eq!(two.coarse_confidence, only.coarse_confidence);
    }
}
