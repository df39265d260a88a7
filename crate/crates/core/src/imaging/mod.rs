//! Grayscale rasters and the geometric operations both detector stages
//! are built on: PGM encode/decode, bicubic rescaling, patch extraction.

mod image;
pub mod pgm;
mod resize;

pub use image::{extract_patch, GrayImage, PatchSpec};
pub use resize::bicubic_resize;
