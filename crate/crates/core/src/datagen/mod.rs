//! Training-data machinery: ground-truth label ingestion, the two
//! per-stage sample generation procedures, dataset splitting, and a
//! synthetic eye-image generator with exact ground truth.

mod labels;
mod samples;
mod synth;

pub(crate) use samples::DIRECTIONS;

pub use labels::{labels_to_csv, parse_labels_csv, validate_label, PupilLabel};
pub use samples::{
    coarse_invalid_offsets, fine_invalid_offsets, gen_coarse_samples, gen_fine_samples,
    split_dataset, subsample_fine, subsample_fine_indices, SampleSet,
};
pub use synth::{synth_eye, SynthSpec};
