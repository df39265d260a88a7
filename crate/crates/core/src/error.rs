//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A network configuration violates its shape invariants.
    InvalidConfig(String),
    /// An input buffer does not have the length the receiver requires.
    ShapeMismatch { expected: usize, actual: usize },
    /// A window or coordinate falls outside the raster.
    OutOfBounds { x: i64, y: i64, size: usize, width: usize, height: usize },
    /// The image is too small for the requested operation.
    ImageTooSmall { width: usize, height: usize, needed: usize },
    /// Resize factor must be strictly positive.
    NonPositiveFactor,
    /// A pixel value escaped [0, 1].
    PixelOutOfRange(f64),
    /// PGM stream does not start with the binary "P5" magic.
    PgmBadMagic,
    /// PGM maxval is not 255.
    PgmBadMaxval(u32),
    /// PGM header could not be parsed.
    PgmMalformedHeader(String),
    /// PGM payload ended before width*height bytes.
    PgmTruncated,
    /// Model stream does not start with the expected magic bytes.
    ModelBadMagic,
    /// Model format version is not supported.
    ModelBadVersion(u32),
    /// Model weight counts are inconsistent with the stored configuration.
    ModelDimensionMismatch,
    /// Model stream ended mid-weights.
    ModelTruncated,
    /// Model stream has bytes left over after the last weight.
    ModelTrailingData,
    /// A weight became NaN or infinite.
    NonFiniteWeights,
    /// An operation received an empty input it cannot work with.
    EmptyInput(&'static str),
    /// A labels CSV line could not be parsed.
    LabelParse { line: usize, message: String },
    /// The same image id appears twice in a labels file.
    DuplicateImageId(String),
    /// A label lies outside its image.
    LabelOutOfBounds { x: f64, y: f64, width: usize, height: usize },
    /// A parameter that must be at least one was zero.
    ZeroCount(&'static str),
    /// Fraction arguments must lie strictly between 0 and 1.
    BadFraction(f64),
    /// Aligned sequences have different lengths.
    LengthMismatch { left: usize, right: usize },
    /// Curves being combined disagree on their threshold range.
    TMaxMismatch { left: usize, right: usize },
    /// The detector is missing a model required by its mode.
    MissingModel(&'static str),
    /// Invalid synthesis specification.
    InvalidSynthSpec(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidConfig(msg) => write!(f, "invalid network config: {msg}"),
            Error::ShapeMismatch { expected, actual } => {
                write!(f, "shape mismatch: expected {expected} values, got {actual}")
            }
            Error::OutOfBounds { x, y, size, width, height } => write!(
                f,
                "window {size}x{size} at ({x}, {y}) leaves the {width}x{height} image"
            ),
            Error::ImageTooSmall { width, height, needed } => {
                write!(f, "image {width}x{height} is smaller than the {needed}x{needed} window")
            }
            Error::NonPositiveFactor => write!(f, "resize factor must be positive"),
            Error::PixelOutOfRange(v) => write!(f, "pixel intensity {v} outside [0, 1]"),
            Error::PgmBadMagic => write!(f, "bad magic: not a binary PGM (P5) stream"),
            Error::PgmBadMaxval(v) => write!(f, "unsupported PGM maxval {v} (expected 255)"),
            Error::PgmMalformedHeader(msg) => write!(f, "malformed PGM header: {msg}"),
            Error::PgmTruncated => write!(f, "truncated PGM payload"),
            Error::ModelBadMagic => write!(f, "bad magic: not a model file"),
            Error::ModelBadVersion(v) => write!(f, "unsupported model format version {v}"),
            Error::ModelDimensionMismatch => write!(f, "model dimension mismatch"),
            Error::ModelTruncated => write!(f, "truncated stream while reading model"),
            Error::ModelTrailingData => write!(f, "trailing data after model weights"),
            Error::NonFiniteWeights => write!(f, "non-finite weight encountered"),
            Error::EmptyInput(what) => write!(f, "empty input: {what}"),
            Error::LabelParse { line, message } => {
                write!(f, "labels line {line}: {message}")
            }
            Error::DuplicateImageId(id) => write!(f, "duplicate image id: {id}"),
            Error::LabelOutOfBounds { x, y, width, height } => {
                write!(f, "label ({x}, {y}) outside {width}x{height} image")
            }
            Error::ZeroCount(what) => write!(f, "{what} must be at least 1"),
            Error::BadFraction(v) => write!(f, "fraction {v} not in (0, 1)"),
            Error::LengthMismatch { left, right } => {
                write!(f, "length mismatch: {left} vs {right}")
            }
            Error::TMaxMismatch { left, right } => {
                write!(f, "curves disagree on t_max: {left} vs {right}")
            }
            Error::MissingModel(which) => write!(f, "mode requires a {which} model"),
            Error::InvalidSynthSpec(msg) => write!(f, "invalid synthesis spec: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
