//! Ground-truth label CSV: `image_id,x,y` with coordinates in
//! original-resolution pixels; decimal point, one label per line, optional
//! header.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::imaging::GrayImage;

/// A hand-labeled (or synthetic) pupil center for one image.
#[derive(Debug, Clone, PartialEq)]
pub struct PupilLabel {
    pub image_id: String,
    pub x: f64,
    pub y: f64,
}

impl PupilLabel {
    pub fn new(image_id: impl Into<String>, x: f64, y: f64) -> Self {
        Self { image_id: image_id.into(), x, y }
    }
}

/// Parses a labels CSV. A first line starting with `image_id` is treated as
/// a header. Malformed lines are reported with their 1-based line number;
/// duplicate image ids are rejected.
pub fn parse_labels_csv(text: &str) -> Result<Vec<PupilLabel>> {
    let mut labels = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        if i == 0 && line.starts_with("image_id") {
            continue;
        }
        let lineno = i + 1;
        let mut fields = line.split(',');
        let id = fields.next().unwrap_or("").trim();
        let x = fields.next().ok_or_else(|| missing(lineno, "x"))?;
        let y = fields.next().ok_or_else(|| missing(lineno, "y"))?;
        if fields.next().is_some() {
            return Err(Error::LabelParse {
                line: lineno,
                message: "expected exactly 3 fields".to_string(),
            });
        }
        if id.is_empty() {
            return Err(Error::LabelParse { line: lineno, message: "empty image id".to_string() });
        }
        let x: f64 = x.trim().parse().map_err(|_| bad_number(lineno, x))?;
        let y: f64 = y.trim().parse().map_err(|_| bad_number(lineno, y))?;
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::LabelParse {
                line: lineno,
                message: "non-finite coordinate".to_string(),
            });
        }
        if !seen.insert(id.to_string()) {
            return Err(Error::DuplicateImageId(id.to_string()));
        }
        labels.push(PupilLabel::new(id, x, y));
    }
    Ok(labels)
}

/// Serializes labels with the canonical header and LF line endings.
pub fn labels_to_csv(labels: &[PupilLabel]) -> String {
    let mut out = String::from("image_id,x,y\n");
    for label in labels {
        out.push_str(&format!("{},{},{}\n", label.image_id, label.x, label.y));
    }
    out
}

/// Checks that a label falls inside the image it references.
pub fn validate_label(label: &PupilLabel, image: &GrayImage) -> Result<()> {
    let (w, h) = (image.width(), image.height());
    if label.x < 0.0 || label.y < 0.0 || label.x >= w as f64 || label.y >= h as f64 {
        return Err(Error::LabelOutOfBounds { x: label.x, y: label.y, width: w, height: h });
    }
    Ok(())
}

fn missing(line: usize, what: &str) -> Error {
    Error::LabelParse { line, message: format!("missing {what} field") }
}

fn bad_number(line: usize, token: &str) -> Error {
    Error::LabelParse { line, message: format!("not a number: {:?}", token.trim()) }
}
