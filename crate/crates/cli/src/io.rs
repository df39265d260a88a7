//! Path-based wrappers around the byte-level codecs, plus the results CSV.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use pupil_core::datagen::{labels_to_csv, parse_labels_csv, PupilLabel};
use pupil_core::imaging::{pgm, GrayImage};
use pupil_core::nn::codec;
use pupil_core::nn::CnnModel;
use pupil_core::pipeline::DetectionResult;

pub fn load_pgm(path: &Path) -> Result<GrayImage> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    pgm::decode(&bytes).with_context(|| format!("decoding {}", path.display()))
}

pub fn save_pgm(path: &Path, image: &GrayImage) -> Result<()> {
    fs::write(path, pgm::encode(image)).with_context(|| format!("writing {}", path.display()))
}

pub fn load_model(path: &Path) -> Result<CnnModel> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    codec::decode_model(&bytes).with_context(|| format!("decoding {}", path.display()))
}

pub fn save_model(path: &Path, model: &CnnModel) -> Result<()> {
    fs::write(path, codec::encode_model(model))
        .with_context(|| format!("writing {}", path.display()))
}

pub fn load_labels(path: &Path) -> Result<Vec<PupilLabel>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_labels_csv(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn save_labels(path: &Path, labels: &[PupilLabel]) -> Result<()> {
    fs::write(path, labels_to_csv(labels)).with_context(|| format!("writing {}", path.display()))
}

/// PGM files to process for an `--images` argument: either the file itself
/// or, for a directory, every `.pgm` inside it in lexicographic order.
pub fn discover_images(path: &Path) -> Result<Vec<PathBuf>> {
    if path.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    if !path.is_dir() {
        bail!("{} is neither a file nor a directory", path.display());
    }
    let mut files: Vec<PathBuf> = fs::read_dir(path)
        .with_context(|| format!("listing {}", path.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e.eq_ignore_ascii_case("pgm")))
        .collect();
    files.sort();
    Ok(files)
}

/// One row of a detection results CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub image_id: String,
    pub result: DetectionResult,
}

/// Serializes results as
/// `image_id,coarse_x,coarse_y,coarse_conf,fine_x,fine_y,fine_conf`.
/// Floats use shortest round-trip formatting so the file parses back
/// losslessly.
pub fn results_to_csv(rows: &[ResultRow]) -> String {
    let mut out = String::from("image_id,coarse_x,coarse_y,coarse_conf,fine_x,fine_y,fine_conf\n");
    for row in rows {
        let r = &row.result;
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.image_id,
            r.coarse_x,
            r.coarse_y,
            r.coarse_confidence,
            r.fine_x,
            r.fine_y,
            r.fine_confidence
        ));
    }
    out
}

pub fn parse_results_csv(text: &str) -> Result<Vec<ResultRow>> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.is_empty() || (i == 0 && line.starts_with("image_id")) {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            bail!("results line {}: expected 7 fields, got {}", i + 1, fields.len());
        }
        let num = |j: usize| -> Result<f64> {
            fields[j]
                .trim()
                .parse()
                .with_context(|| format!("results line {}: bad number {:?}", i + 1, fields[j]))
        };
        rows.push(ResultRow {
            image_id: fields[0].to_string(),
            result: DetectionResult {
                coarse_x: num(1)?,
                coarse_y: num(2)?,
                coarse_confidence: num(3)?,
                fine_x: num(4)?,
                fine_y: num(5)?,
                fine_confidence: num(6)?,
            },
        });
    }
    Ok(rows)
}

pub fn read_results(path: &Path) -> Result<Vec<ResultRow>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_results_csv(&text)
}
