//! Binary PGM (P5) codec, maxval 255.
//!
//! Header comments (`#` to end of line) are tolerated on read and never
//! written. Byte `v` maps to intensity `v / 255`; writing rounds half up,
//! so a load/save round trip reproduces the raster payload byte for byte.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::imaging::GrayImage;

/// Parses a binary PGM stream.
pub fn decode(bytes: &[u8]) -> Result<GrayImage> {
    if bytes.len() < 2 || &bytes[..2] != b"P5" {
        return Err(Error::PgmBadMagic);
    }
    let mut pos = 2;
    let width = read_header_value(bytes, &mut pos)?;
    let height = read_header_value(bytes, &mut pos)?;
    let maxval = read_header_value(bytes, &mut pos)?;
    if maxval != 255 {
        return Err(Error::PgmBadMaxval(maxval as u32));
    }
    // Exactly one whitespace byte separates the header from the raster.
    if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
        return Err(Error::PgmMalformedHeader("missing separator before raster".to_string()));
    }
    pos += 1;
    let count = width * height;
    if bytes.len() < pos + count {
        return Err(Error::PgmTruncated);
    }
    let pixels: Vec<f64> = bytes[pos..pos + count].iter().map(|&b| f64::from(b) / 255.0).collect();
    GrayImage::new(width, height, pixels)
}

/// Serializes an image as binary PGM.
pub fn encode(image: &GrayImage) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", image.width(), image.height());
    let mut out = Vec::with_capacity(header.len() + image.pixels().len());
    out.extend_from_slice(header.as_bytes());
    out.extend(image.pixels().iter().map(|&v| libm::round(v * 255.0) as u8));
    out
}

fn read_header_value(bytes: &[u8], pos: &mut usize) -> Result<usize> {
    // Skip whitespace and comments.
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
        } else {
            break;
        }
    }
    let start = *pos;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == start {
        return Err(Error::PgmMalformedHeader(format!("expected digits at byte {start}")));
    }
    let mut value = 0usize;
    for &b in &bytes[start..*pos] {
        value = value
            .checked_mul(10)
            .and_then(|v| v.checked_add((b - b'0') as usize))
            .ok_or_else(|| Error::PgmMalformedHeader("header value overflow".to_string()))?;
    }
    Ok(value)
}
