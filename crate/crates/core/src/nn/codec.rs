//! Binary model format.
//!
//! Layout, little-endian throughout: magic `PNET`, format version `u32`,
//! the seven config fields as `u32` (input_size, kernel_size, conv_stride,
//! num_filters, pool_window, pool_stride, num_perceptrons), then every
//! weight as `f64` in storage order: conv kernels (filter-major,
//! row-major), conv biases, fc weights (perceptron-major), fc biases,
//! output weights, output bias. A round trip is bit-exact.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::nn::{CnnConfig, CnnModel};

pub const MAGIC: [u8; 4] = *b"PNET";
pub const VERSION: u32 = 1;

/// Serializes a model.
pub fn encode_model(model: &CnnModel) -> Vec<u8> {
    let cfg = &model.config;
    let mut out = Vec::with_capacity(4 + 4 + 7 * 4 + model.param_count() * 8);
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    for field in [
        cfg.input_size,
        cfg.kernel_size,
        cfg.conv_stride,
        cfg.num_filters,
        cfg.pool_window,
        cfg.pool_stride,
        cfg.num_perceptrons,
    ] {
        out.extend_from_slice(&(field as u32).to_le_bytes());
    }
    for w in model.param_iter() {
        out.extend_from_slice(&w.to_le_bytes());
    }
    out
}

/// Deserializes and validates a model.
pub fn decode_model(bytes: &[u8]) -> Result<CnnModel> {
    let mut r = Reader { bytes, pos: 0 };
    let magic = r.take(4)?;
    if magic != MAGIC {
        return Err(Error::ModelBadMagic);
    }
    let version = r.u32()?;
    if version != VERSION {
        return Err(Error::ModelBadVersion(version));
    }
    let config = CnnConfig {
        input_size: r.u32()? as usize,
        kernel_size: r.u32()? as usize,
        conv_stride: r.u32()? as usize,
        num_filters: r.u32()? as usize,
        pool_window: r.u32()? as usize,
        pool_stride: r.u32()? as usize,
        num_perceptrons: r.u32()? as usize,
    };
    config.validate().map_err(|_| Error::ModelDimensionMismatch)?;

    let k2 = config.kernel_size * config.kernel_size;
    let model = CnnModel {
        conv_kernels: r.f64s(config.num_filters * k2)?,
        conv_biases: r.f64s(config.num_filters)?,
        fc_weights: r.f64s(config.num_perceptrons * config.fc_inputs())?,
        fc_biases: r.f64s(config.num_perceptrons)?,
        out_weights: r.f64s(config.num_perceptrons)?,
        out_bias: r.f64()?,
        config,
    };
    if r.pos != bytes.len() {
        return Err(Error::ModelTrailingData);
    }
    model.validate()?;
    Ok(model)
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.bytes.len() {
            return Err(Error::ModelTruncated);
        }
        let slice = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn f64s(&mut self, n: usize) -> Result<Vec<f64>> {
        let raw = self.take(n * 8)?;
        Ok(raw.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect())
    }
}
