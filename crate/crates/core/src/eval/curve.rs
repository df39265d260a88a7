use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Detection rate as a function of the integer pixel-error threshold:
/// `rate(t)` is the fraction of predictions within Euclidean distance `t`
/// of their label. Non-decreasing in `t` by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalCurve {
    rates: Vec<f64>,
}

impl EvalCurve {
    pub fn t_max(&self) -> usize {
        self.rates.len() - 1
    }

    /// Rate at integer threshold `t` (clamped to `t_max`).
    pub fn rate_at(&self, t: usize) -> f64 {
        self.rates[t.min(self.t_max())]
    }

    pub fn rates(&self) -> &[f64] {
        &self.rates
    }

    /// `threshold,rate` CSV with one row per integer threshold.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("threshold,rate\n");
        for (t, rate) in self.rates.iter().enumerate() {
            out.push_str(&format!("{t},{rate:.6}\n"));
        }
        out
    }
}

/// Builds the detection-rate curve for aligned prediction/label pairs over
/// thresholds `0..=t_max`.
pub fn detection_rate_curve(
    predictions: &[(f64, f64)],
    labels: &[(f64, f64)],
    t_max: usize,
) -> Result<EvalCurve> {
    if predictions.len() != labels.len() {
        return Err(Error::LengthMismatch { left: predictions.len(), right: labels.len() });
    }
    if predictions.is_empty() {
        return Err(Error::EmptyInput("prediction set"));
    }
    let distances: Vec<f64> = predictions
        .iter()
        .zip(labels)
        .map(|(p, l)| libm::sqrt((p.0 - l.0) * (p.0 - l.0) + (p.1 - l.1) * (p.1 - l.1)))
        .collect();
    let n = distances.len() as f64;
    let rates = (0..=t_max)
        .map(|t| distances.iter().filter(|&&d| d <= t as f64).count() as f64 / n)
        .collect();
    Ok(EvalCurve { rates })
}
