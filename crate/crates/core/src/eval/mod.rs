//! Evaluation: detection-rate curves over pixel-error thresholds, the
//! layer cost model, filter/weight visualization maps, and tabular curve
//! comparison.

mod compare;
mod curve;
mod filters;
mod flops;

pub use compare::compare_runs;
pub use curve::{detection_rate_curve, EvalCurve};
pub use filters::filter_maps;
pub use flops::{flop_accounting, mac_accounting, FlopBreakdown};
