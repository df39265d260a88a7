//! Command implementations. Each takes its parsed arguments and returns
//! `Err` on any failure; `main` maps that to a nonzero exit.

mod detect;
mod eval;
mod inspect;
mod synth;
mod train;

pub use detect::{run_detect, DetectArgs};
pub use eval::{run_eval, EvalArgs};
pub use inspect::{run_inspect, InspectArgs};
pub use synth::{run_synth, SynthArgs};
pub use train::{run_train, TrainArgs};
