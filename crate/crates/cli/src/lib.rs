//! File formats, parallel helpers, and command implementations behind the
//! `pupil` binary. The algorithmic work lives in `pupil-core`; this crate
//! owns everything that touches the filesystem or spawns threads.

pub mod commands;
pub mod io;
pub mod par;
pub mod runcfg;
