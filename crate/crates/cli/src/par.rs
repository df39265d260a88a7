//! Thread fan-out with deterministic results.
//!
//! The worker count comes from `PUPILNET_THREADS` (0 or unset means all
//! cores). Parallel sweeps chunk the window grid by rows; each worker
//! reports its best window with the in-chunk row-major tie-break, and the
//! merge keeps the earliest chunk on equal ratings, so the outcome is
//! identical to the sequential sweep.

use std::thread;

use anyhow::Result;
use pupil_core::imaging::GrayImage;
use pupil_core::nn::CnnModel;
use pupil_core::pipeline::{score_window, window_grid, ConvPlanes};

/// Worker count for parallel sections.
pub fn worker_count() -> usize {
    match std::env::var("PUPILNET_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        Some(0) | None => thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        Some(n) => n,
    }
}

/// Parallel version of `pupil_core::pipeline::coarse_detect`: same result,
/// window rows fanned out across `threads` workers.
pub fn parallel_coarse_detect(
    model: &CnnModel,
    image: &GrayImage,
    threads: usize,
) -> Result<(f64, f64, f64)> {
    let window = model.config.input_size;
    let (nx, ny) = window_grid(image, window)?;
    let planes = ConvPlanes::compute(model, image)?;
    let threads = threads.clamp(1, ny);

    // Contiguous row ranges per worker.
    let chunk = ny.div_ceil(threads);
    let mut locals: Vec<(usize, usize, f64)> = Vec::with_capacity(threads);
    thread::scope(|scope| {
        let mut handles = Vec::with_capacity(threads);
        for t in 0..threads {
            let lo = t * chunk;
            let hi = ((t + 1) * chunk).min(ny);
            let planes = &planes;
            handles.push(scope.spawn(move || {
                let mut best = (0usize, 0usize, f64::NEG_INFINITY);
                for ty in lo..hi {
                    for tx in 0..nx {
                        let rating = score_window(model, planes, tx, ty);
                        if rating > best.2 {
                            best = (tx, ty, rating);
                        }
                    }
                }
                best
            }));
        }
        for handle in handles {
            locals.push(handle.join().expect("sweep worker panicked"));
        }
    });

    // Chunks are visited in row order, so keeping strictly-greater ratings
    // reproduces the global row-major tie-break.
    let mut best = (0usize, 0usize, f64::NEG_INFINITY);
    for local in locals {
        if local.2 > best.2 {
            best = local;
        }
    }
    let half = (window as f64 - 1.0) / 2.0;
    Ok((best.0 as f64 + half, best.1 as f64 + half, best.2))
}

/// Index-preserving parallel map over a slice.
pub fn parallel_map<T, R, F>(items: &[T], threads: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync,
{
    let threads = threads.clamp(1, items.len().max(1));
    let mut out: Vec<Option<R>> = Vec::with_capacity(items.len());
    out.resize_with(items.len(), || None);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let out_cells: Vec<std::sync::Mutex<&mut Option<R>>> =
        out.iter_mut().map(std::sync::Mutex::new).collect();
    thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let value = f(i, &items[i]);
                **out_cells[i].lock().unwrap() = Some(value);
            });
        }
    });
    drop(out_cells);
    out.into_iter().map(|v| v.expect("parallel_map slot unfilled")).collect()
}
