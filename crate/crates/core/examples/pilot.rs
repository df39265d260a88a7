//! Scratch calibration run: train on a small synthetic corpus and report
//! loss curves, detection rates, and timings.

use std::time::Instant;

use pupil_core::datagen::{gen_coarse_samples, gen_fine_samples, subsample_fine, synth_eye, SynthSpec};
use pupil_core::imaging::{bicubic_resize, GrayImage};
use pupil_core::nn::{init_model, presets, train, TrainOptions};
use pupil_core::pipeline::{detect, DetectMode, PipelineConfig, PipelineModels};

fn main() {
    let n_train: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(300);
    let n_eval: usize = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(100);
    let coarse_epochs: usize = std::env::args().nth(3).and_then(|s| s.parse().ok()).unwrap_or(10);
    let coarse_only: bool = std::env::args().nth(4).map(|s| s == "coarse").unwrap_or(false);
    let spec = SynthSpec::default();

    let t0 = Instant::now();
    let train_set: Vec<_> = (0..n_train).map(|i| synth_eye(&spec, 1000 + i as u64).unwrap()).collect();
    let eval_set: Vec<_> = (0..n_eval).map(|i| synth_eye(&spec, 900_000 + i as u64).unwrap()).collect();
    println!("synth: {:?} for {} images", t0.elapsed(), n_train + n_eval);

    // Coarse samples.
    let t0 = Instant::now();
    let mut coarse_samples = Vec::new();
    let mut clamped = 0;
    for (img, label) in &train_set {
        let ds = bicubic_resize(img, 0.25).unwrap();
        let lds = ((label.x - 1.5) / 4.0, (label.y - 1.5) / 4.0);
        let set = gen_coarse_samples(&ds, lds, 24).unwrap();
        clamped += set.clamped as usize;
        coarse_samples.extend(set.samples);
    }
    println!("coarse samples: {} ({} clamped) in {:?}", coarse_samples.len(), clamped, t0.elapsed());

    let t0 = Instant::now();
    let (coarse_model, hist) = train(
        init_model(presets::by_name("C_K8P8").unwrap(), 42).unwrap(),
        &coarse_samples,
        &TrainOptions { seed: 43, epochs: coarse_epochs, ..TrainOptions::default() },
    )
    .unwrap();
    println!("coarse train: {:?}", t0.elapsed());
    println!("coarse loss history: {hist:?}");
    println!("halved: {}", hist[hist.len() - 1] < 0.5 * hist[0]);
    // Class separation diagnostic.
    let (mut v_sum, mut v_n, mut i_sum, mut i_n) = (0.0, 0, 0.0, 0);
    for s in coarse_samples.iter().take(4100) {
        let r = pupil_core::nn::forward(&coarse_model, &s.patch).unwrap();
        if s.target == 1.0 {
            v_sum += r;
            v_n += 1;
        } else {
            i_sum += r;
            i_n += 1;
        }
    }
    println!("mean rating valid {:.3} invalid {:.3}", v_sum / v_n as f64, i_sum / i_n as f64);
    if coarse_only {
        let co_cfg = PipelineConfig { mode: DetectMode::CoarseOnly, ..PipelineConfig::default() };
        let models = PipelineModels { coarse: Some(coarse_model), fine: None };
        let mut co_err = Vec::new();
        for (img, label) in &eval_set {
            let rc = detect(&co_cfg, &models, img).unwrap();
            co_err.push(dist((rc.fine_x, rc.fine_y), (label.x, label.y)));
        }
        let rate5 =
            |errs: &[f64]| errs.iter().filter(|&&e| e <= 5.0).count() as f64 / errs.len() as f64;
        let mean = |errs: &[f64]| errs.iter().sum::<f64>() / errs.len() as f64;
        println!("coarse-only rate@5px {:.3}  mean err {:.2}", rate5(&co_err), mean(&co_err));
        return;
    }

    // Fine samples.
    let t0 = Instant::now();
    let mut fine_samples = Vec::new();
    for (img, label) in &train_set {
        let set = gen_fine_samples(img, (label.x, label.y), 89).unwrap();
        fine_samples.extend(set.samples);
    }
    let fine_samples = subsample_fine(&fine_samples, 44);
    println!("fine samples: {} in {:?}", fine_samples.len(), t0.elapsed());

    let t0 = Instant::now();
    let (fine_model, fhist) = train(
        init_model(presets::by_name("F_K8P8").unwrap(), 45).unwrap(),
        &fine_samples,
        &TrainOptions { seed: 46, ..TrainOptions::default() },
    )
    .unwrap();
    println!("fine train: {:?} ({:.1} ms/sample/epoch)", t0.elapsed(),
        t0.elapsed().as_millis() as f64 / (fine_samples.len() * 10) as f64);
    println!("fine loss history: {fhist:?}");

    // Evaluation.
    let models = PipelineModels { coarse: Some(coarse_model), fine: Some(fine_model) };
    let two_cfg = PipelineConfig::default();
    let co_cfg = PipelineConfig { mode: DetectMode::CoarseOnly, ..PipelineConfig::default() };

    let t0 = Instant::now();
    let mut two_err = Vec::new();
    let mut co_err = Vec::new();
    let mut base_err = Vec::new();
    for (img, label) in &eval_set {
        let r2 = detect(&two_cfg, &models, img).unwrap();
        let rc = detect(&co_cfg, &models, img).unwrap();
        two_err.push(dist((r2.fine_x, r2.fine_y), (label.x, label.y)));
        co_err.push(dist((rc.fine_x, rc.fine_y), (label.x, label.y)));
        let b = darkest_block(img);
        base_err.push(dist(b, (label.x, label.y)));
    }
    println!("detect: {:?} ({:?}/image)", t0.elapsed(), t0.elapsed() / n_eval as u32);

    let rate5 = |errs: &[f64]| errs.iter().filter(|&&e| e <= 5.0).count() as f64 / errs.len() as f64;
    let mean = |errs: &[f64]| errs.iter().sum::<f64>() / errs.len() as f64;
    println!("two-stage  rate@5px {:.3}  mean err {:.2}", rate5(&two_err), mean(&two_err));
    println!("coarse-only rate@5px {:.3}  mean err {:.2}", rate5(&co_err), mean(&co_err));
    println!("baseline   rate@5px {:.3}  mean err {:.2}", rate5(&base_err), mean(&base_err));
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}

/// Brute-force darkest 5x5 block scan.
fn darkest_block(img: &GrayImage) -> (f64, f64) {
    let mut best = (0usize, 0usize, f64::INFINITY);
    for ty in 0..img.height() - 4 {
        for tx in 0..img.width() - 4 {
            let mut sum = 0.0;
            for y in ty..ty + 5 {
                for x in tx..tx + 5 {
                    sum += img.get(x, y);
                }
            }
            if sum < best.2 {
                best = (tx, ty, sum);
            }
        }
    }
    (best.0 as f64 + 2.0, best.1 as f64 + 2.0)
}
