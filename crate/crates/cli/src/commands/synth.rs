use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use pupil_core::datagen::{synth_eye, SynthSpec};
use pupil_core::rng::sub_seed;

use crate::io;
use crate::par;
use crate::runcfg::FileConfig;

/// Generate a synthetic eye-image corpus with exact ground truth.
#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Output directory for PGM images and labels.csv.
    #[arg(long)]
    pub out: PathBuf,
    /// Number of images to generate.
    #[arg(long)]
    pub count: Option<usize>,
    /// Master seed; every image derives its own stream from it.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Optional key=value config file (flags take precedence).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Image width in pixels.
    #[arg(long)]
    pub width: Option<usize>,
    /// Image height in pixels.
    #[arg(long)]
    pub height: Option<usize>,
    /// Pupil major semi-axis range, "lo:hi".
    #[arg(long)]
    pub pupil_radius: Option<String>,
    /// Iris radius range, "lo:hi".
    #[arg(long)]
    pub iris_radius: Option<String>,
    /// Pupil aspect-ratio range, "lo:hi".
    #[arg(long)]
    pub aspect: Option<String>,
    /// Reflection blob count range, "lo:hi".
    #[arg(long)]
    pub reflections: Option<String>,
    /// Reflection intensity range, "lo:hi".
    #[arg(long)]
    pub reflection_intensity: Option<String>,
    /// Illumination gradient strength range, "lo:hi".
    #[arg(long)]
    pub gradient: Option<String>,
    /// Additive Gaussian noise sigma.
    #[arg(long)]
    pub noise: Option<f64>,
    /// Blur sigma range, "lo:hi".
    #[arg(long)]
    pub blur: Option<String>,
}

pub fn run_synth(args: SynthArgs) -> Result<()> {
    let cfg = FileConfig::load_opt(args.config.as_deref())?;
    let count = cfg.resolve(args.count, "count", 100)?;
    let seed = cfg.resolve(args.seed, "seed", 0)?;
    let spec = build_spec(&args, &cfg)?;
    spec.validate()?;

    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;

    // Render in parallel; write single-threaded in index order.
    let indices: Vec<usize> = (0..count).collect();
    let rendered = par::parallel_map(&indices, par::worker_count(), |_, &i| {
        synth_eye(&spec, sub_seed(seed, &format!("synth:{i}")))
    });

    let mut labels = Vec::with_capacity(count);
    for (i, item) in rendered.into_iter().enumerate() {
        let (image, mut label) = item?;
        let name = format!("eye_{:05}.pgm", i + 1);
        io::save_pgm(&args.out.join(&name), &image)?;
        label.image_id = name;
        labels.push(label);
    }
    io::save_labels(&args.out.join("labels.csv"), &labels)?;
    println!("wrote {count} images and labels.csv to {}", args.out.display());
    Ok(())
}

fn build_spec(args: &SynthArgs, cfg: &FileConfig) -> Result<SynthSpec> {
    let d = SynthSpec::default();
    let range = |flag: &Option<String>, key: &str, dflt: (f64, f64)| -> Result<(f64, f64)> {
        let raw = cfg.resolve(flag.clone(), key, format!("{}:{}", dflt.0, dflt.1))?;
        parse_range(&raw).map_err(anyhow::Error::msg)
    };
    let refl_raw = cfg.resolve(
        args.reflections.clone(),
        "reflections",
        format!("{}:{}", d.reflection_count.0, d.reflection_count.1),
    )?;
    let (rlo, rhi) = parse_range(&refl_raw).map_err(anyhow::Error::msg)?;
    Ok(SynthSpec {
        width: cfg.resolve(args.width, "width", d.width)?,
        height: cfg.resolve(args.height, "height", d.height)?,
        pupil_radius: range(&args.pupil_radius, "pupil_radius", d.pupil_radius)?,
        iris_radius: range(&args.iris_radius, "iris_radius", d.iris_radius)?,
        aspect: range(&args.aspect, "aspect", d.aspect)?,
        reflection_count: (rlo as usize, rhi as usize),
        reflection_intensity: range(
            &args.reflection_intensity,
            "reflection_intensity",
            d.reflection_intensity,
        )?,
        gradient: range(&args.gradient, "gradient", d.gradient)?,
        noise_sigma: cfg.resolve(args.noise, "noise", d.noise_sigma)?,
        blur_radius: range(&args.blur, "blur", d.blur_radius)?,
    })
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("range {s:?}: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("range {s:?}: {e}"))?;
    Ok((lo, hi))
}
