use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fundus::batch::{run_compare, run_enhance, BatchConfig, JobResult};
use fundus::fundus_core::baselines::ClaheConfig;
use fundus::fundus_core::blend::{BlendConfig, HueConfig};
use fundus::fundus_core::pipeline::{EnhanceConfig, Method};
use fundus::io::OutputFormat;
use fundus::report::{write_membership_curves, write_metrics_file};
use fundus::Error;

#[derive(Parser, Debug)]
#[command(name = "fundus", version, about = "Fuzzy contrast enhancement for retinal fundus images")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enhance every image with a single method.
    Enhance {
        #[command(flatten)]
        common: Common,
        /// grayscale, he, fce, clahe, fce_clahe or full.
        #[arg(long, value_parser = parse_method)]
        method: Method,
        /// Optional metrics CSV.
        #[arg(long)]
        metrics: Option<PathBuf>,
    },
    /// Run all six methods and write a metrics CSV.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        metrics: PathBuf,
    },
    /// Write the membership curves for a mean luminosity as CSV.
    Membership {
        #[arg(long)]
        mean: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Image file or directory of .png/.ppm/.pgm files.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long, default_value_t = 0.6)]
    w1: f64,
    #[arg(long, default_value_t = 0.8)]
    w2: f64,
    #[arg(long, default_value_t = -0.4, allow_hyphen_values = true)]
    c: f64,
    #[arg(long, default_value_t = 2.0)]
    clip_limit: f64,
    /// Tile grid as COLSxROWS.
    #[arg(long, default_value = "8x8", value_parser = parse_tiles)]
    tiles: (usize, usize),
    #[arg(long, default_value_t = 60.0)]
    hue: f64,
    #[arg(long, default_value_t = 0.6)]
    saturation: f64,
    /// Field-of-view masks matched by file stem.
    #[arg(long)]
    mask_dir: Option<PathBuf>,
    /// Vessel annotations matched by file stem; enables Michelson contrast.
    #[arg(long)]
    vessel_dir: Option<PathBuf>,
    #[arg(long, default_value = "png")]
    format: OutputFormat,
}

impl Common {
    fn batch_config(&self) -> BatchConfig {
        BatchConfig {
            enhance: EnhanceConfig {
                blend: BlendConfig {
                    w1: self.w1,
                    w2: self.w2,
                    c: self.c,
                },
                clahe: ClaheConfig {
                    clip_limit: self.clip_limit,
                    tiles_x: self.tiles.0,
                    tiles_y: self.tiles.1,
                },
                hue: HueConfig {
                    hue_degrees: self.hue,
                    saturation: self.saturation,
                },
            },
            mask_dir: self.mask_dir.clone(),
            vessel_dir: self.vessel_dir.clone(),
            out_dir: self.out_dir.clone(),
            format: self.format,
        }
    }
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Method::ALL.iter().map(|m| m.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn parse_tiles(s: &str) -> Result<(usize, usize), String> {
    let (x, y) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected COLSxROWS, got '{s}'"))?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad tile count '{t}': {e}"));
    Ok((n(x)?, n(y)?))
}

const USAGE_ERROR: u8 = 2;

fn summarize(jobs: &[JobResult]) -> ExitCode {
    let failed = jobs.iter().filter(|j| j.status.is_error()).count();
    for job in jobs.iter().filter(|j| j.status.is_error()) {
        eprintln!("{} [{}]: {:?}", job.image_id, job.method, job.status);
    }
    eprintln!("{} jobs, {} failed", jobs.len(), failed);
    if failed > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Enhance {
            common,
            method,
            metrics,
        } => {
            let jobs = run_enhance(&common.input, method, &common.batch_config())?;
            if let Some(path) = metrics {
                write_metrics_file(&path, &jobs)?;
            }
            Ok(summarize(&jobs))
        }
        Command::Compare { common, metrics } => {
            let jobs = run_compare(&common.input, &common.batch_config())?;
            write_metrics_file(&metrics, &jobs)?;
            Ok(summarize(&jobs))
        }
        Command::Membership { mean, out } => {
            let file = std::fs::File::create(&out)?;
            write_membership_curves(file, mean)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}
