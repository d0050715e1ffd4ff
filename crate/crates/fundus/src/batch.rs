//! Batch driver: input discovery, mask lookup, method dispatch and output
//! layout.

use std::fs;
use std::path::{Path, PathBuf};

use fundus_core::pipeline::{enhance, luminosity_levels, EnhanceConfig, Method};
use fundus_core::{FovMask, Rgb8Image};

use crate::io::{has_input_extension, read_mask, read_rgb, write_enhanced, OutputFormat, INPUT_EXTENSIONS};
use crate::report::{measure, MetricsRecord, Regions};
use crate::{Error, Result};

#[derive(Debug, Clone, Default)]
pub struct BatchConfig {
    pub enhance: EnhanceConfig,
    /// Field-of-view masks, matched to images by file stem.
    pub mask_dir: Option<PathBuf>,
    /// Vessel annotations for Michelson contrast, matched like `mask_dir`.
    pub vessel_dir: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Succeeded with a degraded input, e.g. a missing mask.
    Warning(String),
    Error(String),
}

impl Status {
    pub fn is_error(&self) -> bool {
        matches!(self, Status::Error(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobResult {
    pub image_id: String,
    pub method: Method,
    pub output_path: Option<PathBuf>,
    pub metrics: Option<MetricsRecord>,
    pub status: Status,
}

/// A single file, or the supported images directly inside a directory,
/// sorted by path.
pub fn collect_inputs(input: &Path) -> Result<Vec<PathBuf>> {
    if input.is_file() {
        return Ok(vec![input.to_owned()]);
    }
    if !input.is_dir() {
        return Err(Error::InputNotFound(input.to_owned()));
    }
    let mut files = Vec::new();
    for entry in fs::read_dir(input)? {
        let path = entry?.path();
        if path.is_file() && has_input_extension(&path) {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

pub fn image_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Looks for `<stem>.<ext>` then `<stem>_mask.<ext>`.
pub fn find_companion(dir: &Path, stem: &str) -> Option<PathBuf> {
    [stem.to_owned(), format!("{stem}_mask")]
        .iter()
        .flat_map(|base| INPUT_EXTENSIONS.iter().map(move |ext| dir.join(format!("{base}.{ext}"))))
        .find(|p| p.is_file())
}

fn load_companion(dir: Option<&Path>, stem: &str, img: &Rgb8Image, what: &str, warnings: &mut Vec<String>) -> Option<FovMask> {
    let dir = dir?;
    let Some(path) = find_companion(dir, stem) else {
        warnings.push(format!("{what} not found"));
        return None;
    };
    match read_mask(&path) {
        Ok(mask) if mask.dimensions() == img.dimensions() => Some(mask),
        Ok(_) => {
            warnings.push(format!("{what} size mismatch"));
            None
        }
        Err(e) => {
            warnings.push(format!("{what} unreadable: {e}"));
            None
        }
    }
}

fn process_image(path: &Path, methods: &[Method], cfg: &BatchConfig, out_path: &dyn Fn(Method, &str, bool) -> PathBuf) -> Vec<JobResult> {
    let id = image_id(path);
    let failed = |status: String| {
        methods
            .iter()
            .map(|&method| JobResult {
                image_id: id.clone(),
                method,
                output_path: None,
                metrics: None,
                status: Status::Error(status.clone()),
            })
            .collect()
    };
    let img = match read_rgb(path) {
        Ok(img) => img,
        Err(e) => return failed(e.to_string()),
    };

    let mut warnings = Vec::new();
    let fov = load_companion(cfg.mask_dir.as_deref(), &id, &img, "mask", &mut warnings);
    if fov.as_ref().is_some_and(|m| m.count() == 0) {
        warnings.push("mask selects no pixels".to_owned());
    }
    let fov = fov.filter(|m| m.count() > 0);
    let regions = load_companion(cfg.vessel_dir.as_deref(), &id, &img, "vessel mask", &mut warnings)
        .and_then(|v| Regions::from_masks(&v, fov.as_ref()).ok())
        .filter(|r| {
            let usable = r.vessels.count() > 0 && r.background.count() > 0;
            if !usable {
                warnings.push("vessel mask leaves an empty region".to_owned());
            }
            usable
        });
    let ok_status = if warnings.is_empty() {
        Status::Ok
    } else {
        Status::Warning(warnings.join("; "))
    };
    let reference = luminosity_levels(&img);

    methods
        .iter()
        .map(|&method| {
            let run = || -> Result<(PathBuf, MetricsRecord)> {
                let out = enhance(&img, method, &cfg.enhance, fov.as_ref())?;
                let color = matches!(out, fundus_core::pipeline::Enhanced::Color(_));
                let dest = out_path(method, &id, color);
                if let Some(parent) = dest.parent() {
                    fs::create_dir_all(parent)?;
                }
                write_enhanced(&dest, &out, cfg.format)?;
                let record = measure(&id, method, &out.luminance(), &reference, regions.as_ref())?;
                Ok((dest, record))
            };
            match run() {
                Ok((dest, record)) => JobResult {
                    image_id: id.clone(),
                    method,
                    output_path: Some(dest),
                    metrics: Some(record),
                    status: ok_status.clone(),
                },
                Err(e) => JobResult {
                    image_id: id.clone(),
                    method,
                    output_path: None,
                    metrics: None,
                    status: Status::Error(e.to_string()),
                },
            }
        })
        .collect()
}

/// Runs one method over every input, writing `<out_dir>/<image_id>.<ext>`.
pub fn run_enhance(input: &Path, method: Method, cfg: &BatchConfig) -> Result<Vec<JobResult>> {
    cfg.enhance.validate()?;
    let inputs = collect_inputs(input)?;
    fs::create_dir_all(&cfg.out_dir)?;
    let layout = |_: Method, id: &str, color: bool| cfg.out_dir.join(format!("{id}.{}", cfg.format.extension(color)));
    Ok(inputs
        .iter()
        .flat_map(|p| process_image(p, &[method], cfg, &layout))
        .collect())
}

/// Runs all six methods, writing `<out_dir>/<method>/<image_id>.<ext>`.
/// Results are ordered by image id, then by method.
pub fn run_compare(input: &Path, cfg: &BatchConfig) -> Result<Vec<JobResult>> {
    cfg.enhance.validate()?;
    let inputs = collect_inputs(input)?;
    fs::create_dir_all(&cfg.out_dir)?;
    let layout = |m: Method, id: &str, color: bool| {
        cfg.out_dir
            .join(m.name())
            .join(format!("{id}.{}", cfg.format.extension(color)))
    };
    let mut jobs: Vec<JobResult> = inputs
        .iter()
        .flat_map(|p| process_image(p, &Method::ALL, cfg, &layout))
        .collect();
    jobs.sort_by(|a, b| (&a.image_id, a.method).cmp(&(&b.image_id, b.method)));
    Ok(jobs)
}
