//! Metrics and membership-curve CSV output.

use std::io::Write;
use std::path::Path;

use fundus_core::fuzzy::{evaluate_memberships, membership_set};
use fundus_core::metrics::{entropy, michelson_contrast, psnr, rms_contrast};
use fundus_core::pipeline::Method;
use fundus_core::{FovMask, Plane};

use crate::batch::{JobResult, Status};
use crate::Result;

pub const METRICS_HEADER: [&str; 9] = [
    "image_id",
    "method",
    "mean_l",
    "std_l",
    "entropy_bits",
    "rms_contrast",
    "michelson",
    "psnr_db",
    "status",
];

pub const MEMBERSHIP_HEADER: [&str; 6] = ["x", "very_dark", "dark", "medium", "bright", "very_bright"];

/// Measurements of one enhanced output.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRecord {
    pub image_id: String,
    pub method: Method,
    /// Mean luminosity on the `[0, 100]` scale.
    pub mean_l: f64,
    pub std_l: f64,
    pub entropy_bits: f64,
    /// Standard deviation of the 8-bit levels.
    pub rms_contrast: f64,
    /// Vessel / background contrast, only with vessel masks.
    pub michelson: Option<f64>,
    pub psnr_db: Option<f64>,
}

/// Vessel and background regions for Michelson contrast.
#[derive(Debug, Clone)]
pub struct Regions {
    pub vessels: FovMask,
    pub background: FovMask,
}

impl Regions {
    /// Splits the field of view (or the whole frame) into vessel and
    /// non-vessel pixels.
    pub fn from_masks(vessels: &FovMask, fov: Option<&FovMask>) -> fundus_core::Result<Self> {
        let (w, h) = vessels.dimensions();
        let inside = |i: usize| fov.is_none_or(|m| m.bits()[i]);
        if let Some(m) = fov {
            if m.dimensions() != (w, h) {
                return Err(fundus_core::Error::MaskMismatch {
                    mask_w: m.width(),
                    mask_h: m.height(),
                    width: w,
                    height: h,
                });
            }
        }
        let v = vessels.bits();
        let fg = (0..v.len()).map(|i| v[i] && inside(i)).collect();
        let bg = (0..v.len()).map(|i| !v[i] && inside(i)).collect();
        Ok(Self {
            vessels: FovMask::new(w, h, fg)?,
            background: FovMask::new(w, h, bg)?,
        })
    }
}

/// Computes the record for `levels` (8-bit output luminance) against the
/// input's 8-bit luminosity.
pub fn measure(
    image_id: &str,
    method: Method,
    levels: &Plane,
    reference: &Plane,
    regions: Option<&Regions>,
) -> fundus_core::Result<MetricsRecord> {
    let n = levels.len() as f64;
    let mean = levels.samples().iter().sum::<f64>() / n;
    let rms = rms_contrast(levels);
    let michelson = regions
        .map(|r| michelson_contrast(levels, &r.vessels, &r.background))
        .transpose()?;
    Ok(MetricsRecord {
        image_id: image_id.to_owned(),
        method,
        mean_l: mean * 100.0 / 255.0,
        std_l: rms * 100.0 / 255.0,
        entropy_bits: entropy(levels),
        rms_contrast: rms,
        michelson,
        psnr_db: Some(psnr(reference, levels)?),
    })
}

fn fixed(v: f64) -> String {
    if v.is_infinite() && v > 0.0 {
        "inf".to_owned()
    } else {
        format!("{v:.6}")
    }
}

fn status_cell(status: &Status) -> String {
    match status {
        Status::Ok => "ok".to_owned(),
        Status::Warning(w) => format!("ok; warning: {w}"),
        Status::Error(e) => format!("error: {e}"),
    }
}

/// One CSV row per job, in the given order.
pub fn write_metrics<W: Write>(out: W, jobs: &[JobResult]) -> Result<()> {
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(METRICS_HEADER)?;
    for job in jobs {
        let mut row = vec![job.image_id.clone(), job.method.name().to_owned()];
        match &job.metrics {
            Some(m) => {
                row.extend([m.mean_l, m.std_l, m.entropy_bits, m.rms_contrast].map(fixed));
                row.push(m.michelson.map(fixed).unwrap_or_default());
                row.push(m.psnr_db.map(fixed).unwrap_or_default());
            }
            None => row.extend(std::iter::repeat_n(String::new(), 6)),
        }
        row.push(status_cell(&job.status));
        csv.write_record(&row)?;
    }
    csv.flush()?;
    Ok(())
}

pub fn write_metrics_file(path: &Path, jobs: &[JobResult]) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    write_metrics(std::fs::File::create(path)?, jobs)
}

/// Samples the five memberships for trimmed mean `m` at x = 0, 0.5, ..., 100.
pub fn write_membership_curves<W: Write>(out: W, m: f64) -> Result<()> {
    let set = membership_set(m)?;
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(MEMBERSHIP_HEADER)?;
    for i in 0..=200u32 {
        let x = f64::from(i) * 0.5;
        let degrees = evaluate_memberships(x, &set).to_array();
        let mut row = vec![format!("{x:.1}")];
        row.extend(degrees.iter().map(|d| d.to_string()));
        csv.write_record(&row)?;
    }
    csv.flush()?;
    Ok(())
}
