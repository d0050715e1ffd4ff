//! PNG / PPM / PGM reading and writing.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;
use std::str::FromStr;

use fundus_core::pipeline::Enhanced;
use fundus_core::{FovMask, Plane, Rgb8Image};
use image::codecs::png::PngEncoder;
use image::codecs::pnm::{PnmEncoder, PnmSubtype, SampleEncoding};
use image::{ExtendedColorType, ImageEncoder};

use crate::{Error, Result};

/// Extensions picked up when scanning a directory.
pub const INPUT_EXTENSIONS: [&str; 3] = ["png", "ppm", "pgm"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Png,
    /// Binary netpbm: P5 for gray outputs, P6 for color.
    Ppm,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "png" => Ok(OutputFormat::Png),
            "ppm" => Ok(OutputFormat::Ppm),
            other => Err(format!("unknown format '{other}', expected png or ppm")),
        }
    }
}

impl OutputFormat {
    pub fn extension(self, color: bool) -> &'static str {
        match (self, color) {
            (OutputFormat::Png, _) => "png",
            (OutputFormat::Ppm, true) => "ppm",
            (OutputFormat::Ppm, false) => "pgm",
        }
    }
}

pub fn has_input_extension(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| INPUT_EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()))
}

fn open(path: &Path) -> Result<image::DynamicImage> {
    image::open(path).map_err(|source| Error::UnreadableImage {
        path: path.to_owned(),
        source,
    })
}

/// Reads any supported file as 8-bit RGB; gray inputs are replicated.
pub fn read_rgb(path: &Path) -> Result<Rgb8Image> {
    let rgb = open(path)?.to_rgb8();
    let (w, h) = rgb.dimensions();
    Ok(Rgb8Image::from_interleaved(
        w as usize,
        h as usize,
        rgb.as_raw(),
    )?)
}

/// Reads a binary mask; pixels at or above mid-gray are selected.
pub fn read_mask(path: &Path) -> Result<FovMask> {
    let gray = open(path)?.to_luma8();
    let (w, h) = gray.dimensions();
    let bits = gray.as_raw().iter().map(|&v| v >= 128).collect();
    Ok(FovMask::new(w as usize, h as usize, bits)?)
}

fn encode(path: &Path, bytes: &[u8], w: usize, h: usize, color: bool, format: OutputFormat) -> Result<()> {
    let wrap = |source| Error::ImageWrite {
        path: path.to_owned(),
        source,
    };
    let out = BufWriter::new(File::create(path)?);
    let kind = if color {
        ExtendedColorType::Rgb8
    } else {
        ExtendedColorType::L8
    };
    let (w, h) = (w as u32, h as u32);
    match format {
        OutputFormat::Png => PngEncoder::new(out)
            .write_image(bytes, w, h, kind)
            .map_err(wrap),
        OutputFormat::Ppm => {
            let subtype = if color {
                PnmSubtype::Pixmap(SampleEncoding::Binary)
            } else {
                PnmSubtype::Graymap(SampleEncoding::Binary)
            };
            PnmEncoder::new(out)
                .with_subtype(subtype)
                .write_image(bytes, w, h, kind)
                .map_err(wrap)
        }
    }
}

/// Writes a plane as 8-bit gray, mapping its declared range onto `0..=255`.
pub fn write_plane(path: &Path, plane: &Plane, format: OutputFormat) -> Result<()> {
    let (w, h) = plane.dimensions();
    encode(path, &plane.to_levels(), w, h, false, format)
}

pub fn write_rgb(path: &Path, img: &Rgb8Image, format: OutputFormat) -> Result<()> {
    let (w, h) = img.dimensions();
    encode(path, &img.to_interleaved(), w, h, true, format)
}

pub fn write_enhanced(path: &Path, out: &Enhanced, format: OutputFormat) -> Result<()> {
    match out {
        Enhanced::Gray(p) => write_plane(path, p, format),
        Enhanced::Color(img) => write_rgb(path, img, format),
    }
}
