//! Linear blending of the fuzzy and CLAHE outputs, and yellow recoloring.

use crate::image::{Hls, Plane, Rgb8Image};
use crate::{round_half_up, Error, Result};

/// Weights of `w1 · fuzzy + w2 · clahe − c`, in the `[0, 255]` domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlendConfig {
    pub w1: f64,
    pub w2: f64,
    pub c: f64,
}

impl Default for BlendConfig {
    fn default() -> Self {
        Self {
            w1: 0.6,
            w2: 0.8,
            c: -0.4,
        }
    }
}

impl BlendConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.w1.is_finite() && self.w2.is_finite() && self.c.is_finite()) {
            return Err(Error::Config("blend weights must be finite"));
        }
        if self.w1 < 0.0 || self.w2 < 0.0 || self.w1 + self.w2 <= 0.0 {
            return Err(Error::Config("blend weights must be non-negative with a positive sum"));
        }
        Ok(())
    }
}

/// Target hue and saturation for recoloring a single-channel result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HueConfig {
    pub hue_degrees: f64,
    pub saturation: f64,
}

impl Default for HueConfig {
    fn default() -> Self {
        Self {
            hue_degrees: 60.0,
            saturation: 0.6,
        }
    }
}

impl HueConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..360.0).contains(&self.hue_degrees) {
            return Err(Error::Config("hue must lie in [0, 360)"));
        }
        if !(0.0..=1.0).contains(&self.saturation) {
            return Err(Error::Config("saturation must lie in [0, 1]"));
        }
        Ok(())
    }
}

/// `clamp(round(w1 · a + w2 · b − c), 0, 255)` per pixel.
pub fn linear_blend(fuzzy: &Plane, clahe: &Plane, cfg: &BlendConfig) -> Result<Plane> {
    if fuzzy.dimensions() != clahe.dimensions() {
        return Err(Error::DimensionMismatch(fuzzy.dimensions(), clahe.dimensions()));
    }
    cfg.validate()?;
    let data = fuzzy
        .samples()
        .iter()
        .zip(clahe.samples())
        .map(|(&a, &b)| round_half_up(cfg.w1 * a + cfg.w2 * b - cfg.c).clamp(0.0, 255.0))
        .collect();
    Ok(Plane::from_parts(
        fuzzy.width(),
        fuzzy.height(),
        (0.0, 255.0),
        data,
    ))
}

/// Maps a `[0, 100]` luminosity plane onto integer levels `0..=255`.
pub fn rescale_to_255(plane: &Plane) -> Plane {
    let data = plane
        .samples()
        .iter()
        .map(|&v| round_half_up(v * 255.0 / 100.0).clamp(0.0, 255.0))
        .collect();
    Plane::from_parts(plane.width(), plane.height(), (0.0, 255.0), data)
}

/// Renders each level as the HLS color `(hue, v / 2.55, saturation)`.
pub fn yellow_colorize(plane: &Plane, cfg: &HueConfig) -> Result<Rgb8Image> {
    cfg.validate()?;
    let mut palette = [[0u8; 3]; 256];
    for (v, rgb) in palette.iter_mut().enumerate() {
        *rgb = Hls {
            h: cfg.hue_degrees,
            l: v as f64 * 100.0 / 255.0,
            s: cfg.saturation,
        }
        .to_rgb();
    }
    let pixels = plane
        .samples()
        .iter()
        .map(|&s| palette[round_half_up(s).clamp(0.0, 255.0) as usize])
        .collect();
    Rgb8Image::new(plane.width(), plane.height(), pixels)
}
