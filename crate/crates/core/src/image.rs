//! Pixel containers, HLS conversion, channel extraction and luminosity
//! statistics.

use alloc::vec::Vec;

use crate::{round_half_up, Error, Result};

fn check_dims(width: usize, height: usize, len: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidDimensions { width, height });
    }
    let expected = width
        .checked_mul(height)
        .ok_or(Error::InvalidDimensions { width, height })?;
    if len != expected {
        return Err(Error::BufferLength {
            expected,
            actual: len,
        });
    }
    Ok(())
}

/// An 8-bit RGB raster stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rgb8Image {
    width: usize,
    height: usize,
    data: Vec<[u8; 3]>,
}

impl Rgb8Image {
    pub fn new(width: usize, height: usize, data: Vec<[u8; 3]>) -> Result<Self> {
        check_dims(width, height, data.len())?;
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// Builds an image from a packed `RGBRGB...` buffer.
    pub fn from_interleaved(width: usize, height: usize, bytes: &[u8]) -> Result<Self> {
        if !bytes.len().is_multiple_of(3) {
            return Err(Error::BufferLength {
                expected: width.saturating_mul(height).saturating_mul(3),
                actual: bytes.len(),
            });
        }
        let data = bytes.chunks_exact(3).map(|p| [p[0], p[1], p[2]]).collect();
        Self::new(width, height, data)
    }

    /// Replicates a gray level into all three channels.
    pub fn from_gray(width: usize, height: usize, levels: &[u8]) -> Result<Self> {
        Self::new(width, height, levels.iter().map(|&v| [v, v, v]).collect())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.data
    }

    pub fn get(&self, x: usize, y: usize) -> [u8; 3] {
        self.data[y * self.width + x]
    }

    pub fn to_interleaved(&self) -> Vec<u8> {
        self.data.iter().flatten().copied().collect()
    }
}

/// A single-channel raster of real samples with declared bounds.
///
/// Planes built through [`Plane::new`] carry a declared range with `lo < hi`
/// and every sample inside it. Intermediate planes produced by the fuzzy
/// transform record their actual extrema instead, which collapse to a single
/// value for constant input.
#[derive(Debug, Clone, PartialEq)]
pub struct Plane {
    width: usize,
    height: usize,
    range: (f64, f64),
    data: Vec<f64>,
}

impl Plane {
    pub fn new(width: usize, height: usize, range: (f64, f64), data: Vec<f64>) -> Result<Self> {
        check_dims(width, height, data.len())?;
        let (lo, hi) = range;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Config("plane range must satisfy lo < hi"));
        }
        if let Some(&bad) = data.iter().find(|s| !(**s >= lo && **s <= hi)) {
            return Err(Error::OutOfRange {
                what: "sample",
                value: bad,
                lo,
                hi,
            });
        }
        Ok(Self {
            width,
            height,
            range,
            data,
        })
    }

    /// A `[0, 255]` plane holding the given integer levels.
    pub fn from_levels(width: usize, height: usize, levels: &[u8]) -> Result<Self> {
        check_dims(width, height, levels.len())?;
        Ok(Self::from_parts(
            width,
            height,
            (0.0, 255.0),
            levels.iter().map(|&v| f64::from(v)).collect(),
        ))
    }

    /// Builds a plane whose range is the actual sample extrema.
    pub(crate) fn with_actual_range(width: usize, height: usize, data: Vec<f64>) -> Self {
        let (lo, hi) = data
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &s| {
                (lo.min(s), hi.max(s))
            });
        Self::from_parts(width, height, (lo, hi), data)
    }

    pub(crate) fn from_parts(
        width: usize,
        height: usize,
        range: (f64, f64),
        data: Vec<f64>,
    ) -> Self {
        debug_assert_eq!(width * height, data.len());
        Self {
            width,
            height,
            range,
            data,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn range(&self) -> (f64, f64) {
        self.range
    }

    pub fn samples(&self) -> &[f64] {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    /// Maps the declared range linearly onto `0..=255` with round-half-up.
    ///
    /// Values within `1e-9` below a half step round up, so that half levels
    /// reached through inexact arithmetic (e.g. HLS luminosity) quantize the
    /// same way as exact ones. A degenerate range maps everything to 0.
    pub fn to_levels(&self) -> Vec<u8> {
        let (lo, hi) = self.range;
        let span = hi - lo;
        self.data
            .iter()
            .map(|&s| {
                if span <= 0.0 {
                    return 0;
                }
                let v = round_half_up((s - lo) * 255.0 / span + 1e-9);
                v.clamp(0.0, 255.0) as u8
            })
            .collect()
    }

    /// [`Plane::to_levels`] wrapped back into a `[0, 255]` plane.
    pub fn quantized(&self) -> Plane {
        let levels = self.to_levels();
        Self::from_parts(
            self.width,
            self.height,
            (0.0, 255.0),
            levels.into_iter().map(f64::from).collect(),
        )
    }
}

/// Hue in degrees `[0, 360)`, luminosity `[0, 100]`, saturation `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hls {
    pub h: f64,
    pub l: f64,
    pub s: f64,
}

impl Hls {
    pub fn new(h: f64, l: f64, s: f64) -> Result<Self> {
        let hls = Self { h, l, s };
        hls.validate()?;
        Ok(hls)
    }

    fn validate(&self) -> Result<()> {
        if !(self.h >= 0.0 && self.h < 360.0) {
            return Err(Error::OutOfRange {
                what: "hue",
                value: self.h,
                lo: 0.0,
                hi: 360.0,
            });
        }
        if !(self.l >= 0.0 && self.l <= 100.0) {
            return Err(Error::OutOfRange {
                what: "luminosity",
                value: self.l,
                lo: 0.0,
                hi: 100.0,
            });
        }
        if !(self.s >= 0.0 && self.s <= 1.0) {
            return Err(Error::OutOfRange {
                what: "saturation",
                value: self.s,
                lo: 0.0,
                hi: 1.0,
            });
        }
        Ok(())
    }

    /// Hexcone conversion of an 8-bit triple. Achromatic pixels get `h = 0`.
    pub fn from_rgb([r, g, b]: [u8; 3]) -> Self {
        let (r, g, b) = (i32::from(r), i32::from(g), i32::from(b));
        let max = r.max(g).max(b);
        let min = r.min(g).min(b);
        let sum = max + min;
        let l = 100.0 * f64::from(sum) / 510.0;
        let delta = max - min;
        if delta == 0 {
            return Self { h: 0.0, l, s: 0.0 };
        }
        // (max - min) / (1 - |max + min - 1|) on the 0..=255 scale
        let s = (f64::from(delta) / f64::from(255 - (sum - 255).abs())).min(1.0);
        let d = f64::from(delta);
        let sextant = if max == r {
            f64::from(g - b) / d
        } else if max == g {
            f64::from(b - r) / d + 2.0
        } else {
            f64::from(r - g) / d + 4.0
        };
        let mut h = 60.0 * sextant;
        if h < 0.0 {
            h += 360.0;
        }
        if h >= 360.0 {
            h -= 360.0;
        }
        Self { h, l, s }
    }

    pub fn to_rgb(&self) -> [u8; 3] {
        let l = self.l / 100.0;
        let chroma = (1.0 - libm::fabs(2.0 * l - 1.0)) * self.s;
        let hp = self.h / 60.0;
        let x = chroma * (1.0 - libm::fabs(libm::fmod(hp, 2.0) - 1.0));
        let m = l - chroma / 2.0;
        let (r, g, b) = match libm::floor(hp) as i64 {
            0 => (chroma, x, 0.0),
            1 => (x, chroma, 0.0),
            2 => (0.0, chroma, x),
            3 => (0.0, x, chroma),
            4 => (x, 0.0, chroma),
            _ => (chroma, 0.0, x),
        };
        let q = |v: f64| round_half_up(255.0 * (v + m)).clamp(0.0, 255.0) as u8;
        [q(r), q(g), q(b)]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HlsImage {
    width: usize,
    height: usize,
    data: Vec<Hls>,
}

impl HlsImage {
    pub fn new(width: usize, height: usize, data: Vec<Hls>) -> Result<Self> {
        check_dims(width, height, data.len())?;
        data.iter().try_for_each(Hls::validate)?;
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[Hls] {
        &self.data
    }
}

/// Boolean mask, typically the circular field of view of a fundus camera.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FovMask {
    width: usize,
    height: usize,
    data: Vec<bool>,
}

impl FovMask {
    pub fn new(width: usize, height: usize, data: Vec<bool>) -> Result<Self> {
        check_dims(width, height, data.len())?;
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// A mask with every pixel selected.
    pub fn full(width: usize, height: usize) -> Result<Self> {
        Self::new(width, height, alloc::vec![true; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn bits(&self) -> &[bool] {
        &self.data
    }

    pub fn count(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }

    pub(crate) fn check_against(&self, width: usize, height: usize) -> Result<()> {
        if (self.width, self.height) != (width, height) {
            return Err(Error::MaskMismatch {
                mask_w: self.width,
                mask_h: self.height,
                width,
                height,
            });
        }
        Ok(())
    }
}

/// Image-wide luminosity statistics driving the adaptive memberships.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LuminosityStats {
    pub mean: f64,
    /// Population standard deviation.
    pub sigma: f64,
    /// 2σ-trimmed mean, clamped to `[5, 95]`.
    pub reduced_mean: f64,
}

pub fn extract_green(img: &Rgb8Image) -> Plane {
    let data = img.data.iter().map(|p| f64::from(p[1])).collect();
    Plane::from_parts(img.width, img.height, (0.0, 255.0), data)
}

/// BT.601 luma, `round(0.299 r + 0.587 g + 0.114 b)`.
pub fn to_grayscale(img: &Rgb8Image) -> Plane {
    let data = img
        .data
        .iter()
        .map(|&[r, g, b]| {
            let weighted = 299 * u32::from(r) + 587 * u32::from(g) + 114 * u32::from(b);
            f64::from((weighted + 500) / 1000)
        })
        .collect();
    Plane::from_parts(img.width, img.height, (0.0, 255.0), data)
}

pub fn rgb_to_hls(img: &Rgb8Image) -> HlsImage {
    HlsImage {
        width: img.width,
        height: img.height,
        data: img.data.iter().map(|&p| Hls::from_rgb(p)).collect(),
    }
}

pub fn hls_to_rgb(img: &HlsImage) -> Rgb8Image {
    Rgb8Image {
        width: img.width,
        height: img.height,
        data: img.data.iter().map(Hls::to_rgb).collect(),
    }
}

/// The `l` field of every pixel as a `[0, 100]` plane.
pub fn luminosity_plane(img: &HlsImage) -> Plane {
    let data = img.data.iter().map(|p| p.l).collect();
    Plane::from_parts(img.width, img.height, (0.0, 100.0), data)
}

/// Mean, standard deviation and trimmed mean over the selected pixels.
///
/// The trimmed mean averages the samples inside `mean ± 2σ`; the result is
/// clamped to `[5, 95]`.
pub fn compute_stats(plane: &Plane, mask: Option<&FovMask>) -> Result<LuminosityStats> {
    if let Some(mask) = mask {
        mask.check_against(plane.width, plane.height)?;
    }
    let selected = |i: usize| mask.is_none_or(|m| m.data[i]);
    let picked = || {
        plane
            .data
            .iter()
            .enumerate()
            .filter(move |(i, _)| selected(*i))
            .map(|(_, &s)| s)
    };

    let (count, sum) = picked().fold((0usize, 0.0), |(n, acc), s| (n + 1, acc + s));
    if count == 0 {
        return Err(Error::EmptyMask);
    }
    let n = count as f64;
    let mean = sum / n;
    let sigma = libm::sqrt(picked().map(|s| (s - mean) * (s - mean)).sum::<f64>() / n);

    let (lo, hi) = (mean - 2.0 * sigma, mean + 2.0 * sigma);
    let (kept, kept_sum) = picked()
        .filter(|&s| s >= lo && s <= hi)
        .fold((0usize, 0.0), |(n, acc), s| (n + 1, acc + s));
    let trimmed = if kept == 0 {
        mean
    } else {
        kept_sum / kept as f64
    };

    Ok(LuminosityStats {
        mean,
        sigma,
        reduced_mean: trimmed.clamp(5.0, 95.0),
    })
}
