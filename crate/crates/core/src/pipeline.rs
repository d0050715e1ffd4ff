//! Dispatch of the six enhancement variants.

use core::fmt;
use core::str::FromStr;

use crate::baselines::{clahe, histogram_equalize, ClaheConfig};
use crate::blend::{linear_blend, rescale_to_255, yellow_colorize, BlendConfig, HueConfig};
use crate::fuzzy::fce;
use crate::image::{luminosity_plane, rgb_to_hls, to_grayscale, FovMask, Plane, Rgb8Image};
use crate::{Error, Result};

/// Enhancement variants, in their canonical report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Grayscale,
    He,
    Fce,
    Clahe,
    FceClahe,
    /// FCE + CLAHE blend recolored to a yellow hue.
    Full,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Grayscale,
        Method::He,
        Method::Fce,
        Method::Clahe,
        Method::FceClahe,
        Method::Full,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Grayscale => "grayscale",
            Method::He => "he",
            Method::Fce => "fce",
            Method::Clahe => "clahe",
            Method::FceClahe => "fce_clahe",
            Method::Full => "full",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or(Error::Config("unknown method"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EnhanceConfig {
    pub blend: BlendConfig,
    pub clahe: ClaheConfig,
    pub hue: HueConfig,
}

impl EnhanceConfig {
    pub fn validate(&self) -> Result<()> {
        self.blend.validate()?;
        self.clahe.validate()?;
        self.hue.validate()
    }
}

/// Result of one enhancement: a gray plane or, for [`Method::Full`], a color image.
#[derive(Debug, Clone, PartialEq)]
pub enum Enhanced {
    Gray(Plane),
    Color(Rgb8Image),
}

impl Enhanced {
    pub fn dimensions(&self) -> (usize, usize) {
        match self {
            Enhanced::Gray(p) => p.dimensions(),
            Enhanced::Color(img) => img.dimensions(),
        }
    }

    /// The 8-bit luminance used for measuring this output. Color results use
    /// their HLS luminosity.
    pub fn luminance(&self) -> Plane {
        match self {
            Enhanced::Gray(p) => p.quantized(),
            Enhanced::Color(img) => luminosity_levels(img),
        }
    }
}

/// HLS luminosity quantized onto `[0, 255]`: the common input of CLAHE and
/// the blend.
pub fn luminosity_levels(img: &Rgb8Image) -> Plane {
    luminosity_plane(&rgb_to_hls(img)).quantized()
}

pub fn enhance(
    img: &Rgb8Image,
    method: Method,
    cfg: &EnhanceConfig,
    mask: Option<&FovMask>,
) -> Result<Enhanced> {
    cfg.validate()?;
    let fce_clahe = || -> Result<Plane> {
        let fuzzy = rescale_to_255(&fce(img, mask)?);
        let local = clahe(&luminosity_levels(img), &cfg.clahe)?;
        linear_blend(&fuzzy, &local, &cfg.blend)
    };
    Ok(match method {
        Method::Grayscale => Enhanced::Gray(to_grayscale(img)),
        Method::He => Enhanced::Gray(histogram_equalize(&to_grayscale(img))),
        Method::Clahe => Enhanced::Gray(clahe(&luminosity_levels(img), &cfg.clahe)?),
        Method::Fce => Enhanced::Gray(rescale_to_255(&fce(img, mask)?)),
        Method::FceClahe => Enhanced::Gray(fce_clahe()?),
        Method::Full => Enhanced::Color(yellow_colorize(&fce_clahe()?, &cfg.hue)?),
    })
}
