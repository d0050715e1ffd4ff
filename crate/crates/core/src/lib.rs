//! Contrast enhancement for retinal fundus images.
//!
//! The crate is `no_std` and only needs `alloc`. It contains the pixel
//! containers, the HLS color model, the adaptive fuzzy contrast enhancement
//! (FCE) stage, global and contrast-limited adaptive histogram equalization,
//! linear blending with yellow recoloring, and a handful of objective quality
//! metrics. Reading and writing files lives in the `fundus` crate.
//!
//! ```
//! use fundus_core::{pipeline, Rgb8Image};
//!
//! let pixels: Vec<[u8; 3]> = (0..1024u32)
//!     .map(|i| [(i % 251) as u8, (i % 199) as u8, (i % 97) as u8])
//!     .collect();
//! let img = Rgb8Image::new(32, 32, pixels).unwrap();
//! let cfg = pipeline::EnhanceConfig::default();
//! let out = pipeline::enhance(&img, pipeline::Method::FceClahe, &cfg, None).unwrap();
//! assert_eq!(out.dimensions(), (32, 32));
//! ```
#![no_std]

extern crate alloc;

mod error;
pub mod baselines;
pub mod blend;
pub mod fuzzy;
pub mod image;
pub mod metrics;
pub mod pipeline;

pub use error::Error;
pub use image::{FovMask, Hls, HlsImage, LuminosityStats, Plane, Rgb8Image};

/// Shorthand for results carrying [`Error`].
pub type Result<T> = core::result::Result<T, Error>;

/// Rounds half-way cases toward positive infinity.
#[inline]
pub(crate) fn round_half_up(x: f64) -> f64 {
    libm::floor(x + 0.5)
}
