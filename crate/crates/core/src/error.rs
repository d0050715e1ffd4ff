use thiserror::Error;

/// Errors produced by the enhancement pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid image dimensions {width}x{height}")]
    InvalidDimensions { width: usize, height: usize },
    #[error("pixel buffer holds {actual} samples, expected {expected}")]
    BufferLength { expected: usize, actual: usize },
    #[error("{what} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("mask is {mask_w}x{mask_h} but image is {width}x{height}")]
    MaskMismatch {
        mask_w: usize,
        mask_h: usize,
        width: usize,
        height: usize,
    },
    #[error("mask selects no pixels")]
    EmptyMask,
    #[error("foreground and background masks overlap")]
    MaskOverlap,
    #[error("planes differ in size: {0:?} vs {1:?}")]
    DimensionMismatch((usize, usize), (usize, usize)),
    #[error("luminosity range is degenerate (max - min = {0})")]
    DegenerateRange(f64),
    #[error("invalid configuration: {0}")]
    Config(&'static str),
}
