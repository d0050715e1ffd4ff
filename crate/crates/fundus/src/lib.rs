//! File formats, batch processing and reports on top of [`fundus_core`].
//!
//! Images are read from PNG, binary PPM (P6) and PGM (P5). Outputs are
//! written in the same formats, one file per image and method, alongside a
//! metrics CSV.

pub mod batch;
pub mod io;
pub mod report;

pub use fundus_core;

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input not found: {0}")]
    InputNotFound(PathBuf),
    #[error("cannot read image {path}: {source}")]
    UnreadableImage {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },
    #[error("cannot write image {path}: {source}")]
    ImageWrite {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Enhance(#[from] fundus_core::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
