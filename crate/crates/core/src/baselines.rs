//! Global histogram equalization and CLAHE on 8-bit planes.

use alloc::vec::Vec;

use crate::image::Plane;
use crate::{round_half_up, Error, Result};

/// Counts per gray level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram256(pub [u32; 256]);

impl Histogram256 {
    pub fn from_levels<I: IntoIterator<Item = u8>>(levels: I) -> Self {
        let mut bins = [0u32; 256];
        for v in levels {
            bins[usize::from(v)] += 1;
        }
        Self(bins)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&c| u64::from(c)).sum()
    }

    pub fn occupied_levels(&self) -> usize {
        self.0.iter().filter(|&&c| c > 0).count()
    }

    /// The equalization lookup table for this histogram.
    ///
    /// `m(v) = round(255 (cdf(v) - cdf_min) / (N - cdf_min))`, evaluated in
    /// integer arithmetic with round-half-up. Returns `None` when the
    /// mapping is undefined (a single occupied level).
    fn equalization_lut(&self) -> Option<[u8; 256]> {
        let n = self.total();
        let cdf_min = self.0.iter().copied().find(|&c| c > 0).map(u64::from)?;
        let den = n - cdf_min;
        if den == 0 {
            return None;
        }
        let mut lut = [0u8; 256];
        let mut cdf = 0u64;
        for (slot, &count) in lut.iter_mut().zip(self.0.iter()) {
            cdf += u64::from(count);
            let num = 255 * cdf.saturating_sub(cdf_min);
            *slot = ((2 * num + den) / (2 * den)).min(255) as u8;
        }
        Some(lut)
    }
}

/// CLAHE parameters. `clip_limit` is relative to the uniform bin height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClaheConfig {
    pub clip_limit: f64,
    pub tiles_x: usize,
    pub tiles_y: usize,
}

impl Default for ClaheConfig {
    fn default() -> Self {
        Self {
            clip_limit: 2.0,
            tiles_x: 8,
            tiles_y: 8,
        }
    }
}

impl ClaheConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.clip_limit > 0.0 && self.clip_limit.is_finite()) {
            return Err(Error::Config("clip limit must be a positive number"));
        }
        if !(1..=64).contains(&self.tiles_x) || !(1..=64).contains(&self.tiles_y) {
            return Err(Error::Config("tile counts must lie in 1..=64"));
        }
        Ok(())
    }
}

/// Caps every bin at `max(1, floor(clip_limit * tile_pixels / 256))` and
/// spreads the excess evenly, the remainder going one count per bin from
/// bin 0 upward.
pub fn clip_and_redistribute(hist: &Histogram256, clip_limit: f64, tile_pixels: usize) -> Histogram256 {
    let clip = libm::floor(clip_limit * tile_pixels as f64 / 256.0).max(1.0);
    let clip = if clip >= f64::from(u32::MAX) {
        u32::MAX
    } else {
        clip as u32
    };

    let mut bins = hist.0;
    let mut excess = 0u64;
    for b in bins.iter_mut() {
        if *b > clip {
            excess += u64::from(*b - clip);
            *b = clip;
        }
    }
    let per_bin = (excess / 256) as u32;
    let remainder = (excess % 256) as usize;
    for (i, b) in bins.iter_mut().enumerate() {
        *b += per_bin + u32::from(i < remainder);
    }
    Histogram256(bins)
}

fn plane_levels(plane: &Plane) -> Vec<u8> {
    plane
        .samples()
        .iter()
        .map(|&s| round_half_up(s).clamp(0.0, 255.0) as u8)
        .collect()
}

/// Global histogram equalization of a `[0, 255]` plane.
///
/// Samples are expected to be integer levels; others are rounded half-up.
/// A plane with a single occupied level is returned unchanged.
pub fn histogram_equalize(plane: &Plane) -> Plane {
    let levels = plane_levels(plane);
    let hist = Histogram256::from_levels(levels.iter().copied());
    let data = match hist.equalization_lut() {
        Some(lut) => levels.iter().map(|&v| f64::from(lut[usize::from(v)])).collect(),
        None => levels.iter().map(|&v| f64::from(v)).collect(),
    };
    Plane::from_parts(plane.width(), plane.height(), (0.0, 255.0), data)
}

/// Tile boundaries along one axis and the interpolation anchor of each tile.
#[derive(Debug)]
struct Axis {
    starts: Vec<usize>,
    sizes: Vec<usize>,
    centers: Vec<f64>,
}

impl Axis {
    fn new(len: usize, tiles: usize) -> Result<Self> {
        let step = len.div_ceil(tiles);
        if step < 2 {
            return Err(Error::Config("tiles must span at least 2 pixels per side"));
        }
        if step * (tiles - 1) >= len {
            return Err(Error::Config("tile grid leaves an empty trailing tile"));
        }
        let starts: Vec<usize> = (0..tiles).map(|i| i * step).collect();
        let sizes: Vec<usize> = starts.iter().map(|&s| step.min(len - s)).collect();
        let centers = starts
            .iter()
            .zip(&sizes)
            .map(|(&s, &n)| s as f64 + (n as f64 - 1.0) / 2.0)
            .collect();
        Ok(Self {
            starts,
            sizes,
            centers,
        })
    }

    /// Neighbouring tiles and the weight of the second one for coordinate `p`.
    /// Outside the outermost centers both neighbours are the edge tile.
    fn bracket(&self, p: usize) -> (usize, usize, f64) {
        let p = p as f64;
        let last = self.centers.len() - 1;
        if p <= self.centers[0] {
            return (0, 0, 0.0);
        }
        if p >= self.centers[last] {
            return (last, last, 0.0);
        }
        let i = self.centers.partition_point(|&c| c <= p) - 1;
        let (c0, c1) = (self.centers[i], self.centers[i + 1]);
        (i, i + 1, (p - c0) / (c1 - c0))
    }
}

/// Contrast-limited adaptive histogram equalization.
///
/// The plane is cut into `tiles_x × tiles_y` tiles by ceiling division; each
/// tile gets a clipped equalization table, and every pixel bilinearly blends
/// the tables of the tiles whose centers surround it.
pub fn clahe(plane: &Plane, cfg: &ClaheConfig) -> Result<Plane> {
    cfg.validate()?;
    let (w, h) = plane.dimensions();
    let cols = Axis::new(w, cfg.tiles_x)?;
    let rows = Axis::new(h, cfg.tiles_y)?;
    let levels = plane_levels(plane);

    let mut luts: Vec<[f64; 256]> = Vec::with_capacity(cfg.tiles_x * cfg.tiles_y);
    for ty in 0..cfg.tiles_y {
        for tx in 0..cfg.tiles_x {
            let (x0, y0) = (cols.starts[tx], rows.starts[ty]);
            let (tw, th) = (cols.sizes[tx], rows.sizes[ty]);
            let tile = (y0..y0 + th).flat_map(|y| levels[y * w + x0..y * w + x0 + tw].iter().copied());
            let hist = Histogram256::from_levels(tile);
            let lut = if hist.occupied_levels() < 2 {
                None
            } else {
                clip_and_redistribute(&hist, cfg.clip_limit, tw * th).equalization_lut()
            };
            let mut table = [0.0; 256];
            for (v, slot) in table.iter_mut().enumerate() {
                *slot = f64::from(lut.map_or(v as u8, |l| l[v]));
            }
            luts.push(table);
        }
    }

    let col_brackets: Vec<(usize, usize, f64)> = (0..w).map(|x| cols.bracket(x)).collect();
    let mut data = Vec::with_capacity(w * h);
    for y in 0..h {
        let (r0, r1, fy) = rows.bracket(y);
        let (top, bottom) = (&luts[r0 * cfg.tiles_x..], &luts[r1 * cfg.tiles_x..]);
        for (x, &(c0, c1, fx)) in col_brackets.iter().enumerate() {
            let v = usize::from(levels[y * w + x]);
            let upper = (1.0 - fx) * top[c0][v] + fx * top[c1][v];
            let lower = (1.0 - fx) * bottom[c0][v] + fx * bottom[c1][v];
            let blended = (1.0 - fy) * upper + fy * lower;
            data.push(round_half_up(blended).clamp(0.0, 255.0));
        }
    }
    Ok(Plane::from_parts(w, h, (0.0, 255.0), data))
}
