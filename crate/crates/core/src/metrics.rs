//! Objective quality measurements for comparing enhancement methods.

use crate::baselines::Histogram256;
use crate::image::{FovMask, Plane};
use crate::{round_half_up, Error, Result};

/// Shannon entropy in bits of the 256-level histogram.
pub fn entropy(plane: &Plane) -> f64 {
    let hist = Histogram256::from_levels(
        plane
            .samples()
            .iter()
            .map(|&s| round_half_up(s).clamp(0.0, 255.0) as u8),
    );
    let n = hist.total() as f64;
    let bits: f64 = hist
        .0
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = f64::from(c) / n;
            -p * libm::log2(p)
        })
        .sum();
    // -0.0 for a single symbol
    bits.max(0.0)
}

/// Population standard deviation of the samples.
pub fn rms_contrast(plane: &Plane) -> f64 {
    let s = plane.samples();
    let n = s.len() as f64;
    let mean = s.iter().sum::<f64>() / n;
    libm::sqrt(s.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n)
}

fn masked_mean(plane: &Plane, mask: &FovMask) -> Result<f64> {
    mask.check_against(plane.width(), plane.height())?;
    let (n, sum) = plane
        .samples()
        .iter()
        .zip(mask.bits())
        .filter(|(_, &b)| b)
        .fold((0usize, 0.0), |(n, acc), (&s, _)| (n + 1, acc + s));
    if n == 0 {
        return Err(Error::EmptyMask);
    }
    Ok(sum / n as f64)
}

/// `|m_bg − m_fg| / (m_bg + m_fg)` over two disjoint regions.
pub fn michelson_contrast(plane: &Plane, fg: &FovMask, bg: &FovMask) -> Result<f64> {
    let m_fg = masked_mean(plane, fg)?;
    let m_bg = masked_mean(plane, bg)?;
    if fg.bits().iter().zip(bg.bits()).any(|(&a, &b)| a && b) {
        return Err(Error::MaskOverlap);
    }
    let sum = m_bg + m_fg;
    if sum == 0.0 {
        return Ok(0.0);
    }
    Ok(libm::fabs(m_bg - m_fg) / sum)
}

/// Peak signal-to-noise ratio for 8-bit data; `f64::INFINITY` for identical planes.
pub fn psnr(reference: &Plane, test: &Plane) -> Result<f64> {
    if reference.dimensions() != test.dimensions() {
        return Err(Error::DimensionMismatch(
            reference.dimensions(),
            test.dimensions(),
        ));
    }
    let n = reference.len() as f64;
    let mse = reference
        .samples()
        .iter()
        .zip(test.samples())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        / n;
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * libm::log10(255.0 * 255.0 / mse))
}
