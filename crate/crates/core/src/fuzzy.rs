//! Adaptive fuzzy contrast enhancement (FCE).
//!
//! Luminosity is fuzzified into five Gaussian linguistic values whose centers
//! and widths follow the image's trimmed mean `M`. Three rules pull each pixel
//! toward a consequent:
//!
//! * dark → very dark
//! * medium → medium
//! * bright → very bright
//!
//! The crisp output is the activation-weighted average of the consequent
//! centers, which is then min-max scaled back onto `[0, 100]`.

use alloc::vec::Vec;

use crate::image::{compute_stats, luminosity_plane, rgb_to_hls, FovMask, Plane, Rgb8Image};
use crate::{Error, Result};

/// Activation sums below this pass the input through unchanged.
pub const MIN_ACTIVATION: f64 = 1e-12;

/// Smallest luminosity span [`min_max_scale`] accepts.
pub const MIN_SPAN: f64 = 1e-9;

/// A Gaussian membership function `exp(-0.5 ((x - center) / width)^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian {
    pub center: f64,
    pub width: f64,
}

impl Gaussian {
    #[inline]
    pub fn degree(&self, x: f64) -> f64 {
        let z = (x - self.center) / self.width;
        libm::exp(-0.5 * z * z)
    }
}

/// The five memberships derived from a trimmed mean luminosity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipSet {
    pub very_dark: Gaussian,
    pub dark: Gaussian,
    pub medium: Gaussian,
    pub bright: Gaussian,
    pub very_bright: Gaussian,
    pub mean: f64,
}

impl MembershipSet {
    /// Members in ascending linguistic order, very dark first.
    pub fn members(&self) -> [Gaussian; 5] {
        [
            self.very_dark,
            self.dark,
            self.medium,
            self.bright,
            self.very_bright,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipDegrees {
    pub very_dark: f64,
    pub dark: f64,
    pub medium: f64,
    pub bright: f64,
    pub very_bright: f64,
}

impl MembershipDegrees {
    pub fn to_array(&self) -> [f64; 5] {
        [
            self.very_dark,
            self.dark,
            self.medium,
            self.bright,
            self.very_bright,
        ]
    }
}

/// Builds the membership set for a trimmed mean `m` in `[5, 95]`.
pub fn membership_set(m: f64) -> Result<MembershipSet> {
    if !(5.0..=95.0).contains(&m) {
        return Err(Error::OutOfRange {
            what: "mean luminosity",
            value: m,
            lo: 5.0,
            hi: 95.0,
        });
    }
    let upper = (100.0 - m) / 4.0;
    // 0.45 m and 1.1 m as exact ratios, so integer means give exact centers
    Ok(MembershipSet {
        very_dark: Gaussian {
            center: (m - 40.0).max(-20.0),
            width: m / 2.0,
        },
        dark: Gaussian {
            center: 9.0 * m / 20.0,
            width: m / 4.0,
        },
        medium: Gaussian {
            center: 11.0 * m / 10.0,
            width: m / 6.0,
        },
        bright: Gaussian {
            center: 2.5 * m - 25.0,
            width: upper,
        },
        very_bright: Gaussian {
            center: 125.0,
            width: upper,
        },
        mean: m,
    })
}

pub fn evaluate_memberships(x: f64, set: &MembershipSet) -> MembershipDegrees {
    MembershipDegrees {
        very_dark: set.very_dark.degree(x),
        dark: set.dark.degree(x),
        medium: set.medium.degree(x),
        bright: set.bright.degree(x),
        very_bright: set.very_bright.degree(x),
    }
}

/// Crisp output of the three-rule base for one luminosity value.
#[inline]
pub fn defuzzify(x: f64, set: &MembershipSet) -> f64 {
    let d = set.dark.degree(x);
    let m = set.medium.degree(x);
    let b = set.bright.degree(x);
    let total = d + m + b;
    if total < MIN_ACTIVATION {
        return x;
    }
    (d * set.very_dark.center + m * set.medium.center + b * set.very_bright.center) / total
}

/// Applies [`defuzzify`] per pixel.
///
/// The result is not clamped: consequent centers at -20 and 125 can push
/// samples outside `[0, 100]`. The output range records the actual extrema.
pub fn fuzzy_transform(plane: &Plane, set: &MembershipSet) -> Plane {
    let data: Vec<f64> = plane.samples().iter().map(|&x| defuzzify(x, set)).collect();
    Plane::with_actual_range(plane.width(), plane.height(), data)
}

/// Min-max normalization onto `[0, 100]`.
pub fn min_max_scale(plane: &Plane) -> Result<Plane> {
    let samples = plane.samples();
    let (lo, hi) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &s| {
            (lo.min(s), hi.max(s))
        });
    let span = hi - lo;
    if span.is_nan() || span < MIN_SPAN {
        return Err(Error::DegenerateRange(span));
    }
    let data = samples.iter().map(|&s| (s - lo) / span * 100.0).collect();
    Ok(Plane::from_parts(
        plane.width(),
        plane.height(),
        (0.0, 100.0),
        data,
    ))
}

/// The full FCE chain: HLS luminosity, statistics, memberships, fuzzy
/// transform and min-max scaling.
pub fn fce(img: &Rgb8Image, mask: Option<&FovMask>) -> Result<Plane> {
    let luminosity = luminosity_plane(&rgb_to_hls(img));
    let stats = compute_stats(&luminosity, mask)?;
    let set = membership_set(stats.reduced_mean)?;
    min_max_scale(&fuzzy_transform(&luminosity, &set))
}
