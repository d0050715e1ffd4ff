//! Test-only oracles and synthetic fundus images. Nothing here calls into the
//! code paths it is used to check.
#![allow(dead_code)]

use fundus_core::{FovMask, Hls, Rgb8Image};

/// Direct evaluation of the five Gaussians for mean luminosity `m`.
pub fn oracle_memberships(x: f64, m: f64) -> [f64; 5] {
    let gauss = |center: f64, sigma: f64| (-0.5 * ((x - center) / sigma).powi(2)).exp();
    let very_dark_center = if m - 40.0 > -20.0 { m - 40.0 } else { -20.0 };
    [
        gauss(very_dark_center, m / 2.0),
        gauss(0.45 * m, m / 4.0),
        gauss(1.1 * m, m / 6.0),
        gauss(2.5 * m - 25.0, (100.0 - m) / 4.0),
        gauss(125.0, (100.0 - m) / 4.0),
    ]
}

/// Weighted average of the consequent centers of the three rules.
pub fn oracle_defuzzify(x: f64, m: f64) -> f64 {
    let [_, dark, medium, bright, _] = oracle_memberships(x, m);
    let weight = dark + medium + bright;
    if weight < 1e-12 {
        return x;
    }
    let very_dark_center = if m - 40.0 > -20.0 { m - 40.0 } else { -20.0 };
    (dark * very_dark_center + medium * 1.1 * m + bright * 125.0) / weight
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    let scale = a.abs().max(b.abs());
    (a - b).abs() <= tol * scale || (a - b).abs() < 1e-300
}

/// Global equalization by counting, pixel by pixel.
pub fn oracle_equalize(levels: &[u8]) -> Vec<u8> {
    let n = levels.len() as f64;
    let cdf = |v: u8| levels.iter().filter(|&&s| s <= v).count() as f64;
    let distinct = {
        let mut d = levels.to_vec();
        d.sort_unstable();
        d.dedup();
        d.len()
    };
    if distinct < 2 {
        return levels.to_vec();
    }
    let cdf_min = levels.iter().map(|&v| cdf(v)).fold(f64::INFINITY, f64::min);
    levels
        .iter()
        .map(|&v| (255.0 * (cdf(v) - cdf_min) / (n - cdf_min) + 0.5).floor() as u8)
        .collect()
}

/// Straight-line CLAHE: for each pixel, locate the surrounding tile
/// centers, rebuild those tiles' clipped histograms from scratch and blend
/// the four mapped values.
pub fn reference_clahe(levels: &[u8], w: usize, h: usize, tiles_x: usize, tiles_y: usize, clip_limit: f64) -> Vec<u8> {
    let step_x = w.div_ceil(tiles_x);
    let step_y = h.div_ceil(tiles_y);
    let span = |i: usize, step: usize, len: usize| (i * step, ((i + 1) * step).min(len));
    let center = |i: usize, step: usize, len: usize| {
        let (a, b) = span(i, step, len);
        a as f64 + ((b - a) as f64 - 1.0) / 2.0
    };

    let mapped = |tx: usize, ty: usize, v: u8| -> f64 {
        let (x0, x1) = span(tx, step_x, w);
        let (y0, y1) = span(ty, step_y, h);
        let mut hist = vec![0u64; 256];
        for y in y0..y1 {
            for x in x0..x1 {
                hist[levels[y * w + x] as usize] += 1;
            }
        }
        if hist.iter().filter(|&&c| c > 0).count() < 2 {
            return v as f64;
        }
        let n = ((x1 - x0) * (y1 - y0)) as u64;
        let limit = ((clip_limit * n as f64 / 256.0).floor() as u64).max(1);
        let mut excess = 0;
        for c in hist.iter_mut() {
            if *c > limit {
                excess += *c - limit;
                *c = limit;
            }
        }
        for (i, c) in hist.iter_mut().enumerate() {
            *c += excess / 256;
            if (i as u64) < excess % 256 {
                *c += 1;
            }
        }
        let cdf_at = |level: usize| hist[..=level].iter().sum::<u64>();
        let cdf_min = *hist.iter().find(|&&c| c > 0).unwrap();
        let den = n - cdf_min;
        if den == 0 {
            return v as f64;
        }
        // levels below this tile's occupied range map below zero; floor at 0
        let above = cdf_at(v as usize) as i64 - cdf_min as i64;
        (255.0 * above as f64 / den as f64 + 0.5).floor().max(0.0)
    };

    let neighbours = |p: usize, tiles: usize, step: usize, len: usize| -> (usize, usize, f64) {
        let p = p as f64;
        if p <= center(0, step, len) {
            return (0, 0, 0.0);
        }
        if p >= center(tiles - 1, step, len) {
            return (tiles - 1, tiles - 1, 0.0);
        }
        let mut i = 0;
        while center(i + 1, step, len) <= p {
            i += 1;
        }
        let (c0, c1) = (center(i, step, len), center(i + 1, step, len));
        (i, i + 1, (p - c0) / (c1 - c0))
    };

    let mut out = Vec::with_capacity(w * h);
    for y in 0..h {
        let (ya, yb, fy) = neighbours(y, tiles_y, step_y, h);
        for x in 0..w {
            let (xa, xb, fx) = neighbours(x, tiles_x, step_x, w);
            let v = levels[y * w + x];
            let top = (1.0 - fx) * mapped(xa, ya, v) + fx * mapped(xb, ya, v);
            let bottom = (1.0 - fx) * mapped(xa, yb, v) + fx * mapped(xb, yb, v);
            let value = ((1.0 - fy) * top + fy * bottom + 0.5).floor();
            out.push(value.clamp(0.0, 255.0) as u8);
        }
    }
    out
}

/// Mean over selected pixels, the plain way.
pub fn oracle_mask_mean(samples: &[f64], mask: &[bool]) -> f64 {
    let picked: Vec<f64> = samples.iter().zip(mask).filter(|(_, &m)| m).map(|(&s, _)| s).collect();
    picked.iter().sum::<f64>() / picked.len() as f64
}

pub fn oracle_michelson(samples: &[f64], fg: &[bool], bg: &[bool]) -> f64 {
    let (f, b) = (oracle_mask_mean(samples, fg), oracle_mask_mean(samples, bg));
    (b - f).abs() / (b + f)
}

/// A synthetic fundus: radially shaded background, darker vessel strokes
/// radiating from a bright optic disc, and optionally a black border outside
/// a circular field of view.
pub struct Phantom {
    pub image: Rgb8Image,
    pub vessels: FovMask,
    pub background: FovMask,
    pub fov: FovMask,
    /// Luminosity used to render each pixel.
    pub luminosity: Vec<f64>,
}

fn segment_distance(px: f64, py: f64, (ax, ay): (f64, f64), (bx, by): (f64, f64)) -> f64 {
    let (dx, dy) = (bx - ax, by - ay);
    let t = (((px - ax) * dx + (py - ay) * dy) / (dx * dx + dy * dy)).clamp(0.0, 1.0);
    ((px - ax - t * dx).powi(2) + (py - ay - t * dy).powi(2)).sqrt()
}

pub fn phantom(w: usize, h: usize, variant: u32, with_border: bool) -> Phantom {
    let (cx, cy) = (w as f64 / 2.0, h as f64 / 2.0);
    let side = w.min(h) as f64;
    let disc = (0.70 * w as f64, 0.5 * h as f64 + variant as f64 * 3.0);
    let disc_r = 0.07 * side;
    let fov_r = 0.47 * side;
    let shade_sigma = 0.45 * side;
    let strokes: Vec<((f64, f64), (f64, f64))> = (0..7)
        .map(|k| {
            let angle = (k as f64 * 51.0 + variant as f64 * 13.0).to_radians();
            let len = (0.55 + 0.05 * (k % 3) as f64) * side;
            (disc, (disc.0 + len * angle.cos(), disc.1 + len * angle.sin()))
        })
        .collect();
    let half_width = 1.2 + 0.4 * (variant % 2) as f64;

    let n = w * h;
    let (mut pixels, mut lum) = (Vec::with_capacity(n), Vec::with_capacity(n));
    let (mut vessels, mut background, mut fov) = (vec![false; n], vec![false; n], vec![false; n]);
    for y in 0..h {
        for x in 0..w {
            let (px, py) = (x as f64 + 0.5, y as f64 + 0.5);
            let i = y * w + x;
            let inside = !with_border || ((px - cx).powi(2) + (py - cy).powi(2)).sqrt() <= fov_r;
            fov[i] = inside;
            let r2 = (px - cx).powi(2) + (py - cy).powi(2);
            let mut l = 43.0 + 22.0 * (-r2 / (2.0 * shade_sigma * shade_sigma)).exp();
            let in_disc = ((px - disc.0).powi(2) + (py - disc.1).powi(2)).sqrt() <= disc_r;
            let on_vessel = !in_disc && strokes.iter().any(|&(a, b)| segment_distance(px, py, a, b) <= half_width);
            if in_disc {
                l = 92.0;
            } else if on_vessel {
                l -= 20.0;
            }
            if !inside {
                l = 0.0;
            }
            vessels[i] = inside && on_vessel;
            background[i] = inside && !on_vessel && !in_disc;
            lum.push(l);
            pixels.push(Hls { h: 18.0, l, s: 0.55 }.to_rgb());
        }
    }
    Phantom {
        image: Rgb8Image::new(w, h, pixels).unwrap(),
        vessels: FovMask::new(w, h, vessels).unwrap(),
        background: FovMask::new(w, h, background).unwrap(),
        fov: FovMask::new(w, h, fov).unwrap(),
        luminosity: lum,
    }
}

pub fn mean_background_luminosity(p: &Phantom) -> f64 {
    oracle_mask_mean(&p.luminosity, p.background.bits())
}
