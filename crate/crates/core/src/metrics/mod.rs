//! Ciphertext quality instruments: avalanche, NMAE/PSNR, byte entropy,
//! histograms, adjacent-pixel correlation, and a randomness test subset.

mod randomness;
mod report;

pub use randomness::{
    block_frequency, monobit, randomness_subset, runs, RandomnessResult, BLOCK_FREQUENCY_M, MIN_BITS,
};
pub use report::{InputDescriptor, MetricReport, MetricValue, Unit, CSV_HEADER};

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::exec::Execution;

fn in_range(what: &str, v: f64, lo: f64, hi: f64) -> Result<f64> {
    if v.is_finite() && (lo..=hi).contains(&v) {
        Ok(v)
    } else {
        Err(Error::Domain(format!("{what} = {v} outside [{lo}, {hi}]")))
    }
}

pub fn hamming_distance(a: &[u8], b: &[u8]) -> u64 {
    a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones() as u64).sum()
}

fn flip_bit(key: &[bool], bit_index: usize) -> Vec<bool> {
    let mut k = key.to_vec();
    k[bit_index] ^= true;
    k
}

fn changed_fraction(base: &[u8], other: &[u8]) -> Result<f64> {
    if base.len() != other.len() {
        return Err(Error::Domain(format!(
            "ciphertext lengths differ under key change: {} vs {}",
            base.len(),
            other.len()
        )));
    }
    if base.is_empty() {
        return Ok(0.0);
    }
    let f = hamming_distance(base, other) as f64 / (8 * base.len()) as f64;
    in_range("avalanche", f, 0.0, 1.0)
}

/// Fraction of ciphertext bits that change when key bit `bit_index` flips.
pub fn avalanche<F>(encrypt: F, key: &[bool], message: &[u8], bit_index: usize) -> Result<f64>
where
    F: Fn(&[bool], &[u8]) -> Vec<u8>,
{
    if bit_index >= key.len() {
        return Err(Error::Domain(format!(
            "bit index {bit_index} out of range for a {}-bit key",
            key.len()
        )));
    }
    let base = encrypt(key, message);
    changed_fraction(&base, &encrypt(&flip_bit(key, bit_index), message))
}

/// Per-bit avalanche for every key bit, sharing the base ciphertext.
pub fn avalanche_profile<F>(encrypt: F, key: &[bool], message: &[u8], exec: Execution) -> Result<Vec<f64>>
where
    F: Fn(&[bool], &[u8]) -> Vec<u8> + Sync + Send,
{
    let base = encrypt(key, message);
    exec.map_range(key.len(), |i| changed_fraction(&base, &encrypt(&flip_bit(key, i), message)))
        .into_iter()
        .collect()
}

/// Mean of [`avalanche_profile`] over all key bits.
pub fn avalanche_mean<F>(encrypt: F, key: &[bool], message: &[u8], exec: Execution) -> Result<f64>
where
    F: Fn(&[bool], &[u8]) -> Vec<u8> + Sync + Send,
{
    if key.is_empty() {
        return Err(Error::Domain("empty key".into()));
    }
    let per_bit = avalanche_profile(encrypt, key, message, exec)?;
    Ok(per_bit.iter().sum::<f64>() / per_bit.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NmaePsnr {
    pub nmae: f64,
    pub psnr_db: f64,
}

/// `NMAE = 100 · Σ|S(k) − E(k)| / len`, `PSNR = 10 · log10(255² / NMAE)`.
pub fn nmae_psnr(original: &[u8], encrypted: &[u8]) -> Result<NmaePsnr> {
    if original.len() != encrypted.len() {
        return Err(Error::Length {
            what: "encrypted data",
            expected: original.len(),
            actual: encrypted.len(),
        });
    }
    if original.is_empty() {
        return Err(Error::Domain("NMAE of empty data".into()));
    }
    let abs: u64 = original
        .iter()
        .zip(encrypted)
        .map(|(&s, &e)| (s as i32 - e as i32).unsigned_abs() as u64)
        .sum();
    if abs == 0 {
        return Err(Error::Domain("NMAE is 0 (identical data); PSNR is undefined".into()));
    }
    let nmae = abs as f64 / original.len() as f64 * 100.0;
    let psnr_db = 10.0 * (255.0f64 * 255.0 / nmae).log10();
    Ok(NmaePsnr { nmae, psnr_db })
}

pub fn histogram(data: &[u8]) -> [u64; 256] {
    let mut h = [0u64; 256];
    for &b in data {
        h[b as usize] += 1;
    }
    h
}

/// Shannon entropy of a byte histogram in bits per byte.
pub fn entropy_from_histogram(hist: &[u64; 256]) -> Result<f64> {
    let total: u64 = hist.iter().sum();
    if total == 0 {
        return Err(Error::Domain("entropy of empty data".into()));
    }
    let n = total as f64;
    let h = hist
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum::<f64>();
    // -0.0 for a single populated bin
    in_range("entropy", h.max(0.0), 0.0, 8.0)
}

pub fn entropy(data: &[u8]) -> Result<f64> {
    entropy_from_histogram(&histogram(data))
}

/// Pearson chi-square statistic of a histogram against the uniform law.
pub fn chi_square_uniform(hist: &[u64; 256]) -> f64 {
    let n: u64 = hist.iter().sum();
    let expected = n as f64 / 256.0;
    hist.iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum()
}

/// Upper critical value of chi-square with 255 degrees of freedom.
pub fn chi_square_critical_255(alpha: f64) -> f64 {
    ChiSquared::new(255.0)
        .expect("255 degrees of freedom is valid")
        .inverse_cdf(1.0 - alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Horizontal,
    Vertical,
    Diagonal,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::Horizontal, Direction::Vertical, Direction::Diagonal];

    pub fn name(self) -> &'static str {
        match self {
            Direction::Horizontal => "horizontal",
            Direction::Vertical => "vertical",
            Direction::Diagonal => "diagonal",
        }
    }

    fn offset(self) -> (usize, usize) {
        match self {
            Direction::Horizontal => (1, 0),
            Direction::Vertical => (0, 1),
            Direction::Diagonal => (1, 1),
        }
    }
}

fn check_plane(plane: &[u8], width: usize, height: usize) -> Result<()> {
    if plane.is_empty() || plane.len() != width * height {
        return Err(Error::Length {
            what: "plane",
            expected: width * height,
            actual: plane.len(),
        });
    }
    Ok(())
}

/// All adjacent pairs `(p(x, y), p(x + dx, y + dy))` in scan order.
pub fn adjacent_pairs(
    plane: &[u8],
    width: usize,
    height: usize,
    dir: Direction,
) -> impl Iterator<Item = (u8, u8)> + '_ {
    let (dx, dy) = dir.offset();
    (0..height.saturating_sub(dy)).flat_map(move |y| {
        (0..width.saturating_sub(dx)).map(move |x| (plane[y * width + x], plane[(y + dy) * width + x + dx]))
    })
}

/// Pearson correlation over every adjacent pair in `dir`.
pub fn adjacent_correlation(plane: &[u8], width: usize, height: usize, dir: Direction) -> Result<f64> {
    check_plane(plane, width, height)?;
    // Byte samples keep every sum exact in integers.
    let (mut n, mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0i128, 0i128, 0i128, 0i128, 0i128, 0i128);
    for (a, b) in adjacent_pairs(plane, width, height, dir) {
        let (a, b) = (a as i128, b as i128);
        n += 1;
        sx += a;
        sy += b;
        sxx += a * a;
        syy += b * b;
        sxy += a * b;
    }
    if n == 0 {
        return Err(Error::Domain(format!(
            "no {} pairs in a {width}x{height} plane",
            dir.name()
        )));
    }
    let vx = n * sxx - sx * sx;
    let vy = n * syy - sy * sy;
    if vx == 0 || vy == 0 {
        return Err(Error::Domain("correlation undefined: zero variance".into()));
    }
    let r = (n * sxy - sx * sy) as f64 / ((vx as f64).sqrt() * (vy as f64).sqrt());
    in_range("correlation", r.clamp(-1.0, 1.0), -1.0, 1.0)
}

/// Up to `cap` adjacent pairs, evenly strided over the full pair sequence.
pub fn scatter_sample(plane: &[u8], width: usize, height: usize, dir: Direction, cap: usize) -> Vec<(u8, u8)> {
    let (dx, dy) = dir.offset();
    let total = width.saturating_sub(dx) * height.saturating_sub(dy);
    if total == 0 || cap == 0 {
        return Vec::new();
    }
    let stride = total.div_ceil(cap);
    adjacent_pairs(plane, width, height, dir).step_by(stride).collect()
}

pub const SCATTER_CAP: usize = 5_000;
