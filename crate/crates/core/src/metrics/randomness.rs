//! Frequency (monobit), frequency-within-a-block and runs tests, with the
//! statistics of the standard NIST SP 800-22 suite.

use serde::Serialize;
use statrs::function::erf::erfc;
use statrs::function::gamma::gamma_ur;

use crate::error::{Error, Result};

/// Shortest input accepted by [`randomness_subset`].
pub const MIN_BITS: usize = 1_000_000;
pub const BLOCK_FREQUENCY_M: usize = 128;

fn p_value(p: f64) -> f64 {
    debug_assert!(!p.is_nan());
    p.clamp(0.0, 1.0)
}

pub fn monobit(bits: &[bool]) -> Result<f64> {
    if bits.is_empty() {
        return Err(Error::Domain("monobit test on empty input".into()));
    }
    let n = bits.len() as f64;
    let ones = bits.iter().filter(|&&b| b).count() as f64;
    let s_n = 2.0 * ones - n;
    Ok(p_value(erfc(s_n.abs() / n.sqrt() / std::f64::consts::SQRT_2)))
}

/// Block length `m`; trailing bits that do not fill a block are ignored.
pub fn block_frequency(bits: &[bool], m: usize) -> Result<f64> {
    if m == 0 || bits.len() < m {
        return Err(Error::Domain(format!(
            "block frequency needs at least one block of {m} bits, got {}",
            bits.len()
        )));
    }
    let blocks = bits.len() / m;
    let chi2: f64 = bits
        .chunks_exact(m)
        .map(|b| {
            let pi = b.iter().filter(|&&x| x).count() as f64 / m as f64;
            (pi - 0.5) * (pi - 0.5)
        })
        .sum::<f64>()
        * 4.0
        * m as f64;
    if chi2 == 0.0 {
        return Ok(1.0);
    }
    Ok(p_value(gamma_ur(blocks as f64 / 2.0, chi2 / 2.0)))
}

/// Runs test. Returns 0 when the monobit prerequisite `|π − ½| < 2/√n`
/// fails, as the reference procedure prescribes.
pub fn runs(bits: &[bool]) -> Result<f64> {
    if bits.len() < 2 {
        return Err(Error::Domain("runs test needs at least two bits".into()));
    }
    let n = bits.len() as f64;
    let pi = bits.iter().filter(|&&b| b).count() as f64 / n;
    if (pi - 0.5).abs() >= 2.0 / n.sqrt() {
        return Ok(0.0);
    }
    let v_obs = 1 + bits.windows(2).filter(|w| w[0] != w[1]).count();
    let num = (v_obs as f64 - 2.0 * n * pi * (1.0 - pi)).abs();
    let den = 2.0 * (2.0 * n).sqrt() * pi * (1.0 - pi);
    Ok(p_value(erfc(num / den)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RandomnessResult {
    pub bits: usize,
    pub monobit: f64,
    pub block_frequency: f64,
    pub runs: f64,
}

impl RandomnessResult {
    pub fn passes(&self, alpha: f64) -> bool {
        self.monobit >= alpha && self.block_frequency >= alpha && self.runs >= alpha
    }
}

/// The three tests with block length 128, on at least [`MIN_BITS`] bits.
pub fn randomness_subset(bits: &[bool]) -> Result<RandomnessResult> {
    if bits.len() < MIN_BITS {
        return Err(Error::Domain(format!(
            "randomness tests need at least {MIN_BITS} bits, got {}",
            bits.len()
        )));
    }
    Ok(RandomnessResult {
        bits: bits.len(),
        monobit: monobit(bits)?,
        block_frequency: block_frequency(bits, BLOCK_FREQUENCY_M)?,
        runs: runs(bits)?,
    })
}
