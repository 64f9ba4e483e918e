//! Key material from text: hexadecimal, or an `ACGT` string read with the
//! 2-bit quad code.

use crate::biosnow::{KeyIv, KEY_QUADS};
use crate::error::{Error, Result};
use crate::legacy::{bytes_to_bits, LegacyKey};
use crate::quad::{parse_dna_string, parse_quads, quads_to_bytes};

/// Parses hex (optionally `0x`-prefixed) or an `ACGT` string into bits.
/// A string made only of uppercase A/C/G/T letters is read as DNA; prefix
/// `0x` to force hex for something like `ACCA`.
pub fn parse_bits(text: &str) -> Result<Vec<bool>> {
    let t = text.trim();
    if !t.is_empty() && t.chars().all(|c| matches!(c, 'A' | 'C' | 'G' | 'T')) {
        return parse_dna_string(t);
    }
    let bytes = decode_hex(t, "key")?;
    if bytes.is_empty() {
        return Err(Error::KeyFormat("empty key".into()));
    }
    Ok(bytes_to_bits(&bytes))
}

/// A legacy/improved key of exactly `24 * n` bits.
pub fn parse_legacy_key(text: &str, n: usize) -> Result<LegacyKey> {
    let bits = parse_bits(text)?;
    if bits.len() != 24 * n {
        return Err(Error::KeyFormat(format!(
            "key has {} bits; n = {n} needs {}",
            bits.len(),
            24 * n
        )));
    }
    LegacyKey::from_bits(&bits)
}

/// 32 bytes for a 128-quad Bio-SNOW key or IV.
pub fn parse_quad_material(text: &str, what: &str) -> Result<Vec<u8>> {
    let t = text.trim();
    if t.len() == KEY_QUADS && t.chars().all(|c| matches!(c, 'A' | 'C' | 'G' | 'T')) {
        return Ok(quads_to_bytes(&parse_quads(t)?));
    }
    let bytes = decode_hex(t, what)?;
    if bytes.len() != 32 {
        return Err(Error::KeyFormat(format!(
            "{what} must be 64 hex digits or 128 ACGT letters, got {} characters",
            t.len()
        )));
    }
    Ok(bytes)
}

fn decode_hex(text: &str, what: &str) -> Result<Vec<u8>> {
    hex::decode(text.strip_prefix("0x").unwrap_or(text))
        .map_err(|e| Error::KeyFormat(format!("{what} {text:?} is neither ACGT nor hex: {e}")))
}

pub fn parse_key_iv(key: &str, iv: &str) -> Result<KeyIv> {
    KeyIv::from_bytes(&parse_quad_material(key, "key")?, &parse_quad_material(iv, "IV")?)
}
