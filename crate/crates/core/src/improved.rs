//! The hardened 8×8 variant: row/column XOR, a row-wise amino-acid S-box,
//! then for each index k a conditional row/column swap (taken when
//! `cv[k] == rv[k]`) followed by `bits[k][k] ^= mv[k]`. The key is 24 bits
//! and advances between blocks with the legacy [`key_update`].

use crate::error::{Error, Result};
use crate::legacy::{self, key_update, substitute, BitBlock, LegacyKey};
use crate::sbox::AminoSBox;

pub const SIDE: usize = 8;
pub const BLOCK_BYTES: usize = 8;

fn check(block: &BitBlock, key: &LegacyKey) -> Result<()> {
    if key.side() != SIDE {
        return Err(Error::KeyFormat(format!(
            "improved cipher needs a 24-bit key, got {} bits",
            3 * key.side()
        )));
    }
    if block.side() != SIDE {
        return Err(Error::Dimension {
            block: block.side(),
            key: SIDE,
        });
    }
    Ok(())
}

pub fn encrypt_block_improved(block: &BitBlock, key: &LegacyKey) -> Result<BitBlock> {
    check(block, key)?;
    let sbox = AminoSBox::shared();
    let mut b = substitute(block, key)?;
    for row in 0..SIDE {
        b.set_row_byte(row, 0, sbox.apply(b.row_byte(row, 0)));
    }
    for k in 0..SIDE {
        if key.cv[k] == key.rv[k] {
            b.swap_row_col(k);
        }
        if key.mv[k] {
            b.flip(k, k);
        }
    }
    Ok(b)
}

pub fn decrypt_block_improved(block: &BitBlock, key: &LegacyKey) -> Result<BitBlock> {
    check(block, key)?;
    let sbox = AminoSBox::shared();
    let mut b = block.clone();
    // Diagonal cells are fixed by every swap, so the mv XORs commute out.
    for k in 0..SIDE {
        if key.mv[k] {
            b.flip(k, k);
        }
    }
    for k in (0..SIDE).rev() {
        if key.cv[k] == key.rv[k] {
            b.swap_row_col(k);
        }
    }
    for row in 0..SIDE {
        b.set_row_byte(row, 0, sbox.invert(b.row_byte(row, 0)));
    }
    substitute(&b, key)
}

fn check_key(key: &LegacyKey) -> Result<()> {
    if key.side() != SIDE {
        return Err(Error::KeyFormat(format!(
            "improved cipher needs a 24-bit key, got {} bits",
            3 * key.side()
        )));
    }
    Ok(())
}

/// Zero-pads to 8-byte blocks and encrypts with the chained key schedule.
pub fn encrypt_improved(message: &[u8], key: &LegacyKey) -> Result<Vec<u8>> {
    check_key(key)?;
    Ok(legacy::process(message, key, encrypt_block_improved))
}

pub fn decrypt_improved(ciphertext: &[u8], key: &LegacyKey, original_len: usize) -> Result<Vec<u8>> {
    check_key(key)?;
    if !ciphertext.len().is_multiple_of(BLOCK_BYTES) {
        return Err(Error::Length {
            what: "ciphertext (multiple of 8 bytes)",
            expected: ciphertext.len().div_ceil(BLOCK_BYTES) * BLOCK_BYTES,
            actual: ciphertext.len(),
        });
    }
    if original_len > ciphertext.len() {
        return Err(Error::Domain(format!(
            "recorded length {original_len} exceeds ciphertext length {}",
            ciphertext.len()
        )));
    }
    let mut out = legacy::process(ciphertext, key, decrypt_block_improved);
    out.truncate(original_len);
    Ok(out)
}

/// Keys for the first `blocks` blocks of a message.
pub fn key_schedule(key: &LegacyKey, blocks: usize) -> Vec<LegacyKey> {
    std::iter::successors(Some(key.clone()), |k| Some(key_update(k)))
        .take(blocks)
        .collect()
}
