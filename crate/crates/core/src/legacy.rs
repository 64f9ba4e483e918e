//! The legacy DNA block cipher.
//!
//! A message is cut into N×N bit blocks (N = 8n). Each block is XORed with
//! the row vector along rows and the column vector along columns, then row i
//! and column i are exchanged for every index where `rv[i] ^ cv[i] = 1`.
//! Between blocks the key is advanced by [`key_update`], driven by the
//! mutator vector.
//!
//! Byte layout for blocks and key vectors: row-major bits, most significant
//! bit first within each byte.

use crate::error::{Error, Result};

/// An N×N bit matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitBlock {
    side: usize,
    cells: Vec<bool>,
}

impl BitBlock {
    pub fn zero(side: usize) -> Self {
        assert!(side > 0 && side.is_multiple_of(8), "block side must be a positive multiple of 8");
        BitBlock {
            side,
            cells: vec![false; side * side],
        }
    }

    /// Reads `side² / 8` bytes.
    pub fn from_bytes(bytes: &[u8], side: usize) -> Result<Self> {
        if side == 0 || !side.is_multiple_of(8) {
            return Err(Error::Domain(format!("block side {side} is not a positive multiple of 8")));
        }
        let need = side * side / 8;
        if bytes.len() != need {
            return Err(Error::Length {
                what: "block bytes",
                expected: need,
                actual: bytes.len(),
            });
        }
        Ok(BitBlock {
            side,
            cells: bytes_to_bits(bytes),
        })
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        bits_to_bytes(&self.cells)
    }

    pub fn side(&self) -> usize {
        self.side
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.cells[row * self.side + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, bit: bool) {
        self.cells[row * self.side + col] = bit;
    }

    #[inline]
    pub fn flip(&mut self, row: usize, col: usize) {
        self.cells[row * self.side + col] ^= true;
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    /// Exchanges row `i` with column `i`; the diagonal cell stays put.
    pub fn swap_row_col(&mut self, i: usize) {
        let n = self.side;
        for j in 0..n {
            if j != i {
                self.cells.swap(i * n + j, j * n + i);
            }
        }
    }

    pub(crate) fn row_byte(&self, row: usize, byte: usize) -> u8 {
        let base = row * self.side + byte * 8;
        self.cells[base..base + 8]
            .iter()
            .fold(0u8, |acc, &b| (acc << 1) | b as u8)
    }

    pub(crate) fn set_row_byte(&mut self, row: usize, byte: usize, value: u8) {
        let base = row * self.side + byte * 8;
        for (k, cell) in self.cells[base..base + 8].iter_mut().enumerate() {
            *cell = value & (0x80 >> k) != 0;
        }
    }
}

pub(crate) fn bytes_to_bits(bytes: &[u8]) -> Vec<bool> {
    bytes
        .iter()
        .flat_map(|&b| (0..8).map(move |k| b & (0x80 >> k) != 0))
        .collect()
}

pub(crate) fn bits_to_bytes(bits: &[bool]) -> Vec<u8> {
    bits.chunks(8)
        .map(|c| c.iter().enumerate().fold(0u8, |acc, (k, &b)| acc | ((b as u8) << (7 - k))))
        .collect()
}

/// Row, column and mutator vectors, each N bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LegacyKey {
    pub rv: Vec<bool>,
    pub cv: Vec<bool>,
    pub mv: Vec<bool>,
}

impl LegacyKey {
    pub fn new(rv: Vec<bool>, cv: Vec<bool>, mv: Vec<bool>) -> Result<Self> {
        let n = rv.len();
        if n == 0 || !n.is_multiple_of(8) {
            return Err(Error::KeyFormat(format!("vector length {n} is not a positive multiple of 8")));
        }
        if cv.len() != n || mv.len() != n {
            return Err(Error::KeyFormat(format!(
                "vector lengths differ: rv {}, cv {}, mv {}",
                n,
                cv.len(),
                mv.len()
            )));
        }
        Ok(LegacyKey { rv, cv, mv })
    }

    /// Splits `3N` bits into `rv ‖ cv ‖ mv`.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        if !bits.len().is_multiple_of(3) {
            return Err(Error::KeyFormat(format!("{} key bits is not 3N", bits.len())));
        }
        let n = bits.len() / 3;
        LegacyKey::new(bits[..n].to_vec(), bits[n..2 * n].to_vec(), bits[2 * n..].to_vec())
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        LegacyKey::from_bits(&bytes_to_bits(bytes))
    }

    pub fn to_bits(&self) -> Vec<bool> {
        let mut bits = Vec::with_capacity(3 * self.side());
        bits.extend_from_slice(&self.rv);
        bits.extend_from_slice(&self.cv);
        bits.extend_from_slice(&self.mv);
        bits
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        bits_to_bytes(&self.to_bits())
    }

    /// Block side N (equal to each vector's length).
    pub fn side(&self) -> usize {
        self.rv.len()
    }

    pub fn diag_xor(&self) -> Vec<bool> {
        self.rv.iter().zip(&self.cv).map(|(r, c)| r ^ c).collect()
    }

    /// The key in effect for block `index` (0-based).
    pub fn for_block(&self, index: usize) -> LegacyKey {
        let mut k = self.clone();
        for _ in 0..index {
            k = key_update(&k);
        }
        k
    }
}

/// `s = rv ⊕ cv` with its left and right rotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SVector {
    pub s: Vec<bool>,
    pub ls: Vec<bool>,
    pub rs: Vec<bool>,
}

impl SVector {
    pub fn new(s: Vec<bool>) -> Self {
        let n = s.len();
        let ls = (0..n).map(|i| s[(i + 1) % n]).collect();
        let rs = (0..n).map(|i| s[(i + n - 1) % n]).collect();
        SVector { s, ls, rs }
    }

    pub fn from_key(key: &LegacyKey) -> Self {
        SVector::new(key.diag_xor())
    }
}

fn check_dims(block: &BitBlock, n: usize) -> Result<()> {
    if block.side() != n {
        return Err(Error::Dimension {
            block: block.side(),
            key: n,
        });
    }
    Ok(())
}

/// `out[i][j] = block[i][j] ⊕ rv[i] ⊕ cv[j]`.
pub fn substitute(block: &BitBlock, key: &LegacyKey) -> Result<BitBlock> {
    let n = key.side();
    check_dims(block, n)?;
    let mut out = block.clone();
    for i in 0..n {
        for j in 0..n {
            if key.rv[i] ^ key.cv[j] {
                out.flip(i, j);
            }
        }
    }
    Ok(out)
}

/// Swaps row i with column i for every set `s[i]`, in increasing i.
pub fn transpose(block: &BitBlock, s: &[bool]) -> Result<BitBlock> {
    check_dims(block, s.len())?;
    let mut out = block.clone();
    for (i, _) in s.iter().enumerate().filter(|(_, &b)| b) {
        out.swap_row_col(i);
    }
    Ok(out)
}

/// Undoes [`transpose`]: the same swaps in decreasing i.
pub fn untranspose(block: &BitBlock, s: &[bool]) -> Result<BitBlock> {
    check_dims(block, s.len())?;
    let mut out = block.clone();
    for (i, _) in s.iter().enumerate().rev().filter(|(_, &b)| b) {
        out.swap_row_col(i);
    }
    Ok(out)
}

/// Per-block key variation: `rv' = ls ⊕ mv`, `cv' = rs ⊕ mv`, mv unchanged.
pub fn key_update(key: &LegacyKey) -> LegacyKey {
    let sv = SVector::from_key(key);
    LegacyKey {
        rv: sv.ls.iter().zip(&key.mv).map(|(l, m)| l ^ m).collect(),
        cv: sv.rs.iter().zip(&key.mv).map(|(r, m)| r ^ m).collect(),
        mv: key.mv.clone(),
    }
}

pub fn encrypt_block(block: &BitBlock, key: &LegacyKey) -> Result<BitBlock> {
    transpose(&substitute(block, key)?, &key.diag_xor())
}

pub fn decrypt_block(block: &BitBlock, key: &LegacyKey) -> Result<BitBlock> {
    substitute(&untranspose(block, &key.diag_xor())?, key)
}

/// Bytes per block for a key of side N.
pub fn block_bytes(side: usize) -> usize {
    side * side / 8
}

/// Zero-pads to whole blocks and encrypts with the chained key schedule.
/// The true length is not recorded; see [`decrypt`].
pub fn encrypt(message: &[u8], key: &LegacyKey) -> Vec<u8> {
    process(message, key, encrypt_block)
}

/// Decrypts whole blocks and truncates to `original_len`.
pub fn decrypt(ciphertext: &[u8], key: &LegacyKey, original_len: usize) -> Result<Vec<u8>> {
    let bb = block_bytes(key.side());
    if !ciphertext.len().is_multiple_of(bb) {
        return Err(Error::Length {
            what: "ciphertext (multiple of block size)",
            expected: ciphertext.len().div_ceil(bb) * bb,
            actual: ciphertext.len(),
        });
    }
    if original_len > ciphertext.len() {
        return Err(Error::Domain(format!(
            "recorded length {original_len} exceeds ciphertext length {}",
            ciphertext.len()
        )));
    }
    let mut out = process(ciphertext, key, decrypt_block);
    out.truncate(original_len);
    Ok(out)
}

pub(crate) fn process(
    data: &[u8],
    key: &LegacyKey,
    op: impl Fn(&BitBlock, &LegacyKey) -> Result<BitBlock>,
) -> Vec<u8> {
    let side = key.side();
    let bb = block_bytes(side);
    let mut out = Vec::with_capacity(data.len().div_ceil(bb) * bb);
    let mut k = key.clone();
    let mut buf = vec![0u8; bb];
    for (idx, chunk) in data.chunks(bb).enumerate() {
        if idx > 0 {
            k = key_update(&k);
        }
        buf.fill(0);
        buf[..chunk.len()].copy_from_slice(chunk);
        let block = BitBlock::from_bytes(&buf, side).expect("buffer sized to one block");
        let res = op(&block, &k).expect("block side equals key side");
        out.extend_from_slice(&res.to_bytes());
    }
    out
}
