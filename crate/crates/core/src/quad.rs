//! The four-letter DNA alphabet and the algebra the ciphers build on.
//!
//! Each [`Quad`] carries a fixed 2-bit code: `A = 00`, `C = 01`, `G = 10`,
//! `T = 11`. Under that code BioXOR is plain XOR (the Klein four-group) and
//! BioMul is multiplication in GF(4) = GF(2)\[x\]/(x² + x + 1) with `C` as
//! the unit and `G` as the generator x.
//!
//! ```text
//!  ⊕ | A C G T        ⊗ | A C G T
//! ---+---------      ---+---------
//!  A | A C G T        A | A A A A
//!  C | C A T G        C | A C G T
//!  G | G T A C        G | A G T C
//!  T | T G C A        T | A T C G
//! ```
//!
//! Message bytes use a *different* pair coding on the wire
//! (`00→A, 01→T, 10→C, 11→G`); see [`encode_message`].

use std::fmt;
use std::ops::{BitXor, BitXorAssign, Mul};

use crate::error::{Error, Result};

/// Quads per lane in [`parallel_add`].
pub const LANE_QUADS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
#[repr(u8)]
pub enum Quad {
    #[default]
    A = 0,
    C = 1,
    G = 2,
    T = 3,
}

impl Quad {
    pub const ALL: [Quad; 4] = [Quad::A, Quad::C, Quad::G, Quad::T];

    #[inline]
    pub const fn from_code(code: u8) -> Quad {
        match code & 3 {
            0 => Quad::A,
            1 => Quad::C,
            2 => Quad::G,
            _ => Quad::T,
        }
    }

    #[inline]
    pub const fn code(self) -> u8 {
        self as u8
    }

    pub fn from_letter(c: char) -> Option<Quad> {
        match c {
            'A' => Some(Quad::A),
            'C' => Some(Quad::C),
            'G' => Some(Quad::G),
            'T' => Some(Quad::T),
            _ => None,
        }
    }

    pub const fn letter(self) -> char {
        match self {
            Quad::A => 'A',
            Quad::C => 'C',
            Quad::G => 'G',
            Quad::T => 'T',
        }
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl BitXor for Quad {
    type Output = Quad;
    #[inline]
    fn bitxor(self, rhs: Quad) -> Quad {
        bioxor(self, rhs)
    }
}

impl BitXorAssign for Quad {
    #[inline]
    fn bitxor_assign(&mut self, rhs: Quad) {
        *self = bioxor(*self, rhs);
    }
}

impl Mul for Quad {
    type Output = Quad;
    #[inline]
    fn mul(self, rhs: Quad) -> Quad {
        biomul(self, rhs)
    }
}

#[inline]
pub const fn bioxor(a: Quad, b: Quad) -> Quad {
    Quad::from_code(a.code() ^ b.code())
}

// GF(4) product table indexed by [a][b] codes.
const MUL_TABLE: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];

#[inline]
pub const fn biomul(a: Quad, b: Quad) -> Quad {
    Quad::from_code(MUL_TABLE[a.code() as usize][b.code() as usize])
}

/// Complement map A↔T, C↔G. On the 2-bit code this is `code ^ 0b11`.
#[inline]
pub const fn transcribe(q: Quad) -> Quad {
    Quad::from_code(q.code() ^ 3)
}

pub fn xor_in_place(dst: &mut [Quad], src: &[Quad]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

/// Packs four quads into a byte, quad 0 in the two most significant bits.
#[inline]
pub fn pack_byte(group: &[Quad]) -> u8 {
    debug_assert_eq!(group.len(), 4);
    (group[0].code() << 6) | (group[1].code() << 4) | (group[2].code() << 2) | group[3].code()
}

#[inline]
pub fn unpack_byte(byte: u8) -> [Quad; 4] {
    [
        Quad::from_code(byte >> 6),
        Quad::from_code(byte >> 4),
        Quad::from_code(byte >> 2),
        Quad::from_code(byte),
    ]
}

/// Packs a quad sequence (length a multiple of 4) into bytes.
pub fn quads_to_bytes(quads: &[Quad]) -> Vec<u8> {
    quads.chunks_exact(4).map(pack_byte).collect()
}

pub fn bytes_to_quads(bytes: &[u8]) -> Vec<Quad> {
    bytes.iter().flat_map(|&b| unpack_byte(b)).collect()
}

fn lane_value(lane: &[Quad]) -> u32 {
    lane.iter()
        .rev()
        .fold(0u32, |acc, q| (acc << 2) | q.code() as u32)
}

fn write_lane(lane: &mut [Quad], mut value: u32) {
    for q in lane.iter_mut() {
        *q = Quad::from_code(value as u8);
        value >>= 2;
    }
}

/// Lane-wise base-4 addition of two 64-quad vectors.
///
/// Each 16-quad lane is a little-endian base-4 number (index 0 least
/// significant). Lanes are added independently modulo 4^16, so the carry out
/// of a lane is dropped and never reaches the neighbouring lane.
pub fn parallel_add_fixed(u: &[Quad; 64], v: &[Quad; 64]) -> [Quad; 64] {
    let mut out = [Quad::A; 64];
    for ((o, a), b) in out
        .chunks_exact_mut(LANE_QUADS)
        .zip(u.chunks_exact(LANE_QUADS))
        .zip(v.chunks_exact(LANE_QUADS))
    {
        // 4^16 == 2^32, so wrapping u32 addition is exactly mod 4^16.
        write_lane(o, lane_value(a).wrapping_add(lane_value(b)));
    }
    out
}

/// Checked form of [`parallel_add_fixed`] for arbitrary slices.
pub fn parallel_add(u: &[Quad], v: &[Quad]) -> Result<[Quad; 64]> {
    let u: &[Quad; 64] = u.try_into().map_err(|_| Error::Length {
        what: "parallel_add lhs",
        expected: 64,
        actual: u.len(),
    })?;
    let v: &[Quad; 64] = v.try_into().map_err(|_| Error::Length {
        what: "parallel_add rhs",
        expected: 64,
        actual: v.len(),
    })?;
    Ok(parallel_add_fixed(u, v))
}

// Message pair coding: 00→A, 01→T, 10→C, 11→G.
const MSG_TO_QUAD: [Quad; 4] = [Quad::A, Quad::T, Quad::C, Quad::G];

#[inline]
fn msg_pair_to_quad(pair: u8) -> Quad {
    MSG_TO_QUAD[pair as usize & 3]
}

#[inline]
fn quad_to_msg_pair(q: Quad) -> u8 {
    match q {
        Quad::A => 0b00,
        Quad::T => 0b01,
        Quad::C => 0b10,
        Quad::G => 0b11,
    }
}

/// Encodes a bit string into quads with the message pair coding.
pub fn encode_message(bits: &[bool]) -> Result<Vec<Quad>> {
    if !bits.len().is_multiple_of(2) {
        return Err(Error::OddBitLength(bits.len()));
    }
    Ok(bits
        .chunks_exact(2)
        .map(|p| msg_pair_to_quad(((p[0] as u8) << 1) | p[1] as u8))
        .collect())
}

pub fn decode_message(quads: &[Quad]) -> Vec<bool> {
    quads
        .iter()
        .flat_map(|&q| {
            let pair = quad_to_msg_pair(q);
            [pair & 2 != 0, pair & 1 != 0]
        })
        .collect()
}

/// Byte-oriented [`encode_message`]: four quads per byte, most significant
/// pair first.
pub fn encode_message_bytes(bytes: &[u8]) -> Vec<Quad> {
    bytes
        .iter()
        .flat_map(|&b| {
            [
                msg_pair_to_quad(b >> 6),
                msg_pair_to_quad(b >> 4),
                msg_pair_to_quad(b >> 2),
                msg_pair_to_quad(b),
            ]
        })
        .collect()
}

pub fn decode_message_bytes(quads: &[Quad]) -> Vec<u8> {
    quads
        .chunks_exact(4)
        .map(|g| g.iter().fold(0u8, |acc, &q| (acc << 2) | quad_to_msg_pair(q)))
        .collect()
}

/// Parses an `ACGT` string into quads, reporting the first foreign character.
pub fn parse_quads(text: &str) -> Result<Vec<Quad>> {
    text.chars()
        .enumerate()
        .map(|(index, c)| Quad::from_letter(c).ok_or(Error::DnaParse { index, found: c }))
        .collect()
}

/// Parses an `ACGT` string into bits using the internal 2-bit code.
pub fn parse_dna_string(text: &str) -> Result<Vec<bool>> {
    Ok(parse_quads(text)?
        .into_iter()
        .flat_map(|q| [q.code() & 2 != 0, q.code() & 1 != 0])
        .collect())
}

pub fn quads_to_string(quads: &[Quad]) -> String {
    quads.iter().map(|q| q.letter()).collect()
}
