//! Bio-SNOW: a quad-oriented stream cipher.
//!
//! State is 256 quads of feedback shift register (FSR-A = `s[0..128]`,
//! FSR-B = `s[128..256]`) plus three 64-quad FSM registers. Each keystream
//! block captures the taps `T1 = s[192..256]`, `T2 = s[0..64]`, clocks the
//! FSRs 128 times, clocks the FSM once and outputs `Z = R1 ⊕ T1`.
//!
//! FSR feedback, from the pre-shift state:
//!
//! ```text
//! t1 = s100 ⊕ s127 ⊕ (s126 ⊗ s125) ⊕ s249   -> enters FSR-B at s128
//! t2 = s240 ⊕ s255 ⊕ (s253 ⊗ s254) ⊕ s114   -> enters FSR-A at s0
//! ```
//!
//! FSM step, all from the old registers:
//!
//! ```text
//! R1' = ParallelAdd(R2, R3) ⊕ T2
//! R2' = BioRound(R1)
//! R3' = BioRound(R2)
//! ```

use crate::error::{Error, Result};
use crate::quad::{
    decode_message_bytes, encode_message_bytes, pack_byte, parallel_add_fixed, parse_quads, transcribe,
    unpack_byte, xor_in_place, Quad,
};
use crate::sbox::AminoSBox;

pub const KEY_QUADS: usize = 128;
pub const REG_QUADS: usize = 64;
pub const FSR_QUADS: usize = 128;
pub const BLOCK_QUADS: usize = 64;
pub const INIT_FSR_CLOCKS: usize = 1024;
pub const CLOCKS_PER_STEP: usize = 128;
pub const INIT_ROUNDS: usize = 16;

pub type Register = [Quad; REG_QUADS];

/// 128-quad key and 128-quad IV.
#[derive(Clone, PartialEq, Eq)]
pub struct KeyIv {
    pub key: [Quad; KEY_QUADS],
    pub iv: [Quad; KEY_QUADS],
}

impl std::fmt::Debug for KeyIv {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("KeyIv").finish_non_exhaustive()
    }
}

fn quads_128(q: &[Quad], what: &'static str) -> Result<[Quad; KEY_QUADS]> {
    q.try_into().map_err(|_| Error::Length {
        what,
        expected: KEY_QUADS,
        actual: q.len(),
    })
}

impl KeyIv {
    pub fn new(key: [Quad; KEY_QUADS], iv: [Quad; KEY_QUADS]) -> Self {
        KeyIv { key, iv }
    }

    /// 32-byte key and IV, four quads per byte (most significant pair first).
    pub fn from_bytes(key: &[u8], iv: &[u8]) -> Result<Self> {
        let conv = |b: &[u8], what| -> Result<[Quad; KEY_QUADS]> {
            let q: Vec<Quad> = b.iter().flat_map(|&x| unpack_byte(x)).collect();
            quads_128(&q, what)
        };
        Ok(KeyIv {
            key: conv(key, "Bio-SNOW key quads")?,
            iv: conv(iv, "Bio-SNOW IV quads")?,
        })
    }

    /// 128-letter `ACGT` strings.
    pub fn from_dna(key: &str, iv: &str) -> Result<Self> {
        Ok(KeyIv {
            key: quads_128(&parse_quads(key)?, "Bio-SNOW key quads")?,
            iv: quads_128(&parse_quads(iv)?, "Bio-SNOW IV quads")?,
        })
    }

    pub fn key_bytes(&self) -> Vec<u8> {
        self.key.chunks_exact(4).map(pack_byte).collect()
    }

    pub fn iv_bytes(&self) -> Vec<u8> {
        self.iv.chunks_exact(4).map(pack_byte).collect()
    }
}

/// Tap snapshot: `t1 = s[192..256]`, `t2 = s[0..64]`. Owned copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TapPair {
    pub t1: Register,
    pub t2: Register,
}

#[derive(Clone, PartialEq, Eq)]
pub struct BioSnowState {
    // Ring buffers; logical s[i] of a half lives at (head + i) mod 128.
    fsr_a: [Quad; FSR_QUADS],
    fsr_b: [Quad; FSR_QUADS],
    head: usize,
    pub r1: Register,
    pub r2: Register,
    pub r3: Register,
    fsm_steps: u64,
}

impl std::fmt::Debug for BioSnowState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BioSnowState")
            .field("fsm_steps", &self.fsm_steps)
            .finish_non_exhaustive()
    }
}

impl BioSnowState {
    /// Builds a state from an explicit FSR image and registers.
    pub fn from_parts(s: &[Quad; 256], r1: Register, r2: Register, r3: Register) -> Self {
        let mut fsr_a = [Quad::A; FSR_QUADS];
        let mut fsr_b = [Quad::A; FSR_QUADS];
        fsr_a.copy_from_slice(&s[..128]);
        fsr_b.copy_from_slice(&s[128..]);
        BioSnowState {
            fsr_a,
            fsr_b,
            head: 0,
            r1,
            r2,
            r3,
            fsm_steps: 0,
        }
    }

    /// Loads key and IV into the FSRs; registers start all-A. No clocking.
    pub fn load(kiv: &KeyIv) -> Self {
        let mut s = [Quad::A; 256];
        s[..64].copy_from_slice(&kiv.key[64..]);
        s[64..128].copy_from_slice(&kiv.iv[..64]);
        s[128..192].copy_from_slice(&kiv.iv[64..]);
        s[192..].copy_from_slice(&kiv.key[..64]);
        BioSnowState::from_parts(&s, [Quad::A; 64], [Quad::A; 64], [Quad::A; 64])
    }

    /// Logical FSR cell `s[i]`, `i < 256`.
    #[inline]
    pub fn s(&self, i: usize) -> Quad {
        if i < FSR_QUADS {
            self.fsr_a[(self.head + i) & 127]
        } else {
            self.fsr_b[(self.head + i - FSR_QUADS) & 127]
        }
    }

    pub fn fsr_snapshot(&self) -> [Quad; 256] {
        std::array::from_fn(|i| self.s(i))
    }

    pub fn fsm_steps(&self) -> u64 {
        self.fsm_steps
    }

    /// One FSR step: both halves shift by one with fresh feedback at the front.
    #[inline]
    pub fn clock_fsr(&mut self) {
        let t1 = self.s(100) ^ self.s(127) ^ (self.s(126) * self.s(125)) ^ self.s(249);
        let t2 = self.s(240) ^ self.s(255) ^ (self.s(253) * self.s(254)) ^ self.s(114);
        self.head = (self.head + 127) & 127;
        self.fsr_a[self.head] = t2;
        self.fsr_b[self.head] = t1;
    }

    pub fn clock_fsr_n(&mut self, times: usize) {
        for _ in 0..times {
            self.clock_fsr();
        }
    }

    pub fn capture_taps(&self) -> TapPair {
        TapPair {
            t1: std::array::from_fn(|i| self.s(192 + i)),
            t2: std::array::from_fn(|i| self.s(i)),
        }
    }

    pub fn clock_fsm(&mut self, taps: &TapPair) {
        let mut r1 = parallel_add_fixed(&self.r2, &self.r3);
        xor_in_place(&mut r1, &taps.t2);
        let r3 = bio_round(&self.r2);
        let r2 = bio_round(&self.r1);
        self.r1 = r1;
        self.r2 = r2;
        self.r3 = r3;
        self.fsm_steps += 1;
    }

    /// Taps, 128 FSR clocks, one FSM clock; returns the taps used.
    fn step(&mut self) -> TapPair {
        let taps = self.capture_taps();
        self.clock_fsr_n(CLOCKS_PER_STEP);
        self.clock_fsm(&taps);
        taps
    }

    /// 64 quads of keystream, `Z = R1 ⊕ T1` with T1 captured before clocking.
    pub fn next_keystream_block(&mut self) -> [Quad; BLOCK_QUADS] {
        let taps = self.step();
        let mut z = self.r1;
        xor_in_place(&mut z, &taps.t1);
        z
    }
}

/// Transcription of every quad, then the S-box on each 4-quad group read as
/// a byte (quad 0 most significant).
pub fn bio_round(x: &Register) -> Register {
    let sbox = AminoSBox::shared();
    let mut out = [Quad::A; REG_QUADS];
    for (o, g) in out.chunks_exact_mut(4).zip(x.chunks_exact(4)) {
        let t = [transcribe(g[0]), transcribe(g[1]), transcribe(g[2]), transcribe(g[3])];
        o.copy_from_slice(&unpack_byte(sbox.apply(pack_byte(&t))));
    }
    out
}

pub fn bio_round_checked(x: &[Quad]) -> Result<Register> {
    let x: &Register = x.try_into().map_err(|_| Error::Length {
        what: "bio_round input",
        expected: REG_QUADS,
        actual: x.len(),
    })?;
    Ok(bio_round(x))
}

/// Full initialization: load, 1024 FSR clocks, then 16 rounds of
/// {taps, 128 FSR clocks, FSM clock}, mixing key halves into R1 after rounds
/// 15 and 16.
pub fn initialize(kiv: &KeyIv) -> BioSnowState {
    let mut st = BioSnowState::load(kiv);
    st.clock_fsr_n(INIT_FSR_CLOCKS);
    for round in 1..=INIT_ROUNDS {
        st.step();
        match round {
            15 => xor_in_place(&mut st.r1, &kiv.key[..64]),
            16 => xor_in_place(&mut st.r1, &kiv.key[64..]),
            _ => {}
        }
    }
    st
}

/// Quad-at-a-time view over the keystream with consumption accounting.
#[derive(Debug, Clone)]
pub struct Keystream {
    state: BioSnowState,
    block: [Quad; BLOCK_QUADS],
    pos: usize,
    consumed: u64,
}

impl Keystream {
    pub fn new(kiv: &KeyIv) -> Self {
        Keystream::from_state(initialize(kiv))
    }

    pub fn from_state(state: BioSnowState) -> Self {
        Keystream {
            state,
            block: [Quad::A; BLOCK_QUADS],
            pos: BLOCK_QUADS,
            consumed: 0,
        }
    }

    /// Quads handed out so far.
    pub fn consumed(&self) -> u64 {
        self.consumed
    }

    pub fn blocks_generated(&self) -> u64 {
        self.state.fsm_steps() - INIT_ROUNDS as u64
    }

    #[inline]
    pub fn next_quad(&mut self) -> Quad {
        if self.pos == BLOCK_QUADS {
            self.block = self.state.next_keystream_block();
            self.pos = 0;
        }
        let q = self.block[self.pos];
        self.pos += 1;
        self.consumed += 1;
        q
    }

    pub fn fill_quads(&mut self, out: &mut [Quad]) {
        for q in out {
            *q = self.next_quad();
        }
    }

    /// Four consecutive quads packed into one byte.
    #[inline]
    pub fn next_byte(&mut self) -> u8 {
        let g = [self.next_quad(), self.next_quad(), self.next_quad(), self.next_quad()];
        pack_byte(&g)
    }

    pub fn take_bytes(&mut self, n: usize) -> Vec<u8> {
        (0..n).map(|_| self.next_byte()).collect()
    }

    pub fn next_block(&mut self) -> [Quad; BLOCK_QUADS] {
        let mut out = [Quad::A; BLOCK_QUADS];
        self.fill_quads(&mut out);
        out
    }
}

/// Message bytes → quads (`00→A 01→T 10→C 11→G`), BioXOR with the keystream,
/// back to bytes. The same call decrypts.
pub fn stream_encrypt(message: &[u8], kiv: &KeyIv) -> Vec<u8> {
    if message.is_empty() {
        return Vec::new();
    }
    let mut ks = Keystream::new(kiv);
    let mut quads = encode_message_bytes(message);
    for q in quads.iter_mut() {
        *q ^= ks.next_quad();
    }
    decode_message_bytes(&quads)
}

pub fn stream_decrypt(ciphertext: &[u8], kiv: &KeyIv) -> Vec<u8> {
    stream_encrypt(ciphertext, kiv)
}
