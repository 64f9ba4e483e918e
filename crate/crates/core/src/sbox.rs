//! Amino-acid S-box.
//!
//! A byte is read as four quads (most significant pair first). The first
//! three quads form a codon, translated with the standard genetic code. All
//! 256 bytes are stable-sorted by the amino-acid class of their codon, using
//! the conventional ordering Ala, Arg, Asn, Asp, Cys, Gln, Glu, Gly, His,
//! Ile, Leu, Lys, Met, Phe, Pro, Ser, Thr, Trp, Tyr, Val, Stop, and the
//! sorted sequence is the forward table. The canonical table is checked in
//! at `docs/amino_sbox.hex`.

use std::fmt::Write as _;
use std::sync::OnceLock;

use crate::quad::{unpack_byte, Quad};

/// One-letter amino-acid code of every codon, indexed by
/// `16 * code(q0) + 4 * code(q1) + code(q2)` (A=0, C=1, G=2, T=3).
const CODON_TABLE: &[u8; 64] =
    b"KNKNTTTTRSRSIIMIQHQHPPPPRRRRLLLLEDEDAAAAGGGGVVVV*Y*YSSSS*CWCLFLF";

/// Class ordering used as the sort key.
const CLASS_ORDER: &[u8; 21] = b"ARNDCQEGHILKMFPSTWYV*";

/// Amino-acid letter (`*` for stop) encoded by a codon.
pub fn translate_codon(codon: [Quad; 3]) -> char {
    let idx = 16 * codon[0].code() as usize + 4 * codon[1].code() as usize + codon[2].code() as usize;
    CODON_TABLE[idx] as char
}

fn class_index(byte: u8) -> usize {
    let q = unpack_byte(byte);
    let aa = translate_codon([q[0], q[1], q[2]]) as u8;
    CLASS_ORDER
        .iter()
        .position(|&c| c == aa)
        .expect("codon table only uses letters from the class ordering")
}

#[derive(Clone, PartialEq, Eq)]
pub struct AminoSBox {
    forward: [u8; 256],
    inverse: [u8; 256],
}

impl std::fmt::Debug for AminoSBox {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AminoSBox")
            .field("forward[0]", &self.forward[0])
            .finish_non_exhaustive()
    }
}

impl AminoSBox {
    pub fn build() -> Self {
        let mut order: Vec<u8> = (0..=255u8).collect();
        // Stable sort; ties keep ascending byte order.
        order.sort_by_key(|&b| class_index(b));

        let mut forward = [0u8; 256];
        forward.copy_from_slice(&order);
        let mut inverse = [0u8; 256];
        for (i, &f) in forward.iter().enumerate() {
            inverse[f as usize] = i as u8;
        }
        AminoSBox { forward, inverse }
    }

    /// Process-wide table, built on first use.
    pub fn shared() -> &'static AminoSBox {
        static TABLE: OnceLock<AminoSBox> = OnceLock::new();
        TABLE.get_or_init(AminoSBox::build)
    }

    #[inline]
    pub fn apply(&self, b: u8) -> u8 {
        self.forward[b as usize]
    }

    #[inline]
    pub fn invert(&self, b: u8) -> u8 {
        self.inverse[b as usize]
    }

    pub fn forward(&self) -> &[u8; 256] {
        &self.forward
    }

    pub fn inverse(&self) -> &[u8; 256] {
        &self.inverse
    }

    /// Canonical hex rendering: 16 lines of 16 space-separated bytes.
    pub fn to_hex_table(&self) -> String {
        let mut out = String::with_capacity(16 * 48);
        for row in self.forward.chunks(16) {
            let line: Vec<String> = row.iter().map(|b| format!("{b:02x}")).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}
