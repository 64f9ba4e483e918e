//! DNA-inspired ciphers and their analysis.
//!
//! * [`quad`]: the A/C/G/T alphabet, BioXOR, BioMul, ParallelAdd, encodings.
//! * [`sbox`]: the codon-derived byte S-box.
//! * [`legacy`]: the row/column XOR + transposition block cipher.
//! * [`attack`]: recovery of an equivalent legacy key from two known blocks.
//! * [`improved`]: the S-box hardened 24-bit variant.
//! * [`biosnow`]: the Bio-SNOW stream cipher.
//! * [`image`]: PPM planes and image encryption.
//! * [`metrics`]: avalanche, PSNR, entropy, correlation, randomness tests.

pub mod attack;
pub mod biosnow;
pub mod error;
pub mod exec;
pub mod gf2;
pub mod image;
pub mod improved;
pub mod keys;
pub mod legacy;
pub mod metrics;
pub mod quad;
pub mod sbox;

pub use error::{Error, Result};
pub use exec::Execution;
