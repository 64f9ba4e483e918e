use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{what}: expected length {expected}, got {actual}")]
    Length {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("dimension mismatch: block side {block} vs key length {key}")]
    Dimension { block: usize, key: usize },

    #[error("invalid character {found:?} at index {index} (expected one of A, C, G, T)")]
    DnaParse { index: usize, found: char },

    #[error("invalid key material: {0}")]
    KeyFormat(String),

    #[error("bit string has odd length {0}; quads need bit pairs")]
    OddBitLength(usize),

    #[error("GF(2) system is inconsistent: equation {equation} reduces to 0 = 1")]
    Inconsistent { equation: usize },

    #[error("mutator vector cross-check failed at position {position}")]
    MutatorMismatch { position: usize },

    #[error("attack failed: {0}")]
    AttackFailed(String),

    #[error("malformed PPM: {0}")]
    Ppm(String),

    #[error("{0}")]
    Domain(String),
}
