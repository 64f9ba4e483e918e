//! Known-plaintext break of the legacy cipher.
//!
//! Diagonal cells never move under the transposition, so
//! `p[i][i] ⊕ q[i][i] = rv[i] ⊕ cv[i]` leaks the swap pattern `s`. With `s`
//! known the transposition can be replayed, turning every cell into one
//! linear equation `rv[i] ⊕ cv[j] = p[i][j] ⊕ q[σ(i,j)]` in 2N unknowns.
//! That system has rank 2N − 1: jointly complementing rv and cv gives the
//! same block cipher, so recovery targets the class representative with
//! `rv[0] = 0`. Two consecutive blocks then pin the mutator vector.

use crate::error::{Error, Result};
use crate::gf2::Gf2System;
use crate::legacy::{block_bytes, decrypt_block, encrypt_block, key_update, BitBlock, LegacyKey, SVector};

/// Recovers `s = rv ⊕ cv` from the untouched diagonal.
pub fn recover_diag_xor(p: &BitBlock, q: &BitBlock) -> Result<SVector> {
    if p.side() != q.side() {
        return Err(Error::Dimension {
            block: p.side(),
            key: q.side(),
        });
    }
    Ok(SVector::new((0..p.side()).map(|i| p.get(i, i) ^ q.get(i, i)).collect()))
}

/// Where each cell ends up after the transposition driven by `s`:
/// `dest[i * n + j]` is the flat index holding original cell (i, j).
pub fn transposition_map(s: &[bool]) -> Vec<usize> {
    let n = s.len();
    // holder[t] = original cell currently stored at position t
    let mut holder: Vec<usize> = (0..n * n).collect();
    for i in (0..n).filter(|&i| s[i]) {
        for j in (0..n).filter(|&j| j != i) {
            holder.swap(i * n + j, j * n + i);
        }
    }
    let mut dest = vec![0; n * n];
    for (t, &orig) in holder.iter().enumerate() {
        dest[orig] = t;
    }
    dest
}

#[inline]
pub fn row_var(i: usize) -> usize {
    i
}

#[inline]
pub fn col_var(n: usize, j: usize) -> usize {
    n + j
}

/// One equation per cell: N(N−1) off-diagonal relations followed by the N
/// diagonal constraints `rv[i] ⊕ cv[i] = s[i]`.
pub fn build_offdiag_system(p: &BitBlock, q: &BitBlock, s: &SVector) -> Result<Gf2System> {
    let n = p.side();
    if q.side() != n || s.s.len() != n {
        return Err(Error::Dimension {
            block: n,
            key: s.s.len(),
        });
    }
    let dest = transposition_map(&s.s);
    let mut sys = Gf2System::new(2 * n);
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let t = dest[i * n + j];
            let rhs = p.get(i, j) ^ q.cells()[t];
            sys.push(&[row_var(i), col_var(n, j)], rhs)?;
        }
    }
    for i in 0..n {
        sys.push(&[row_var(i), col_var(n, i)], s.s[i])?;
    }
    Ok(sys)
}

/// Row and column vectors of one block, without the mutator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockVectors {
    pub rv: Vec<bool>,
    pub cv: Vec<bool>,
}

impl BlockVectors {
    pub fn complemented(&self) -> Self {
        BlockVectors {
            rv: self.rv.iter().map(|b| !b).collect(),
            cv: self.cv.iter().map(|b| !b).collect(),
        }
    }
}

/// Solves one block's system and returns the representative with `rv[0] = 0`.
pub fn recover_block_vectors(p: &BitBlock, q: &BitBlock) -> Result<BlockVectors> {
    let s = recover_diag_xor(p, q)?;
    let sys = build_offdiag_system(p, q, &s)?;
    let sol = sys.solve()?;
    let n = p.side();
    let mut bv = BlockVectors {
        rv: (0..n).map(|i| sol.value(row_var(i))).collect(),
        cv: (0..n).map(|j| sol.value(col_var(n, j))).collect(),
    };
    if bv.rv[0] {
        bv = bv.complemented();
    }
    Ok(bv)
}

/// `mv = rv' ⊕ ls`, cross-checked against `mv = cv' ⊕ rs`.
pub fn recover_mv(block: &BlockVectors, next: &BlockVectors) -> Result<Vec<bool>> {
    let sv = SVector::new(block.rv.iter().zip(&block.cv).map(|(r, c)| r ^ c).collect());
    let mut mv = Vec::with_capacity(sv.s.len());
    for i in 0..sv.s.len() {
        let from_row = next.rv[i] ^ sv.ls[i];
        let from_col = next.cv[i] ^ sv.rs[i];
        if from_row != from_col {
            return Err(Error::MutatorMismatch { position: i });
        }
        mv.push(from_row);
    }
    Ok(mv)
}

/// [`recover_mv`], retrying once with the next block's row vector
/// complemented when the two representatives disagree.
pub fn recover_mv_with_retry(block: &BlockVectors, next: &BlockVectors) -> Result<(Vec<bool>, bool)> {
    match recover_mv(block, next) {
        Ok(mv) => Ok((mv, false)),
        Err(Error::MutatorMismatch { .. }) => {
            let alt = BlockVectors {
                rv: next.rv.iter().map(|b| !b).collect(),
                cv: next.cv.clone(),
            };
            recover_mv(block, &alt).map(|mv| (mv, true))
        }
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonicalization {
    /// Free variable of each block system, fixed by `rv[0] = 0`.
    pub pinned_rv0: bool,
    /// The mutator cross-check needed the complemented retry.
    pub mv_retry: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveredKey {
    /// Key in effect at `block_index`.
    pub key: LegacyKey,
    pub canonicalization: Canonicalization,
    pub block_index: usize,
}

/// Recovers an equivalent key from two consecutive known blocks and checks it
/// by re-encrypting both.
pub fn recover_key(
    p0: &BitBlock,
    q0: &BitBlock,
    p1: &BitBlock,
    q1: &BitBlock,
    block_index: usize,
) -> Result<RecoveredKey> {
    let as_failure = |e: Error| match e {
        Error::Inconsistent { .. } | Error::MutatorMismatch { .. } => {
            Error::AttackFailed(format!("inputs do not fit the legacy cipher model ({e})"))
        }
        other => other,
    };
    let b0 = recover_block_vectors(p0, q0).map_err(as_failure)?;
    let b1 = recover_block_vectors(p1, q1).map_err(as_failure)?;
    let (mv, mv_retry) = recover_mv_with_retry(&b0, &b1).map_err(as_failure)?;
    let key = LegacyKey::new(b0.rv, b0.cv, mv)?;

    if encrypt_block(p0, &key)? != *q0 || encrypt_block(p1, &key_update(&key))? != *q1 {
        return Err(Error::AttackFailed(
            "recovered key does not reproduce the known ciphertext blocks".into(),
        ));
    }
    Ok(RecoveredKey {
        key,
        canonicalization: Canonicalization {
            pinned_rv0: true,
            mv_retry,
        },
        block_index,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreakOutcome {
    pub recovered: RecoveredKey,
    /// Plaintext from the anchor block onward, zero padding included.
    pub plaintext: Vec<u8>,
}

/// Full break from a ciphertext and the plaintext of blocks
/// `anchor` and `anchor + 1`.
///
/// `known` holds exactly those two blocks. Blocks before the anchor are out
/// of reach: only `s`, not the individual vectors, can be walked backwards.
pub fn full_break_at(ciphertext: &[u8], known: &[u8], side: usize, anchor: usize) -> Result<BreakOutcome> {
    let bb = block_bytes(side);
    if known.len() != 2 * bb {
        return Err(Error::Length {
            what: "known plaintext (two blocks)",
            expected: 2 * bb,
            actual: known.len(),
        });
    }
    if !ciphertext.len().is_multiple_of(bb) || ciphertext.len() < (anchor + 2) * bb {
        return Err(Error::AttackFailed(format!(
            "ciphertext of {} bytes does not contain whole blocks {anchor} and {}",
            ciphertext.len(),
            anchor + 1
        )));
    }
    let block = |bytes: &[u8]| BitBlock::from_bytes(bytes, side);
    let p0 = block(&known[..bb])?;
    let p1 = block(&known[bb..])?;
    let q0 = block(&ciphertext[anchor * bb..(anchor + 1) * bb])?;
    let q1 = block(&ciphertext[(anchor + 1) * bb..(anchor + 2) * bb])?;

    let recovered = recover_key(&p0, &q0, &p1, &q1, anchor)?;

    let mut plaintext = Vec::with_capacity(ciphertext.len() - anchor * bb);
    let mut k = recovered.key.clone();
    for (idx, chunk) in ciphertext[anchor * bb..].chunks_exact(bb).enumerate() {
        if idx > 0 {
            k = key_update(&k);
        }
        plaintext.extend(decrypt_block(&block(chunk)?, &k)?.to_bytes());
    }
    Ok(BreakOutcome { recovered, plaintext })
}

/// [`full_break_at`] anchored on the first two blocks.
pub fn full_break(ciphertext: &[u8], known: &[u8], side: usize) -> Result<BreakOutcome> {
    full_break_at(ciphertext, known, side, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legacy::{encrypt, substitute, transpose};

    fn key(bytes: [u8; 3]) -> LegacyKey {
        LegacyKey::from_bytes(&bytes).unwrap()
    }

    #[test]
    fn identical_blocks_give_zero_s() {
        let p = BitBlock::from_bytes(&[9, 8, 7, 6, 5, 4, 3, 2], 8).unwrap();
        assert_eq!(recover_diag_xor(&p, &p).unwrap().s, vec![false; 8]);
    }

    #[test]
    fn system_size_for_n8() {
        let p = BitBlock::zero(8);
        let s = SVector::new(vec![false; 8]);
        let sys = build_offdiag_system(&p, &p, &s).unwrap();
        assert_eq!(sys.len(), 64);
        assert_eq!(sys.unknowns(), 16);
    }

    #[test]
    fn identity_permutation_equations_read_cells_directly() {
        let p = BitBlock::from_bytes(&[0x11, 0x22, 0x33, 0x44, 0x55, 0x66, 0x77, 0x88], 8).unwrap();
        let q = BitBlock::from_bytes(&[0xff, 0x00, 0xf0, 0x0f, 0xaa, 0x55, 0xcc, 0x33], 8).unwrap();
        let s = SVector::new(vec![false; 8]);
        let sys = build_offdiag_system(&p, &q, &s).unwrap();
        let mut k = 0;
        for i in 0..8 {
            for j in (0..8).filter(|&j| j != i) {
                let eq = &sys.equations()[k];
                assert_eq!(eq.vars, vec![i, 8 + j]);
                assert_eq!(eq.rhs, p.get(i, j) ^ q.get(i, j));
                k += 1;
            }
        }
    }

    #[test]
    fn transposition_map_agrees_with_transpose() {
        let s: Vec<bool> = "10110010".chars().map(|c| c == '1').collect();
        let p = BitBlock::from_bytes(&[0x3a, 0xc1, 0x5e, 0x07, 0x99, 0xf2, 0x4b, 0x60], 8).unwrap();
        let t = transpose(&p, &s).unwrap();
        let dest = transposition_map(&s);
        for (cell, &d) in dest.iter().enumerate() {
            assert_eq!(p.cells()[cell], t.cells()[d]);
        }
    }

    #[test]
    fn true_key_satisfies_system() {
        let k = key([0xb4, 0x1d, 0x6e]);
        let p = BitBlock::from_bytes(b"DNAblock", 8).unwrap();
        let q = encrypt_block(&p, &k).unwrap();
        let s = recover_diag_xor(&p, &q).unwrap();
        assert_eq!(s.s, k.diag_xor());
        let sys = build_offdiag_system(&p, &q, &s).unwrap();
        let mut vals = k.rv.clone();
        vals.extend(&k.cv);
        assert!(sys.is_satisfied_by(&vals));
        let sol = sys.solve().unwrap();
        assert_eq!(sol.rank, 15);
        assert_eq!(sol.free_vars.len(), 1);
    }

    #[test]
    fn zero_mutator_formula() {
        let b = BlockVectors {
            rv: "01100000".chars().map(|c| c == '1').collect(),
            cv: "00000000".chars().map(|c| c == '1').collect(),
        };
        let k = LegacyKey::new(b.rv.clone(), b.cv.clone(), vec![false; 8]).unwrap();
        let next = key_update(&k);
        let next = BlockVectors { rv: next.rv, cv: next.cv };
        let mv = recover_mv(&b, &next).unwrap();
        assert_eq!(mv, vec![false; 8]);
        let ls = SVector::new(b.rv.clone()).ls;
        let expect: Vec<bool> = next.rv.iter().zip(&ls).map(|(a, l)| a ^ l).collect();
        assert_eq!(mv, expect);
    }

    #[test]
    fn mixed_representative_triggers_retry() {
        let k = key([0x5a, 0xc3, 0x96]);
        let b0 = BlockVectors { rv: k.rv.clone(), cv: k.cv.clone() };
        let k1 = key_update(&k);
        let bad = BlockVectors {
            rv: k1.rv.iter().map(|b| !b).collect(),
            cv: k1.cv.clone(),
        };
        assert!(matches!(recover_mv(&b0, &bad), Err(Error::MutatorMismatch { .. })));
        let (mv, retried) = recover_mv_with_retry(&b0, &bad).unwrap();
        assert!(retried);
        let rec = LegacyKey::new(b0.rv, b0.cv, mv).unwrap();
        let msg: Vec<u8> = (0..80u8).collect();
        assert_eq!(encrypt(&msg, &rec), encrypt(&msg, &k));
    }

    #[test]
    fn end_to_end_break() {
        let k = key([0xe1, 0x07, 0x3b]);
        let msg: Vec<u8> = (0..80u8).map(|x| x.wrapping_mul(91).wrapping_add(7)).collect();
        let ct = encrypt(&msg, &k);
        let out = full_break(&ct, &msg[..16], 8).unwrap();
        assert_eq!(out.plaintext, msg);
        assert!(!out.recovered.key.rv[0]);
    }

    #[test]
    fn later_anchor_decrypts_forward() {
        let k = key([0x21, 0x9c, 0xd4]);
        let msg: Vec<u8> = (0..96u8).map(|x| x ^ 0x5c).collect();
        let ct = encrypt(&msg, &k);
        let out = full_break_at(&ct, &msg[24..40], 8, 3).unwrap();
        assert_eq!(out.plaintext, &msg[24..]);
        assert_eq!(out.recovered.block_index, 3);
    }

    #[test]
    fn tampered_ciphertext_fails() {
        let k = key([0x13, 0x57, 0x9b]);
        let msg: Vec<u8> = (0..32u8).collect();
        let mut ct = encrypt(&msg, &k);
        ct[2] ^= 0x10;
        let err = full_break(&ct, &msg[..16], 8).unwrap_err();
        assert!(matches!(err, Error::AttackFailed(_)), "{err:?}");
    }

    #[test]
    fn substitution_only_blocks_recover() {
        // rv == cv: no swaps at all
        let k = LegacyKey::new(vec![true; 8], vec![true; 8], vec![false; 8]).unwrap();
        let p = BitBlock::from_bytes(&[1, 2, 4, 8, 16, 32, 64, 128], 8).unwrap();
        let q = substitute(&p, &k).unwrap();
        assert_eq!(q, encrypt_block(&p, &k).unwrap());
        let bv = recover_block_vectors(&p, &q).unwrap();
        assert_eq!(bv.rv, vec![false; 8]);
        assert_eq!(bv.cv, vec![false; 8]);
    }
}
