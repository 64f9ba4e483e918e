mod common;

use common::{random_bytes, random_key, rng};
use dnacrypt::improved::*;
use dnacrypt::legacy::{key_update, BitBlock, LegacyKey};
use dnacrypt::sbox::AminoSBox;
use proptest::prelude::*;

#[test]
fn block_round_trip_1000() {
    let mut r = rng(51);
    for _ in 0..1000 {
        let key = random_key(&mut r, 8);
        let b = BitBlock::from_bytes(&random_bytes(&mut r, 8), 8).unwrap();
        let c = encrypt_block_improved(&b, &key).unwrap();
        assert_eq!(decrypt_block_improved(&c, &key).unwrap(), b);
    }
}

#[test]
fn zero_block_zero_key_fixed_point() {
    let key = LegacyKey::from_bytes(&[0; 3]).unwrap();
    let z = BitBlock::zero(8);
    let c = encrypt_block_improved(&z, &key).unwrap();
    assert_eq!(decrypt_block_improved(&c, &key).unwrap(), z);
    // Zero key: the S-box output of 0x00 in every row, then all eight swaps.
    let mut expect = BitBlock::from_bytes(&[AminoSBox::shared().apply(0); 8], 8).unwrap();
    for k in 0..8 {
        expect.swap_row_col(k);
    }
    assert_eq!(c, expect);
}

#[test]
fn diagonal_leak_is_gone() {
    let mut r = rng(52);
    let keys = 10_000;
    let mut leaking = 0;
    for _ in 0..keys {
        let key = random_key(&mut r, 8);
        let msg = random_bytes(&mut r, 16);
        let ct = encrypt_improved(&msg, &key).unwrap();
        let all_match = (0..2).all(|b| {
            let k = key.for_block(b);
            let p = BitBlock::from_bytes(&msg[8 * b..8 * b + 8], 8).unwrap();
            let q = BitBlock::from_bytes(&ct[8 * b..8 * b + 8], 8).unwrap();
            (0..8).all(|i| p.get(i, i) ^ q.get(i, i) == k.rv[i] ^ k.cv[i])
        });
        leaking += all_match as usize;
    }
    // Chance level for 16 independent bit matches is 1/65536.
    assert!(leaking * 1000 < keys, "{leaking} of {keys} keys still leak the diagonal");
}

#[test]
fn ciphertext_bit_flip_spreads_within_row() {
    let mut r = rng(53);
    let mut widened = 0;
    for _ in 0..500 {
        let key = random_key(&mut r, 8);
        let b = BitBlock::from_bytes(&random_bytes(&mut r, 8), 8).unwrap();
        let mut c = encrypt_block_improved(&b, &key).unwrap();
        let (i, j) = (rand::Rng::random_range(&mut r, 0..8), rand::Rng::random_range(&mut r, 0..8));
        c.flip(i, j);
        let d = decrypt_block_improved(&c, &key).unwrap();
        let diff: u32 = d.to_bytes().iter().zip(b.to_bytes()).map(|(x, y)| (x ^ y).count_ones()).sum();
        assert!(diff >= 1);
        widened += (diff > 1) as usize;
    }
    assert!(widened > 250, "S-box spread only {widened}/500 flips");
}

#[test]
fn key_size_enforced() {
    let key = LegacyKey::from_bytes(&[0; 6]).unwrap();
    assert!(encrypt_improved(b"x", &key).is_err());
    assert!(encrypt_block_improved(&BitBlock::zero(16), &LegacyKey::from_bytes(&[0; 3]).unwrap()).is_err());
}

#[test]
fn schedule_is_the_legacy_one() {
    let mut r = rng(54);
    let key = random_key(&mut r, 8);
    let ks = key_schedule(&key, 3);
    assert_eq!(ks[0], key);
    assert_eq!(ks[2], key_update(&key_update(&key)));
    let msg = random_bytes(&mut r, 24);
    let ct = encrypt_improved(&msg, &key).unwrap();
    for (b, k) in ks.iter().enumerate() {
        let p = BitBlock::from_bytes(&msg[8 * b..8 * b + 8], 8).unwrap();
        assert_eq!(encrypt_block_improved(&p, k).unwrap().to_bytes(), ct[8 * b..8 * b + 8]);
    }
}

proptest! {
    #[test]
    fn message_round_trip(seed in any::<u64>(), len in 0usize..300) {
        let mut r = rng(seed);
        let key = random_key(&mut r, 8);
        let msg = random_bytes(&mut r, len);
        let ct = encrypt_improved(&msg, &key).unwrap();
        prop_assert_eq!(ct.len(), len.div_ceil(8) * 8);
        prop_assert_eq!(decrypt_improved(&ct, &key, len).unwrap(), msg);
    }

    #[test]
    fn every_stage_conserves_cells(seed in any::<u64>()) {
        let mut r = rng(seed);
        let key = random_key(&mut r, 8);
        let mut b = BitBlock::from_bytes(&random_bytes(&mut r, 8), 8).unwrap();
        let before = b.cells().iter().filter(|&&c| c).count();
        for k in 0..8 {
            if key.cv[k] == key.rv[k] {
                b.swap_row_col(k);
            }
        }
        prop_assert_eq!(b.cells().iter().filter(|&&c| c).count(), before);
    }
}
