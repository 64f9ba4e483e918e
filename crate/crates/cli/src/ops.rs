//! Subcommand bodies on in-memory buffers; `main` only adds file I/O.

use dnacrypt::attack::full_break;
use dnacrypt::biosnow::{stream_decrypt, stream_encrypt, KeyIv, Keystream};
use dnacrypt::image::{encrypt_image_with, load_ppm, quads_for, save_ppm, Channel, ImagePlanes};
use dnacrypt::improved::{decrypt_improved, encrypt_improved};
use dnacrypt::keys::{parse_bits, parse_key_iv, parse_legacy_key, parse_quad_material};
use dnacrypt::legacy::{block_bytes, decrypt, encrypt, LegacyKey};
use dnacrypt::metrics::{
    adjacent_correlation, avalanche_profile, chi_square_critical_255, chi_square_uniform, entropy, histogram,
    nmae_psnr, randomness_subset, scatter_sample, Direction, MetricReport, Unit, SCATTER_CAP,
};
use dnacrypt::Execution;
use serde::Serialize;

use crate::container::{CipherId, Container};
use crate::error::{CliError, CliResult};

fn legacy_key(text: &str, n: u8) -> CliResult<LegacyKey> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    Ok(parse_legacy_key(text, n as usize)?)
}

fn block_container(cipher: CipherId, param: u8, original_len: usize, payload: Vec<u8>) -> Vec<u8> {
    Container {
        cipher,
        param,
        original_len: original_len as u64,
        iv: None,
        payload,
    }
    .to_bytes()
}

fn original_len(c: &Container) -> CliResult<usize> {
    usize::try_from(c.original_len).map_err(|_| CliError::Container("original length overflows".into()))
}

pub fn legacy_encrypt(data: &[u8], key: &str, n: u8) -> CliResult<Vec<u8>> {
    let key = legacy_key(key, n)?;
    Ok(block_container(CipherId::Legacy, n, data.len(), encrypt(data, &key)))
}

pub fn legacy_decrypt(container: &[u8], key: &str) -> CliResult<Vec<u8>> {
    let c = Container::parse(container)?.expect(CipherId::Legacy)?;
    let key = legacy_key(key, c.param)?;
    Ok(decrypt(&c.payload, &key, original_len(&c)?)?)
}

pub fn improved_encrypt(data: &[u8], key: &str) -> CliResult<Vec<u8>> {
    let key = legacy_key(key, 1)?;
    Ok(block_container(CipherId::Improved, 1, data.len(), encrypt_improved(data, &key)?))
}

pub fn improved_decrypt(container: &[u8], key: &str) -> CliResult<Vec<u8>> {
    let c = Container::parse(container)?.expect(CipherId::Improved)?;
    let key = legacy_key(key, 1)?;
    Ok(decrypt_improved(&c.payload, &key, original_len(&c)?)?)
}

pub fn biosnow_encrypt(data: &[u8], key: &str, iv: &str) -> CliResult<Vec<u8>> {
    let kiv = parse_key_iv(key, iv)?;
    Ok(Container {
        cipher: CipherId::BioSnow,
        param: 0,
        original_len: data.len() as u64,
        iv: Some(kiv.iv_bytes()),
        payload: stream_encrypt(data, &kiv),
    }
    .to_bytes())
}

/// The IV comes from the container; a supplied `iv` must agree with it.
pub fn biosnow_decrypt(container: &[u8], key: &str, iv: Option<&str>) -> CliResult<Vec<u8>> {
    let c = Container::parse(container)?.expect(CipherId::BioSnow)?;
    let stored = c.iv.clone().unwrap_or_default();
    if let Some(iv) = iv {
        if parse_quad_material(iv, "IV")? != stored {
            return Err(CliError::Key("IV does not match the one stored in the container".into()));
        }
    }
    let kiv = KeyIv::from_bytes(&parse_quad_material(key, "key")?, &stored)
        .map_err(|e| CliError::Container(format!("stored IV: {e}")))?;
    Ok(stream_decrypt(&c.payload, &kiv))
}

pub fn biosnow_keystream(key: &str, iv: &str, bytes: usize) -> CliResult<Vec<u8>> {
    Ok(Keystream::new(&parse_key_iv(key, iv)?).take_bytes(bytes))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttackReport {
    pub cipher: &'static str,
    pub n: u8,
    /// Equivalent key in effect for block 0, `rv ‖ cv ‖ mv`.
    pub recovered_key: String,
    pub mv_retry: bool,
    pub plaintext_bytes: usize,
}

/// Known-plaintext break of a block-cipher container from its first two
/// blocks. Improved-cipher containers are attacked with the same legacy model
/// and fail verification.
pub fn legacy_attack(container: &[u8], known: &[u8]) -> CliResult<(AttackReport, Vec<u8>)> {
    let c = Container::parse(container)?;
    if c.cipher == CipherId::BioSnow {
        return Err(CliError::AttackFailed("stream ciphertext has no block structure to attack".into()));
    }
    let side = 8 * c.param as usize;
    let need = 2 * block_bytes(side);
    if known.len() < need {
        return Err(CliError::Usage(format!(
            "known plaintext must cover two blocks ({need} bytes), got {}",
            known.len()
        )));
    }
    let outcome = full_break(&c.payload, &known[..need], side)?;
    let mut plaintext = outcome.plaintext;
    plaintext.truncate(original_len(&c)?);
    Ok((
        AttackReport {
            cipher: c.cipher.name(),
            n: c.param,
            recovered_key: hex::encode(outcome.recovered.key.to_bytes()),
            mv_retry: outcome.recovered.canonicalization.mv_retry,
            plaintext_bytes: plaintext.len(),
        },
        plaintext,
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageReport {
    pub width: usize,
    pub height: usize,
    pub quads_consumed: u64,
}

/// Encrypts (or, identically, decrypts) a PPM file.
pub fn image_crypt(ppm: &[u8], key: &str, iv: &str) -> CliResult<(Vec<u8>, ImageReport)> {
    let kiv = parse_key_iv(key, iv)?;
    let img = load_ppm(ppm)?;
    let mut ks = Keystream::new(&kiv);
    let out = encrypt_image_with(&img, &mut ks);
    debug_assert_eq!(ks.consumed(), quads_for(img.width, img.height));
    Ok((
        save_ppm(&out),
        ImageReport {
            width: img.width,
            height: img.height,
            quads_consumed: ks.consumed(),
        },
    ))
}

/// The payload of a container, or the raw buffer when it is not one.
pub fn payload_or_raw(data: &[u8]) -> (Vec<u8>, bool) {
    match Container::parse(data) {
        Ok(c) => (c.payload, true),
        Err(_) => (data.to_vec(), false),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalyzedCipher {
    Legacy,
    Improved,
    BioSnow,
}

impl AnalyzedCipher {
    pub fn name(self) -> &'static str {
        match self {
            AnalyzedCipher::Legacy => "legacy",
            AnalyzedCipher::Improved => "improved",
            AnalyzedCipher::BioSnow => "biosnow",
        }
    }
}

/// Per-key-bit avalanche and its mean, in percent.
pub fn analyze_avalanche(
    cipher: AnalyzedCipher,
    message: &[u8],
    key: &str,
    n: u8,
    iv: Option<&str>,
    source: &str,
) -> CliResult<MetricReport> {
    let exec = Execution::default();
    let per_bit = match cipher {
        AnalyzedCipher::Legacy => {
            let bits = legacy_key(key, n)?.to_bits();
            avalanche_profile(|k, m| encrypt(m, &LegacyKey::from_bits(k).unwrap()), &bits, message, exec)?
        }
        AnalyzedCipher::Improved => {
            let bits = legacy_key(key, 1)?.to_bits();
            avalanche_profile(
                |k, m| encrypt_improved(m, &LegacyKey::from_bits(k).unwrap()).unwrap(),
                &bits,
                message,
                exec,
            )?
        }
        AnalyzedCipher::BioSnow => {
            let iv = iv.ok_or_else(|| CliError::Usage("Bio-SNOW avalanche needs --iv".into()))?;
            let iv = parse_quad_material(iv, "IV")?;
            let bits = parse_bits(key)?;
            if bits.len() != 256 {
                return Err(CliError::Key(format!("Bio-SNOW key must be 256 bits, got {}", bits.len())));
            }
            avalanche_profile(
                |k, m| {
                    let kb: Vec<u8> = k.chunks(8).map(|c| c.iter().fold(0u8, |a, &b| (a << 1) | b as u8)).collect();
                    stream_encrypt(m, &KeyIv::from_bytes(&kb, &iv).unwrap())
                },
                &bits,
                message,
                exec,
            )?
        }
    };
    let mut rep = MetricReport::new(format!("avalanche/{}", cipher.name()), message.len() as u64, source);
    let mean = per_bit.iter().sum::<f64>() / per_bit.len() as f64;
    rep.push("mean", 100.0 * mean, Unit::Percent);
    for (i, f) in per_bit.iter().enumerate() {
        rep.push(format!("bit_{i}"), 100.0 * f, Unit::Percent);
    }
    Ok(rep)
}

pub fn analyze_entropy(data: &[u8], source: &str) -> CliResult<MetricReport> {
    let h = histogram(data);
    Ok(MetricReport::new("entropy", data.len() as u64, source)
        .with("entropy", entropy(data)?, Unit::BitsPerByte)
        .with("chi_square", chi_square_uniform(&h), Unit::Dimensionless)
        .with("chi_square_critical_0.01", chi_square_critical_255(0.01), Unit::Dimensionless))
}

/// `original` against `encrypted`, compared over the original's length.
pub fn analyze_psnr(original: &[u8], encrypted: &[u8], source: &str) -> CliResult<MetricReport> {
    if encrypted.len() < original.len() {
        return Err(CliError::Usage(format!(
            "ciphertext ({} bytes) is shorter than the original ({} bytes)",
            encrypted.len(),
            original.len()
        )));
    }
    let r = nmae_psnr(original, &encrypted[..original.len()])?;
    Ok(MetricReport::new("psnr", original.len() as u64, source)
        .with("nmae", r.nmae, Unit::Dimensionless)
        .with("psnr", r.psnr_db, Unit::Decibel))
}

pub fn analyze_randomness(data: &[u8], source: &str) -> CliResult<MetricReport> {
    let bits: Vec<bool> = data.iter().flat_map(|&b| (0..8).rev().map(move |k| (b >> k) & 1 == 1)).collect();
    let r = randomness_subset(&bits)?;
    Ok(MetricReport::new("randomness", data.len() as u64, source)
        .with("monobit", r.monobit, Unit::PValue)
        .with("block_frequency_m128", r.block_frequency, Unit::PValue)
        .with("runs", r.runs, Unit::PValue))
}

pub fn analyze_correlation(img: &ImagePlanes, source: &str) -> CliResult<MetricReport> {
    let mut rep = MetricReport::new("correlation", (3 * img.pixels()) as u64, source);
    for ch in Channel::ALL {
        for dir in Direction::ALL {
            let r = adjacent_correlation(img.plane(ch), img.width, img.height, dir)?;
            rep.push(format!("{}/{}", ch.name(), dir.name()), r, Unit::Dimensionless);
        }
    }
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HistogramRow {
    pub channel: &'static str,
    pub value: u8,
    pub count: u64,
}

/// Per-channel rows for a PPM, a single `bytes` channel otherwise.
pub fn histogram_rows(data: &[u8]) -> Vec<HistogramRow> {
    let planes: Vec<(&'static str, Vec<u8>)> = match load_ppm(data) {
        Ok(img) => Channel::ALL.iter().map(|&c| (c.name(), img.plane(c).to_vec())).collect(),
        Err(_) => vec![("bytes", data.to_vec())],
    };
    planes
        .into_iter()
        .flat_map(|(channel, p)| {
            histogram(&p)
                .into_iter()
                .enumerate()
                .map(move |(v, count)| HistogramRow {
                    channel,
                    value: v as u8,
                    count,
                })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScatterRow {
    pub channel: &'static str,
    pub direction: &'static str,
    pub x: u8,
    pub y: u8,
}

pub fn scatter_rows(img: &ImagePlanes) -> Vec<ScatterRow> {
    let mut rows = Vec::new();
    for ch in Channel::ALL {
        for dir in Direction::ALL {
            for (x, y) in scatter_sample(img.plane(ch), img.width, img.height, dir, SCATTER_CAP) {
                rows.push(ScatterRow {
                    channel: ch.name(),
                    direction: dir.name(),
                    x,
                    y,
                });
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    const KEY: &str = "a1b2c3";

    #[test]
    fn legacy_round_trip_and_wrong_cipher() {
        let c = legacy_encrypt(b"hello world", KEY, 1).unwrap();
        assert_eq!(legacy_decrypt(&c, KEY).unwrap(), b"hello world");
        assert!(matches!(improved_decrypt(&c, KEY), Err(CliError::Container(_))));
        assert!(matches!(legacy_encrypt(b"x", "a1b2", 1), Err(CliError::Key(_))));
    }

    #[test]
    fn attack_on_improved_is_clean_failure() {
        let msg: Vec<u8> = (0..80u8).map(|i| i.wrapping_mul(37)).collect();
        let c = improved_encrypt(&msg, KEY).unwrap();
        assert!(matches!(legacy_attack(&c, &msg[..16]), Err(CliError::AttackFailed(_))));
        let l = legacy_encrypt(&msg, KEY, 1).unwrap();
        let (rep, pt) = legacy_attack(&l, &msg[..16]).unwrap();
        assert_eq!(pt, msg);
        assert_eq!(rep.plaintext_bytes, 80);
    }

    #[test]
    fn biosnow_iv_check() {
        let (k, iv) = ("11".repeat(32), "22".repeat(32));
        let c = biosnow_encrypt(b"abc", &k, &iv).unwrap();
        assert_eq!(biosnow_decrypt(&c, &k, None).unwrap(), b"abc");
        assert_eq!(biosnow_decrypt(&c, &k, Some(&iv)).unwrap(), b"abc");
        assert!(matches!(biosnow_decrypt(&c, &k, Some(&"33".repeat(32))), Err(CliError::Key(_))));
    }
}
