use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

const KEY: &str = "3c5a96";
const SKEY: &str = "00112233445566778899aabbccddeeff00112233445566778899aabbccddeeff";
const SIV: &str = "0f1e2d3c4b5a69788796a5b4c3d2e1f00f1e2d3c4b5a69788796a5b4c3d2e1f0";

fn dnacrypt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dnacrypt")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> Output {
    let out = dnacrypt(args);
    assert!(
        out.status.success(),
        "dnacrypt {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn code(args: &[&str]) -> i32 {
    dnacrypt(args).status.code().unwrap()
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(TempDir::new().unwrap())
    }

    fn file(&self, name: &str, data: &[u8]) -> String {
        let p = self.0.path().join(name);
        std::fs::write(&p, data).unwrap();
        p.to_str().unwrap().to_string()
    }

    fn path(&self, name: &str) -> String {
        self.0.path().join(name).to_str().unwrap().to_string()
    }
}

fn read(p: &str) -> Vec<u8> {
    std::fs::read(p).unwrap()
}

fn random_bytes(r: &mut ChaCha8Rng, n: usize) -> Vec<u8> {
    let mut v = vec![0; n];
    r.fill(&mut v[..]);
    v
}

#[test]
fn container_round_trip_every_cipher() {
    let d = Dir::new();
    let mut r = ChaCha8Rng::seed_from_u64(1);
    for len in [0usize, 1, 7, 8, 9, 31, 33, 127, 1000, 4097, 10 * 1024] {
        let msg = random_bytes(&mut r, len);
        let plain = d.file("p.bin", &msg);
        let (ct, back) = (d.path("c.dnac"), d.path("back.bin"));
        for (enc, dec, key) in [
            ("legacy-encrypt", "legacy-decrypt", KEY),
            ("improved-encrypt", "improved-decrypt", KEY),
        ] {
            ok(&[enc, "--key", key, "--in", &plain, "--out", &ct]);
            ok(&[dec, "--key", key, "--in", &ct, "--out", &back]);
            assert_eq!(read(&back), msg, "{enc} at {len} bytes");
        }
        ok(&["legacy-encrypt", "--key", "00112233aabb", "--n", "2", "--in", &plain, "--out", &ct]);
        ok(&["legacy-decrypt", "--key", "00112233aabb", "--in", &ct, "--out", &back]);
        assert_eq!(read(&back), msg, "legacy n=2 at {len} bytes");
        ok(&["biosnow-encrypt", "--key", SKEY, "--iv", SIV, "--in", &plain, "--out", &ct]);
        ok(&["biosnow-decrypt", "--key", SKEY, "--in", &ct, "--out", &back]);
        assert_eq!(read(&back), msg, "biosnow at {len} bytes");
    }
}

#[test]
fn n2_legacy_round_trip() {
    let d = Dir::new();
    let key = "00112233aabb";
    let plain = d.file("p.bin", b"non aligned message for a 16x16 block");
    let (ct, back) = (d.path("c"), d.path("b"));
    ok(&["legacy-encrypt", "--key", key, "--n", "2", "--in", &plain, "--out", &ct]);
    assert_eq!(read(&ct)[6], 2);
    ok(&["legacy-decrypt", "--key", key, "--in", &ct, "--out", &back]);
    assert_eq!(read(&back), read(&plain));
}

#[test]
fn dna_keys_are_accepted() {
    let d = Dir::new();
    let plain = d.file("p.bin", b"ACGT keyed");
    let (a, b) = (d.path("a"), d.path("b"));
    // 0x3c5a96 = 00 11 11 00 01 01 10 10 10 01 01 10
    ok(&["legacy-encrypt", "--key", "ATTACCGGGCCG", "--in", &plain, "--out", &a]);
    ok(&["legacy-encrypt", "--key", KEY, "--in", &plain, "--out", &b]);
    assert_eq!(read(&a), read(&b));
}

#[test]
fn attack_recovers_plaintext_and_key() {
    let d = Dir::new();
    let mut r = ChaCha8Rng::seed_from_u64(2);
    let msg = random_bytes(&mut r, 8 * 12 + 3);
    let plain = d.file("p.bin", &msg);
    let known = d.file("k.bin", &msg[..16]);
    let (ct, rec, rep) = (d.path("c"), d.path("rec"), d.path("rep.json"));
    ok(&["legacy-encrypt", "--key", KEY, "--in", &plain, "--out", &ct]);
    ok(&["legacy-attack", "--in", &ct, "--known", &known, "--out", &rec, "--report", &rep]);
    assert_eq!(read(&rec), msg);
    let report: serde_json::Value = serde_json::from_slice(&read(&rep)).unwrap();
    let key = report["recovered_key"].as_str().unwrap();
    assert_eq!(key.len(), 6);
    // The recovered key decrypts the container itself.
    ok(&["legacy-decrypt", "--key", key, "--in", &ct, "--out", &rec]);
    assert_eq!(read(&rec), msg);
}

#[test]
fn attack_on_improved_fails_cleanly() {
    let d = Dir::new();
    let mut r = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let msg = random_bytes(&mut r, 96);
        let key = hex::encode(random_bytes(&mut r, 3));
        let plain = d.file("p.bin", &msg);
        let known = d.file("k.bin", &msg[..16]);
        let ct = d.path("c");
        ok(&["improved-encrypt", "--key", &key, "--in", &plain, "--out", &ct]);
        let out = dnacrypt(&["legacy-attack", "--in", &ct, "--known", &known, "--out", &d.path("x")]);
        assert_eq!(out.status.code(), Some(6));
        assert!(String::from_utf8_lossy(&out.stderr).contains("attack failed"));
    }
}

#[test]
fn distinct_exit_codes() {
    let d = Dir::new();
    let plain = d.file("p.bin", b"data");
    let junk = d.file("junk.dnac", b"DNAX\x01\x01\x01\0\0\0\0\0\0\0\0");
    let out = d.path("o");
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["legacy-encrypt", "--in", &plain, "--out", &out]), 2);
    assert_eq!(code(&["legacy-encrypt", "--key", "abcd", "--in", &plain, "--out", &out]), 3);
    assert_eq!(code(&["legacy-encrypt", "--key", "xyzxyz", "--in", &plain, "--out", &out]), 3);
    assert_eq!(code(&["biosnow-encrypt", "--key", "00", "--iv", SIV, "--in", &plain, "--out", &out]), 3);
    assert_eq!(code(&["legacy-encrypt", "--key", KEY, "--in", "/nonexistent/file", "--out", &out]), 4);
    assert_eq!(code(&["legacy-decrypt", "--key", KEY, "--in", &junk, "--out", &out]), 5);
    assert_eq!(code(&["legacy-decrypt", "--key", KEY, "--in", &plain, "--out", &out]), 5);
    ok(&["biosnow-encrypt", "--key", SKEY, "--iv", SIV, "--in", &plain, "--out", &out]);
    assert_eq!(code(&["legacy-decrypt", "--key", KEY, "--in", &out, "--out", &d.path("x")]), 5);
    let bad_ppm = d.file("bad.ppm", b"P6\n2 2\n255\n123");
    assert_eq!(code(&["image-encrypt", "--key", SKEY, "--iv", SIV, "--in", &bad_ppm, "--out", &out]), 7);
}

#[test]
fn outputs_are_reproducible() {
    let d = Dir::new();
    let plain = d.file("p.bin", &[42; 1000]);
    for cmd in [
        vec!["legacy-encrypt", "--key", KEY],
        vec!["improved-encrypt", "--key", KEY],
        vec!["biosnow-encrypt", "--key", SKEY, "--iv", SIV],
    ] {
        let (a, b) = (d.path("a"), d.path("b"));
        let mut args = cmd.clone();
        args.extend(["--in", &plain, "--out", &a]);
        ok(&args);
        let mut args = cmd;
        args.extend(["--in", &plain, "--out", &b]);
        ok(&args);
        assert_eq!(read(&a), read(&b));
    }
}

#[test]
fn keystream_dump_to_stdout_and_file() {
    let d = Dir::new();
    let out = ok(&["biosnow-keystream", "--key", SKEY, "--iv", SIV, "--bytes", "100"]);
    assert_eq!(out.stdout.len(), 100);
    let f = d.path("ks.bin");
    ok(&["biosnow-keystream", "--key", SKEY, "--iv", SIV, "--bytes", "100", "--out", &f]);
    assert_eq!(read(&f), out.stdout);
    // Stream ciphertext of zeros is the keystream itself under 00->A coding.
    let zeros = d.file("z.bin", &[0; 100]);
    let ct = d.path("z.dnac");
    ok(&["biosnow-encrypt", "--key", SKEY, "--iv", SIV, "--in", &zeros, "--out", &ct]);
    let payload = &read(&ct)[15 + 33..];
    assert_eq!(payload.len(), 100);
    assert_ne!(payload, &out.stdout[..]);
}

#[test]
fn image_round_trip_with_report() {
    let d = Dir::new();
    let mut r = ChaCha8Rng::seed_from_u64(4);
    let mut ppm = b"P6\n# comment\n7 5\n255\n".to_vec();
    ppm.extend(random_bytes(&mut r, 7 * 5 * 3));
    let src = d.file("in.ppm", &ppm);
    let (enc, dec, rep) = (d.path("enc.ppm"), d.path("dec.ppm"), d.path("rep.csv"));
    ok(&["image-encrypt", "--key", SKEY, "--iv", SIV, "--in", &src, "--out", &enc, "--report", &rep]);
    assert_eq!(String::from_utf8(read(&rep)).unwrap(), "width,height,quads_consumed\n7,5,420\n");
    ok(&["image-decrypt", "--key", SKEY, "--iv", SIV, "--in", &enc, "--out", &dec]);
    assert_eq!(read(&dec), ppm);
    assert_ne!(read(&enc), ppm);
}

#[test]
fn analyze_reports() {
    let d = Dir::new();
    let mut r = ChaCha8Rng::seed_from_u64(5);
    let msg = random_bytes(&mut r, 4096);
    let plain = d.file("p.bin", &msg);
    let ct = d.path("c.dnac");
    ok(&["improved-encrypt", "--key", KEY, "--in", &plain, "--out", &ct]);

    let out = ok(&["analyze", "--metric", "entropy", "--in", &ct]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("metric,source,bytes,label,value,unit\nentropy,"));

    let rep = d.path("psnr.json");
    ok(&["analyze", "--metric", "psnr", "--in", &plain, "--compare", &ct, "--report", &rep]);
    let v: serde_json::Value = serde_json::from_slice(&read(&rep)).unwrap();
    assert_eq!(v[0]["values"][1]["label"], "psnr");
    assert_eq!(v[0]["values"][1]["unit"], "decibel");

    let out = ok(&["analyze", "--metric", "avalanche", "--cipher", "legacy", "--key", KEY, "--in", &plain]);
    let rows = String::from_utf8(out.stdout).unwrap();
    assert_eq!(rows.lines().count(), 1 + 1 + 24);

    let hist = d.path("h.csv");
    ok(&["analyze", "--metric", "histogram", "--in", &ct, "--out", &hist]);
    let h = String::from_utf8(read(&hist)).unwrap();
    assert_eq!(h.lines().count(), 257);
    assert!(h.starts_with("channel,value,count\nbytes,0,"));

    assert_eq!(code(&["analyze", "--metric", "randomness", "--in", &plain]), 7);
    assert_eq!(code(&["analyze", "--metric", "psnr", "--in", &plain]), 2);
    assert_eq!(code(&["analyze", "--metric", "bogus", "--in", &plain]), 2);
}

#[test]
fn image_analysis_exports() {
    let d = Dir::new();
    let img = data_path("astronaut.ppm");
    let scatter = d.path("s.csv");
    let out = ok(&["analyze", "--metric", "scatter", "--in", img.to_str().unwrap(), "--out", &scatter]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1 + 9);
    let rows = String::from_utf8(read(&scatter)).unwrap();
    assert!(rows.lines().count() <= 1 + 9 * 5000);
    let hist = d.path("h.json");
    ok(&["analyze", "--metric", "histogram", "--in", img.to_str().unwrap(), "--out", &hist]);
    let v: serde_json::Value = serde_json::from_slice(&read(&hist)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3 * 256);
}

#[test]
fn bench_small_report() {
    let out = ok(&["bench", "--sizes", "3,1,2", "--runs", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "blocks,bytes,runs,mean_seconds,mb_per_second");
    assert!(lines[1].starts_with("1,16,2,"));
    assert!(lines[3].starts_with("3,48,2,"));
    assert_eq!(code(&["bench", "--sizes", "0"]), 2);
}

fn data_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}
