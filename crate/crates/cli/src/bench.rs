//! Keystream throughput table: mean time over repeated runs per block count,
//! initialization excluded.

use std::time::Instant;

use dnacrypt::biosnow::{initialize, KeyIv, BLOCK_QUADS};
use serde::Serialize;

pub const DEFAULT_SIZES: [usize; 12] = [100, 200, 300, 400, 500, 600, 700, 800, 900, 1000, 1100, 1200];
pub const DEFAULT_RUNS: usize = 10;
/// Keystream bytes per block (64 quads of 2 bits).
pub const BLOCK_BYTES: usize = BLOCK_QUADS / 4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub blocks: usize,
    pub bytes: usize,
    pub runs: usize,
    pub mean_seconds: f64,
    pub mb_per_second: f64,
}

/// One row per distinct size, sorted ascending.
pub fn run(kiv: &KeyIv, sizes: &[usize], runs: usize) -> Vec<BenchRow> {
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let runs = runs.max(1);
    let initialized = initialize(kiv);
    sizes
        .into_iter()
        .map(|blocks| {
            let mut total = 0.0;
            for _ in 0..runs {
                let mut st = initialized.clone();
                let start = Instant::now();
                let mut sink = 0u8;
                for _ in 0..blocks {
                    sink ^= st.next_keystream_block()[0].code();
                }
                std::hint::black_box(sink);
                total += start.elapsed().as_secs_f64();
            }
            // Timer resolution floor keeps the invariant elapsed > 0.
            let mean_seconds = (total / runs as f64).max(1e-9);
            let bytes = blocks * BLOCK_BYTES;
            BenchRow {
                blocks,
                bytes,
                runs,
                mean_seconds,
                mb_per_second: bytes as f64 / mean_seconds / 1e6,
            }
        })
        .collect()
}
