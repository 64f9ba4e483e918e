use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dnacrypt::image::load_ppm;
use dnacrypt::keys::parse_key_iv;
use dnacrypt_cli::bench::{self, DEFAULT_RUNS, DEFAULT_SIZES};
use dnacrypt_cli::ops::{self, AnalyzedCipher};
use dnacrypt_cli::report::{render_metrics, render_rows, Format};
use dnacrypt_cli::{CliError, CliResult};

/// Fixed key and IV for `bench` when none are given.
const BENCH_KEY: &str = "000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f";
const BENCH_IV: &str = "f0e0d0c0b0a090807060504030201000f1e1d1c1b1a191817161514131211101";

#[derive(Parser)]
#[command(name = "dnacrypt", version, about = "DNA-inspired ciphers, the legacy key-recovery attack, and cipher metrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct BlockArgs {
    /// Key as hex or an ACGT string (24·n bits).
    #[arg(long)]
    key: String,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(clap::Args)]
struct StreamArgs {
    /// 256-bit key: 64 hex digits or 128 ACGT letters.
    #[arg(long)]
    key: String,
    /// 256-bit IV in the same forms as the key.
    #[arg(long)]
    iv: String,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Where to write the dimensions/keystream report (stdout if absent).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Encrypt a file with the legacy block cipher into a container.
    LegacyEncrypt {
        #[command(flatten)]
        args: BlockArgs,
        /// Block side is 8·n bits; the key is 24·n bits.
        #[arg(long, default_value_t = 1)]
        n: u8,
    },
    /// Decrypt a legacy container.
    LegacyDecrypt {
        #[command(flatten)]
        args: BlockArgs,
    },
    /// Recover an equivalent key from two known plaintext blocks and decrypt.
    LegacyAttack {
        /// Ciphertext container.
        #[arg(long = "in")]
        input: PathBuf,
        /// Plaintext of (at least) the first two blocks.
        #[arg(long)]
        known: PathBuf,
        /// Recovered plaintext.
        #[arg(long)]
        out: PathBuf,
        /// Attack summary (JSON or CSV by extension; JSON on stdout if absent).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Encrypt a file with the improved block cipher into a container.
    ImprovedEncrypt {
        #[command(flatten)]
        args: BlockArgs,
    },
    /// Decrypt an improved-cipher container.
    ImprovedDecrypt {
        #[command(flatten)]
        args: BlockArgs,
    },
    /// Dump raw keystream bytes (to stdout when --out is absent or "-").
    BiosnowKeystream {
        #[arg(long)]
        key: String,
        #[arg(long)]
        iv: String,
        #[arg(long)]
        bytes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encrypt a file with the Bio-SNOW stream cipher; the IV is stored in the container.
    BiosnowEncrypt {
        #[arg(long)]
        key: String,
        #[arg(long)]
        iv: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decrypt a Bio-SNOW container; the IV is read from the container.
    BiosnowDecrypt {
        #[arg(long)]
        key: String,
        /// Optional; must match the stored IV when given.
        #[arg(long)]
        iv: Option<String>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Encrypt a binary PPM (P6) image with the Bio-SNOW keystream.
    ImageEncrypt {
        #[command(flatten)]
        args: StreamArgs,
    },
    /// Decrypt a PPM image encrypted with image-encrypt.
    ImageDecrypt {
        #[command(flatten)]
        args: StreamArgs,
    },
    /// Compute a metric and emit a CSV/JSON report.
    Analyze {
        #[arg(long, value_enum)]
        metric: Metric,
        /// Input file (message, ciphertext or container, PPM, or keystream).
        #[arg(long = "in")]
        input: PathBuf,
        /// Cipher under test for `avalanche`.
        #[arg(long, value_enum, default_value_t = CipherArg::Improved)]
        cipher: CipherArg,
        #[arg(long)]
        key: Option<String>,
        #[arg(long)]
        iv: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: u8,
        /// Ciphertext to compare against for `psnr`.
        #[arg(long)]
        compare: Option<PathBuf>,
        /// Report destination; `.json` selects JSON, anything else CSV.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Data file for `histogram` and `scatter` (CSV or JSON by extension).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Keystream throughput table (initialization excluded).
    Bench {
        /// Defaults to a fixed key so runs are comparable.
        #[arg(long)]
        key: Option<String>,
        #[arg(long)]
        iv: Option<String>,
        /// Block counts; defaults to 100,200,...,1200.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_RUNS)]
        runs: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    Avalanche,
    Entropy,
    Psnr,
    Histogram,
    Correlation,
    Scatter,
    Randomness,
}

#[derive(Clone, Copy, ValueEnum)]
enum CipherArg {
    Legacy,
    Improved,
    Biosnow,
}

fn read(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

fn write(path: &Path, data: &[u8]) -> CliResult<()> {
    if path == Path::new("-") {
        return std::io::stdout().write_all(data).map_err(|e| CliError::io("<stdout>", e));
    }
    fs::write(path, data).map_err(|e| CliError::io(path, e))
}

/// Writes to `dest`, or stdout when no destination was given.
fn emit(dest: Option<&Path>, data: &[u8]) -> CliResult<()> {
    write(dest.unwrap_or(Path::new("-")), data)
}

fn format_of(dest: Option<&Path>, default: Format) -> Format {
    dest.map(Format::for_path).unwrap_or(default)
}

fn require<'a>(value: &'a Option<String>, flag: &str) -> CliResult<&'a str> {
    value
        .as_deref()
        .ok_or_else(|| CliError::Usage(format!("this metric requires {flag}")))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::LegacyEncrypt { args, n } => write(&args.out, &ops::legacy_encrypt(&read(&args.input)?, &args.key, n)?),
        Command::LegacyDecrypt { args } => write(&args.out, &ops::legacy_decrypt(&read(&args.input)?, &args.key)?),
        Command::ImprovedEncrypt { args } => write(&args.out, &ops::improved_encrypt(&read(&args.input)?, &args.key)?),
        Command::ImprovedDecrypt { args } => write(&args.out, &ops::improved_decrypt(&read(&args.input)?, &args.key)?),
        Command::LegacyAttack {
            input,
            known,
            out,
            report,
        } => {
            let (summary, plaintext) = ops::legacy_attack(&read(&input)?, &read(&known)?)?;
            write(&out, &plaintext)?;
            let fmt = format_of(report.as_deref(), Format::Json);
            let body = match fmt {
                Format::Json => {
                    let mut v = serde_json::to_vec_pretty(&summary).map_err(|e| CliError::Other(e.to_string()))?;
                    v.push(b'\n');
                    v
                }
                Format::Csv => render_rows(&[summary], Format::Csv)?,
            };
            emit(report.as_deref(), &body)
        }
        Command::BiosnowKeystream { key, iv, bytes, out } => {
            emit(out.as_deref(), &ops::biosnow_keystream(&key, &iv, bytes)?)
        }
        Command::BiosnowEncrypt { key, iv, input, out } => write(&out, &ops::biosnow_encrypt(&read(&input)?, &key, &iv)?),
        Command::BiosnowDecrypt { key, iv, input, out } => {
            write(&out, &ops::biosnow_decrypt(&read(&input)?, &key, iv.as_deref())?)
        }
        Command::ImageEncrypt { args } | Command::ImageDecrypt { args } => {
            let (image, summary) = ops::image_crypt(&read(&args.input)?, &args.key, &args.iv)?;
            write(&args.out, &image)?;
            emit(
                args.report.as_deref(),
                &render_rows(&[summary], format_of(args.report.as_deref(), Format::Csv))?,
            )
        }
        Command::Analyze {
            metric,
            input,
            cipher,
            key,
            iv,
            n,
            compare,
            report,
            out,
        } => {
            let data = read(&input)?;
            let source = input.display().to_string();
            let rep = match metric {
                Metric::Avalanche => {
                    let which = match cipher {
                        CipherArg::Legacy => AnalyzedCipher::Legacy,
                        CipherArg::Improved => AnalyzedCipher::Improved,
                        CipherArg::Biosnow => AnalyzedCipher::BioSnow,
                    };
                    ops::analyze_avalanche(which, &data, require(&key, "--key")?, n, iv.as_deref(), &source)?
                }
                Metric::Entropy => ops::analyze_entropy(&ops::payload_or_raw(&data).0, &source)?,
                Metric::Randomness => ops::analyze_randomness(&ops::payload_or_raw(&data).0, &source)?,
                Metric::Psnr => {
                    let other = compare.ok_or_else(|| CliError::Usage("psnr requires --compare".into()))?;
                    ops::analyze_psnr(&data, &ops::payload_or_raw(&read(&other)?).0, &source)?
                }
                Metric::Correlation => ops::analyze_correlation(&load_ppm(&data)?, &source)?,
                Metric::Histogram | Metric::Scatter => {
                    let dest = out.ok_or_else(|| CliError::Usage("histogram and scatter require --out".into()))?;
                    let fmt = Format::for_path(&dest);
                    let rows = match metric {
                        Metric::Histogram => render_rows(&ops::histogram_rows(&data), fmt)?,
                        _ => render_rows(&ops::scatter_rows(&load_ppm(&data)?), fmt)?,
                    };
                    write(&dest, &rows)?;
                    if matches!(metric, Metric::Histogram) {
                        ops::analyze_entropy(&ops::payload_or_raw(&data).0, &source)?
                    } else {
                        ops::analyze_correlation(&load_ppm(&data)?, &source)?
                    }
                }
            };
            emit(
                report.as_deref(),
                &render_metrics(&[rep], format_of(report.as_deref(), Format::Csv))?,
            )
        }
        Command::Bench {
            key,
            iv,
            sizes,
            runs,
            report,
        } => {
            let kiv = parse_key_iv(key.as_deref().unwrap_or(BENCH_KEY), iv.as_deref().unwrap_or(BENCH_IV))?;
            let sizes = if sizes.is_empty() { DEFAULT_SIZES.to_vec() } else { sizes };
            if sizes.contains(&0) {
                return Err(CliError::Usage("block counts must be positive".into()));
            }
            let rows = bench::run(&kiv, &sizes, runs);
            emit(
                report.as_deref(),
                &render_rows(&rows, format_of(report.as_deref(), Format::Csv))?,
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dnacrypt: error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
