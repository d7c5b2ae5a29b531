//! Seeded Monte Carlo BER/FER sweeps.
//!
//! Every frame draws its codeword and noise from its own ChaCha stream: the
//! key is derived from the master seed, the grid point index and the
//! decoder, and the stream number is the frame index. Frames run in
//! fixed-size batches on a worker pool and are then folded in frame order,
//! so the stopping frame and every count are identical for any worker count.

mod plot;
mod record;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channel::{awgn_transmit, modulate_bpsk, posteriors, ChannelParams};
use crate::code::{derive_generator, load_alist, Codeword, Generator, SparseParityCheck};
use crate::decoder::{DecodeOutcome, DecoderKind};
use crate::error::{Error, Result};
use crate::mlpd::{hard_map, mlpd_decode, MlpdConfig};
use crate::spa::spa_decode;

pub use plot::plot_svg;
pub use record::{format_sig6, parse_csv, records_to_csv, BerRecord, CSV_HEADER};

/// Frames evaluated per parallel batch. Fixed so results do not depend on
/// the worker count.
const BATCH_FRAMES: u64 = 512;

/// How transmitted codewords are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodewordMode {
    AllZero,
    /// Uniform random message encoded with a derived systematic generator.
    Random,
}

impl FromStr for CodewordMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all-zero" | "zero" => Ok(CodewordMode::AllZero),
            "random" => Ok(CodewordMode::Random),
            other => Err(Error::param(format!("unknown codeword mode {other:?}"))),
        }
    }
}

/// Inclusive Eb/N0 grid `start:step:stop` in dB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EbN0Grid {
    pub start: f64,
    pub step: f64,
    pub stop: f64,
}

impl EbN0Grid {
    pub fn single(ebn0_db: f64) -> Self {
        EbN0Grid {
            start: ebn0_db,
            step: 1.0,
            stop: ebn0_db,
        }
    }

    /// Grid points `start + i·step`, computed without accumulation.
    pub fn points(&self) -> Result<Vec<f64>> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.step.is_finite()) {
            return Err(Error::param("Eb/N0 grid must be finite"));
        }
        if self.stop < self.start {
            return Err(Error::param("Eb/N0 grid is empty"));
        }
        if self.step <= 0.0 {
            return Err(Error::param("Eb/N0 step must be positive"));
        }
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        Ok((0..count).map(|i| self.start + i as f64 * self.step).collect())
    }
}

impl FromStr for EbN0Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::param(format!("bad Eb/N0 value {t:?}")))
        };
        match parts[..] {
            [a] => Ok(EbN0Grid::single(num(a)?)),
            [a, step, b] => Ok(EbN0Grid {
                start: num(a)?,
                step: num(step)?,
                stop: num(b)?,
            }),
            _ => Err(Error::param(format!("Eb/N0 grid {s:?} is not START:STEP:STOP"))),
        }
    }
}

impl fmt::Display for EbN0Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.step, self.stop)
    }
}

/// Sweep parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub decoders: Vec<DecoderKind>,
    pub ebn0: EbN0Grid,
    /// SPA iteration cap.
    pub spa_max_iters: usize,
    pub mlpd: MlpdConfig,
    /// A point stops once this many frame errors are seen...
    pub min_frame_errors: u64,
    /// ...or after this many frames.
    pub max_frames: u64,
    pub master_seed: u64,
    pub codeword_mode: CodewordMode,
    /// Worker threads; 0 picks the machine default.
    pub workers: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            decoders: vec![DecoderKind::Spa, DecoderKind::Mlpd],
            ebn0: EbN0Grid {
                start: 0.0,
                step: 1.0,
                stop: 8.0,
            },
            spa_max_iters: 50,
            mlpd: MlpdConfig::default(),
            min_frame_errors: 100,
            max_frames: 1_000_000,
            master_seed: 0,
            codeword_mode: CodewordMode::AllZero,
            workers: 0,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.decoders.is_empty() {
            return Err(Error::param("no decoders selected"));
        }
        self.ebn0.points()?;
        if self.spa_max_iters == 0 {
            return Err(Error::param("max_iters must be at least 1"));
        }
        self.mlpd.validate()?;
        if self.min_frame_errors == 0 {
            return Err(Error::param("min_frame_errors must be at least 1"));
        }
        if self.max_frames == 0 {
            return Err(Error::param("max_frames must be at least 1"));
        }
        Ok(())
    }
}

/// Decodes `p` with `kind`.
pub fn decode_with(
    kind: DecoderKind,
    p: &crate::soft::SoftVector,
    h: &SparseParityCheck,
    spa_max_iters: usize,
    mlpd: &MlpdConfig,
) -> Result<DecodeOutcome> {
    match kind {
        DecoderKind::Spa => Ok(spa_decode(p, h, spa_max_iters)?.outcome),
        DecoderKind::Mlpd => Ok(mlpd_decode(p, h, mlpd)?.0),
        DecoderKind::Uncoded => {
            let bits = hard_map(p);
            let syndrome_weight = h.syndrome(&bits)?.iter().filter(|&&s| s != 0).count();
            Ok(DecodeOutcome {
                bits,
                converged: syndrome_weight == 0,
                iterations: 0,
                syndrome_weight,
                decoder: DecoderKind::Uncoded,
            })
        }
    }
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Key of the RNG streams for one (grid point, decoder) cell.
pub fn point_seed(master_seed: u64, point_index: usize, decoder: DecoderKind) -> u64 {
    let tag = match decoder {
        DecoderKind::Spa => 1,
        DecoderKind::Mlpd => 2,
        DecoderKind::Uncoded => 3,
    };
    mix(mix(mix(master_seed) ^ point_index as u64) ^ tag)
}

#[derive(Debug, Clone, Copy, Default)]
struct FrameResult {
    bit_errors: u64,
    frame_error: bool,
    iterations: u64,
}

/// A code bound to a sweep configuration and a worker pool.
pub struct Simulation {
    code: SparseParityCheck,
    config: SimConfig,
    generator: Option<Generator>,
    rate: f64,
    pool: rayon::ThreadPool,
}

impl fmt::Debug for Simulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Simulation")
            .field("n", &self.code.n())
            .field("m", &self.code.m())
            .field("rate", &self.rate)
            .field("config", &self.config)
            .finish()
    }
}

impl Simulation {
    pub fn new(code: SparseParityCheck, config: SimConfig) -> Result<Self> {
        config.validate()?;
        if code.n() == 0 {
            return Err(Error::param("code has length 0"));
        }
        let generator = derive_generator(&code);
        if generator.k() == 0 {
            return Err(Error::param("code has dimension 0"));
        }
        let rate = generator.k() as f64 / code.n() as f64;
        let generator = match config.codeword_mode {
            CodewordMode::AllZero => None,
            CodewordMode::Random if generator.rank() < code.m() => {
                log::warn!(
                    "parity-check matrix has rank {} < {} checks; falling back to all-zero codewords",
                    generator.rank(),
                    code.m()
                );
                None
            }
            CodewordMode::Random => Some(generator),
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::param(format!("cannot start worker pool: {e}")))?;
        Ok(Simulation {
            code,
            config,
            generator,
            rate,
            pool,
        })
    }

    /// Loads the code from an alist file.
    pub fn from_alist_file(path: impl AsRef<Path>, config: SimConfig) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Simulation::new(load_alist(&text)?, config)
    }

    pub fn code(&self) -> &SparseParityCheck {
        &self.code
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    /// Effective code rate `(n - rank H) / n` used for the Eb/N0 conversion.
    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// Codeword mode actually in use after any rank-deficiency fallback.
    pub fn codeword_mode(&self) -> CodewordMode {
        if self.generator.is_some() {
            CodewordMode::Random
        } else {
            CodewordMode::AllZero
        }
    }

    fn run_frame(&self, channel: &ChannelParams, key: u64, frame: u64, decoder: DecoderKind) -> Result<FrameResult> {
        let mut rng = ChaCha8Rng::seed_from_u64(key);
        rng.set_stream(frame);
        let sent = match &self.generator {
            Some(g) => {
                let msg: Vec<u8> = (0..g.k()).map(|_| rng.random::<bool>() as u8).collect();
                g.encode(&msg)?
            }
            None => Codeword::zeros(self.code.n()),
        };
        let received = awgn_transmit(&modulate_bpsk(&sent), channel, &mut rng);
        let p = posteriors(&received, channel);
        let out = decode_with(decoder, &p, &self.code, self.config.spa_max_iters, &self.config.mlpd)?;
        let bit_errors = out.bits.hamming_distance(&sent) as u64;
        Ok(FrameResult {
            bit_errors,
            frame_error: bit_errors > 0,
            iterations: out.iterations as u64,
        })
    }

    /// Simulates one grid point until the stop rule fires.
    pub fn run_ber_point(&self, point_index: usize, ebn0_db: f64, decoder: DecoderKind) -> Result<BerRecord> {
        let channel = ChannelParams::new(ebn0_db, self.rate)?;
        let key = point_seed(self.config.master_seed, point_index, decoder);
        let mut frames = 0u64;
        let mut bit_errors = 0u64;
        let mut frame_errors = 0u64;
        let mut iterations = 0u64;

        'batches: while frames < self.config.max_frames {
            let end = (frames + BATCH_FRAMES).min(self.config.max_frames);
            let batch: Vec<FrameResult> = self.pool.install(|| {
                (frames..end)
                    .into_par_iter()
                    .map(|f| self.run_frame(&channel, key, f, decoder))
                    .collect::<Result<_>>()
            })?;
            for r in batch {
                frames += 1;
                bit_errors += r.bit_errors;
                frame_errors += r.frame_error as u64;
                iterations += r.iterations;
                if frame_errors >= self.config.min_frame_errors {
                    break 'batches;
                }
            }
        }

        let bits = frames as f64 * self.code.n() as f64;
        Ok(BerRecord {
            ebn0_db,
            decoder,
            frames,
            bit_errors,
            frame_errors,
            ber: bit_errors as f64 / bits,
            fer: frame_errors as f64 / frames as f64,
            avg_iterations: iterations as f64 / frames as f64,
        })
    }

    /// One record per grid point and decoder, grid-major.
    pub fn run_sweep(&self) -> Result<Vec<BerRecord>> {
        let mut out = Vec::new();
        for (idx, ebn0) in self.config.ebn0.points()?.into_iter().enumerate() {
            for &decoder in &self.config.decoders {
                let rec = self.run_ber_point(idx, ebn0, decoder)?;
                log::info!(
                    "{} dB {}: {} frames, ber {}, fer {}",
                    format_sig6(ebn0),
                    decoder,
                    rec.frames,
                    format_sig6(rec.ber),
                    format_sig6(rec.fer)
                );
                out.push(rec);
            }
        }
        Ok(out)
    }
}
