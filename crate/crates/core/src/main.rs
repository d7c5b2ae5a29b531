use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ldpc_lab::code::{construct_regular, load_alist, save_alist};
use ldpc_lab::complexity;
use ldpc_lab::mlpd::MlpdConfig;
use ldpc_lab::sim::{self, CodewordMode, EbN0Grid, SimConfig, Simulation};
use ldpc_lab::{DecoderKind, Error, SoftVector, SparseParityCheck};

/// LDPC decoding lab: sum-product and gradient-descent MLP decoders.
#[derive(Debug, Parser)]
#[command(name = "ldpc-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DecoderArg {
    Spa,
    Mlpd,
    Uncoded,
}

impl From<DecoderArg> for DecoderKind {
    fn from(d: DecoderArg) -> Self {
        match d {
            DecoderArg::Spa => DecoderKind::Spa,
            DecoderArg::Mlpd => DecoderKind::Mlpd,
            DecoderArg::Uncoded => DecoderKind::Uncoded,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SweepDecoders {
    Spa,
    Mlpd,
    Both,
    Uncoded,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    AllZero,
    Random,
}

#[derive(Debug, clap::Args)]
struct MlpdArgs {
    /// MLPD training rate, in (0, 1).
    #[arg(long, default_value_t = 0.05)]
    mu: f64,
    /// MLPD stops once the squared-error loss drops below this.
    #[arg(long, default_value_t = 1e-3)]
    eps_stop: f64,
    /// Iteration cap (defaults: 50 for SPA, 100 for MLPD).
    #[arg(long)]
    max_iters: Option<usize>,
}

impl MlpdArgs {
    fn mlpd(&self) -> MlpdConfig {
        MlpdConfig {
            mu: self.mu,
            eps_stop: self.eps_stop,
            max_iters: self.max_iters.unwrap_or(MlpdConfig::default().max_iters),
            syndrome_check: true,
        }
    }

    fn spa_max_iters(&self) -> usize {
        self.max_iters.unwrap_or(SimConfig::default().spa_max_iters)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a regular Gallager code and write it as alist.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        col_weight: usize,
        #[arg(long)]
        row_weight: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decode soft inputs: one frame per line, n whitespace-separated
    /// probabilities Pr(bit = 1).
    Decode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, value_enum)]
        decoder: DecoderArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        params: MlpdArgs,
    },
    /// Print per-iteration multiplication counts for both decoders.
    Complexity {
        #[arg(long)]
        code: PathBuf,
    },
    /// Run a Monte Carlo BER/FER sweep and write CSV. BER counts all n coded bits.
    Simulate {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        decoder: SweepDecoders,
        /// Eb/N0 grid START:STEP:STOP in dB (or a single value).
        #[arg(long)]
        ebn0: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        params: MlpdArgs,
        #[arg(long, default_value_t = 100)]
        min_frame_errors: u64,
        #[arg(long, default_value_t = 1_000_000)]
        max_frames: u64,
        #[arg(long, value_enum, default_value = "all-zero")]
        codeword_mode: ModeArg,
        /// Worker threads (0 = one per core). Results do not depend on it.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Output CSV (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render a sweep CSV as an SVG BER plot.
    Plot {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read_code(path: &Path) -> ldpc_lab::Result<SparseParityCheck> {
    load_alist(&fs::read_to_string(path)?)
}

fn emit(output: Option<&Path>, text: &str) -> ldpc_lab::Result<()> {
    match output {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn parse_soft_lines(text: &str, n: usize) -> ldpc_lab::Result<Vec<SoftVector>> {
    let mut frames = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let values = line
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse {
                line: idx + 1,
                message: e.to_string(),
            })?;
        if values.len() != n {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected {n} values, found {}", values.len()),
            });
        }
        frames.push(SoftVector::new(values).map_err(|e| Error::Parse {
            line: idx + 1,
            message: e.to_string(),
        })?);
    }
    Ok(frames)
}

fn run(command: Command) -> ldpc_lab::Result<()> {
    match command {
        Command::Gen {
            n,
            col_weight,
            row_weight,
            seed,
            output,
        } => {
            let h = construct_regular(n, col_weight, row_weight, seed)?;
            emit(output.as_deref(), &save_alist(&h))
        }
        Command::Decode {
            code,
            decoder,
            input,
            params,
        } => {
            let h = read_code(&code)?;
            let mlpd = params.mlpd();
            let frames = parse_soft_lines(&fs::read_to_string(&input)?, h.n())?;
            let mut out = String::new();
            for p in &frames {
                let o = sim::decode_with(decoder.into(), p, &h, params.spa_max_iters(), &mlpd)?;
                let bits: String = o.bits.iter().map(|&b| char::from(b'0' + b)).collect();
                out.push_str(&format!("{bits} converged={} iterations={}\n", o.converged, o.iterations));
            }
            emit(None, &out)
        }
        Command::Complexity { code } => {
            let h = read_code(&code)?;
            let report = complexity::report(&h);
            emit(None, &format!("n {}\nm {}\n{report}\n", h.n(), h.m()))
        }
        Command::Simulate {
            code,
            decoder,
            ebn0,
            seed,
            params,
            min_frame_errors,
            max_frames,
            codeword_mode,
            workers,
            output,
        } => {
            let decoders = match decoder {
                SweepDecoders::Spa => vec![DecoderKind::Spa],
                SweepDecoders::Mlpd => vec![DecoderKind::Mlpd],
                SweepDecoders::Both => vec![DecoderKind::Spa, DecoderKind::Mlpd],
                SweepDecoders::Uncoded => vec![DecoderKind::Uncoded],
            };
            let config = SimConfig {
                decoders,
                ebn0: ebn0.parse::<EbN0Grid>()?,
                spa_max_iters: params.spa_max_iters(),
                mlpd: params.mlpd(),
                min_frame_errors,
                max_frames,
                master_seed: seed,
                codeword_mode: match codeword_mode {
                    ModeArg::AllZero => CodewordMode::AllZero,
                    ModeArg::Random => CodewordMode::Random,
                },
                workers,
            };
            config.validate()?;
            let sim = Simulation::new(read_code(&code)?, config)?;
            let records = sim.run_sweep()?;
            emit(output.as_deref(), &sim::records_to_csv(&records)?)
        }
        Command::Plot { input, output } => {
            let records = sim::parse_csv(&fs::read_to_string(&input)?)?;
            emit(output.as_deref(), &sim::plot_svg(&records))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parameter(_) => ExitCode::from(1),
                Error::Parse { .. } | Error::Io(_) | Error::Csv(_) => ExitCode::from(2),
            }
        }
    }
}
