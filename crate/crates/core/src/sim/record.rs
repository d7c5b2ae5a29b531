//! CSV persistence of BER sweep results.

use crate::decoder::DecoderKind;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 8] = [
    "ebn0_db",
    "decoder",
    "frames",
    "bit_errors",
    "frame_errors",
    "ber",
    "fer",
    "avg_iterations",
];

/// One (Eb/N0, decoder) cell of a sweep. BER is counted over all `n` coded
/// bits of every frame.
#[derive(Debug, Clone, PartialEq)]
pub struct BerRecord {
    pub ebn0_db: f64,
    pub decoder: DecoderKind,
    pub frames: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub ber: f64,
    pub fer: f64,
    pub avg_iterations: f64,
}

impl BerRecord {
    /// Binomial standard error of `ber` treating the `bits` bits as independent.
    pub fn ber_std_error(&self, bits_per_frame: usize) -> f64 {
        let total = (self.frames * bits_per_frame as u64) as f64;
        (self.ber * (1.0 - self.ber) / total).sqrt()
    }
}

/// Formats like C's `%.6g`.
pub fn format_sig6(x: f64) -> String {
    const PRECISION: i32 = 6;
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if (-4..PRECISION).contains(&exp) {
        let decimals = (PRECISION - 1 - exp) as usize;
        strip_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mantissa.to_string()), exp.abs())
    }
}

fn strip_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Serializes records with the fixed header; rows keep the given order.
pub fn records_to_csv(records: &[BerRecord]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            format_sig6(r.ebn0_db),
            r.decoder.tag().to_string(),
            r.frames.to_string(),
            r.bit_errors.to_string(),
            r.frame_errors.to_string(),
            format_sig6(r.ber),
            format_sig6(r.fer),
            format_sig6(r.avg_iterations),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

pub fn parse_csv(text: &str) -> Result<Vec<BerRecord>> {
    let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::parse(1, format!("unexpected header, expected {}", CSV_HEADER.join(","))));
    }
    let mut out = Vec::new();
    for (idx, row) in reader.records().enumerate() {
        let row = row?;
        let line = row.position().map_or(idx + 2, |p| p.line() as usize);
        let field = |k: usize| row.get(k).ok_or_else(|| Error::parse(line, format!("missing column {}", CSV_HEADER[k])));
        let float = |k: usize| -> Result<f64> {
            field(k)?
                .parse()
                .map_err(|_| Error::parse(line, format!("column {} is not a number", CSV_HEADER[k])))
        };
        let int = |k: usize| -> Result<u64> {
            field(k)?
                .parse()
                .map_err(|_| Error::parse(line, format!("column {} is not a count", CSV_HEADER[k])))
        };
        out.push(BerRecord {
            ebn0_db: float(0)?,
            decoder: field(1)?.parse().map_err(|e: Error| Error::parse(line, e.to_string()))?,
            frames: int(2)?,
            bit_errors: int(3)?,
            frame_errors: int(4)?,
            ber: float(5)?,
            fer: float(6)?,
            avg_iterations: float(7)?,
        });
    }
    Ok(out)
}
