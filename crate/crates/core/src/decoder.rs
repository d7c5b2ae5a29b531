use std::fmt;
use std::str::FromStr;

use crate::code::Codeword;
use crate::error::Error;

/// Which algorithm produced a decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DecoderKind {
    /// Sum-product message passing.
    Spa,
    /// Gradient-descent MLP decoder.
    Mlpd,
    /// Symbol-wise hard decision on the channel posteriors; no decoding.
    Uncoded,
}

impl DecoderKind {
    pub fn tag(self) -> &'static str {
        match self {
            DecoderKind::Spa => "spa",
            DecoderKind::Mlpd => "mlpd",
            DecoderKind::Uncoded => "uncoded",
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "spa" => Ok(DecoderKind::Spa),
            "mlpd" => Ok(DecoderKind::Mlpd),
            "uncoded" => Ok(DecoderKind::Uncoded),
            other => Err(Error::param(format!("unknown decoder {other:?}"))),
        }
    }
}

/// Result of decoding one frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    /// Hard-decision estimate.
    pub bits: Codeword,
    /// The estimate satisfied every check before the iteration cap.
    pub converged: bool,
    /// Iterations (SPA) or input updates (MLPD) performed.
    pub iterations: usize,
    /// Unsatisfied checks of `bits`; zero whenever `converged`.
    pub syndrome_weight: usize,
    pub decoder: DecoderKind,
}
