//! LDPC decoding laboratory.
//!
//! Two soft-decision decoders over the same sparse parity-check
//! representation:
//!
//! * [`spa`]: probability-domain sum-product message passing.
//! * [`mlpd`]: a two-layer network shaped like the Tanner graph whose output
//!   neurons compute soft XOR; decoding runs gradient descent on the input
//!   vector to drive every check output to zero.
//!
//! [`complexity`] gives per-iteration multiplication counts for both, and
//! [`sim`] runs seeded, parallel, reproducible BER sweeps over BPSK/AWGN.

pub mod channel;
pub mod code;
pub mod complexity;
pub mod decoder;
mod error;
pub mod mlpd;
pub mod sim;
mod soft;
pub mod spa;

pub use code::{Codeword, SparseParityCheck};
pub use decoder::{DecodeOutcome, DecoderKind};
pub use error::{Error, Result};
pub use soft::{SoftVector, PROB_EPSILON};
