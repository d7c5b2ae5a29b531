//! BPSK over AWGN and the bitwise channel posterior.
//!
//! Bit 0 maps to +1 and bit 1 to -1, so positive samples are evidence for 0.

use std::ops::Deref;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::soft::{clamp_prob, SoftVector};

/// Noise level of an AWGN channel carrying a rate-`rate` code.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    ebn0_db: f64,
    rate: f64,
    sigma2: f64,
}

impl ChannelParams {
    /// `sigma2 = 1 / (2 · rate · 10^(ebn0_db / 10))` for unit-energy symbols.
    pub fn new(ebn0_db: f64, rate: f64) -> Result<Self> {
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(Error::param(format!("code rate {rate} outside (0, 1]")));
        }
        if !ebn0_db.is_finite() {
            return Err(Error::param("Eb/N0 must be finite"));
        }
        let sigma2 = 1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0));
        if sigma2 <= 0.0 || sigma2.is_nan() {
            return Err(Error::param(format!("Eb/N0 {ebn0_db} dB gives zero noise variance")));
        }
        Ok(ChannelParams { ebn0_db, rate, sigma2 })
    }

    /// Channel with a given per-sample noise variance, treated as uncoded.
    pub fn from_noise_variance(sigma2: f64) -> Result<Self> {
        if !(sigma2 > 0.0 && sigma2.is_finite()) {
            return Err(Error::param(format!("noise variance {sigma2} must be positive")));
        }
        Ok(ChannelParams {
            ebn0_db: 10.0 * (1.0 / (2.0 * sigma2)).log10(),
            rate: 1.0,
            sigma2,
        })
    }

    pub fn ebn0_db(&self) -> f64 {
        self.ebn0_db
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }
}

/// Channel output samples `r_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReceivedVector(Vec<f64>);

impl ReceivedVector {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::param("received samples must be finite"));
        }
        Ok(ReceivedVector(samples))
    }
}

impl Deref for ReceivedVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

pub fn modulate_bpsk(bits: &[u8]) -> Vec<f64> {
    bits.iter().map(|&b| if b == 0 { 1.0 } else { -1.0 }).collect()
}

/// Adds i.i.d. `N(0, sigma2)` noise drawn from `rng`.
pub fn awgn_transmit<R: Rng + ?Sized>(symbols: &[f64], params: &ChannelParams, rng: &mut R) -> ReceivedVector {
    let noise = Normal::new(0.0, params.sigma2.sqrt()).expect("sigma2 is positive and finite");
    ReceivedVector(symbols.iter().map(|&s| s + noise.sample(rng)).collect())
}

/// `P_i = Pr(c_i = 1 | r_i) = 1 / (1 + exp(2 r_i / sigma2))`, clamped to
/// `[PROB_EPSILON, 1 - PROB_EPSILON]`.
pub fn posteriors(r: &[f64], params: &ChannelParams) -> SoftVector {
    let scale = 2.0 / params.sigma2;
    SoftVector::from_vec_unchecked(r.iter().map(|&x| clamp_prob(posterior_one(x * scale))).collect())
}

fn posterior_one(llr0: f64) -> f64 {
    // 1 / (1 + e^x) without overflowing for large |x|
    if llr0 > 0.0 {
        let e = (-llr0).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + llr0.exp())
    }
}
