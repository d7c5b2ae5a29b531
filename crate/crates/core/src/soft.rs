use std::ops::Deref;

use crate::error::{Error, Result};

/// Lower/upper clamp applied to every channel posterior and SPA message.
pub const PROB_EPSILON: f64 = 1e-12;

/// Length-`n` vector of probabilities in `[0, 1]`.
///
/// Carries channel posteriors `P_i = Pr(c_i = 1 | r_i)` and the trainable
/// inputs of the MLP decoder.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftVector(Vec<f64>);

impl SoftVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(pos) = values.iter().position(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::param(format!(
                "soft value {pos} is {}, expected a probability in [0, 1]",
                values[pos]
            )));
        }
        Ok(SoftVector(values))
    }

    /// All entries 0.5.
    pub fn erasure(n: usize) -> Self {
        SoftVector(vec![0.5; n])
    }

    /// Soft vector that is certain of `bits` up to the posterior clamp.
    pub fn from_bits(bits: &[u8]) -> Self {
        SoftVector(
            bits.iter()
                .map(|&b| if b == 0 { PROB_EPSILON } else { 1.0 - PROB_EPSILON })
                .collect(),
        )
    }

    pub(crate) fn from_vec_unchecked(values: Vec<f64>) -> Self {
        SoftVector(values)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for SoftVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

pub(crate) fn clamp_prob(p: f64) -> f64 {
    p.clamp(PROB_EPSILON, 1.0 - PROB_EPSILON)
}
