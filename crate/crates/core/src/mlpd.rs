//! Gradient-descent decoding with a Tanner-graph-shaped two-layer network.
//!
//! Input neurons hold soft bit values `c_i ∈ [0, 1]`, one per variable node.
//! Output neuron `j` computes the soft XOR of the inputs in check `j`:
//!
//! ```text
//! x ⊕ y = x(1 - y) + y(1 - x)
//! o_j   = (((c_a ⊕ c_b) ⊕ c_c) ⊕ ...)
//! ```
//!
//! A codeword drives every output to zero, so decoding minimizes the loss
//! `E = ½ Σ_j o_j²` over the inputs themselves. The network has no weights
//! to train; the inputs are the only parameters. The partial derivative of a
//! chained soft XOR with respect to one of its inputs is the product of
//! `(1 - 2c_l)` over the other inputs, independent of chain order, which
//! gives the update
//!
//! ```text
//! Δc_i = -μ Σ_{j ∈ Z_i} o_j Π_{l ∈ X_j \ i} (1 - 2c_l)
//! ```
//!
//! followed by clamping to `[0, 1]`. The final estimate maps each input to
//! the nearer of 0 and 1.

use crate::code::{Codeword, SparseParityCheck};
use crate::decoder::{DecodeOutcome, DecoderKind};
use crate::error::{Error, Result};
use crate::soft::SoftVector;

/// Decoder settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlpdConfig {
    /// Training rate of the inputs, in `(0, 1)`.
    pub mu: f64,
    /// Stop once `E` falls below this.
    pub eps_stop: f64,
    /// Maximum number of input updates.
    pub max_iters: usize,
    /// Also stop as soon as the hard decision satisfies every check.
    pub syndrome_check: bool,
}

impl Default for MlpdConfig {
    fn default() -> Self {
        MlpdConfig {
            mu: 0.05,
            eps_stop: 1e-3,
            max_iters: 100,
            syndrome_check: true,
        }
    }
}

impl MlpdConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.mu > 0.0 && self.mu < 1.0) {
            return Err(Error::param(format!("training rate {} outside (0, 1)", self.mu)));
        }
        if !(self.eps_stop > 0.0 && self.eps_stop.is_finite()) {
            return Err(Error::param(format!("eps_stop {} must be positive", self.eps_stop)));
        }
        Ok(())
    }
}

/// Network state after a forward pass.
#[derive(Debug, Clone, PartialEq)]
pub struct MlpdState {
    /// Current inputs.
    pub c: SoftVector,
    /// Output-layer values, one per check.
    pub o: Vec<f64>,
    /// `½ Σ o_j²`.
    pub energy: f64,
    /// Updates applied so far.
    pub iter: usize,
}

impl MlpdState {
    /// Runs the forward pass on `c`.
    pub fn new(c: SoftVector, h: &SparseParityCheck, iter: usize) -> Self {
        let (o, energy) = forward(&c, h);
        MlpdState { c, o, energy, iter }
    }
}

/// Two-input soft XOR.
#[inline]
pub fn soft_xor(x: f64, y: f64) -> f64 {
    x * (1.0 - y) + y * (1.0 - x)
}

/// Left fold of [`soft_xor`] over `values`.
pub fn soft_xor_chain(values: &[f64]) -> Result<f64> {
    let (first, rest) = values
        .split_first()
        .ok_or_else(|| Error::param("soft XOR of an empty list"))?;
    Ok(rest.iter().fold(*first, |acc, &x| soft_xor(acc, x)))
}

fn check_output(c: &[f64], row: &[usize]) -> f64 {
    row[1..].iter().fold(c[row[0]], |acc, &i| soft_xor(acc, c[i]))
}

/// Output layer `o` and loss `E` for inputs `c`.
pub fn forward(c: &[f64], h: &SparseParityCheck) -> (Vec<f64>, f64) {
    let o: Vec<f64> = h.rows().iter().map(|row| check_output(c, row)).collect();
    let energy = 0.5 * o.iter().map(|x| x * x).sum::<f64>();
    (o, energy)
}

/// `∂o_j / ∂c_i = Π_{l ∈ X_j \ i} (1 - 2c_l)`.
pub fn check_gradient(c: &[f64], h: &SparseParityCheck, j: usize, i: usize) -> Result<f64> {
    if j >= h.m() {
        return Err(Error::param(format!("check {j} out of range")));
    }
    let row = h.row(j);
    if row.binary_search(&i).is_err() {
        return Err(Error::param(format!("variable {i} is not in check {j}")));
    }
    Ok(row.iter().filter(|&&l| l != i).map(|&l| 1.0 - 2.0 * c[l]).product())
}

/// `∂E/∂c_i = Σ_{j ∈ Z_i} o_j · ∂o_j/∂c_i` for every input, given the
/// outputs `o` of a forward pass on `c`.
pub fn energy_gradient(c: &[f64], o: &[f64], h: &SparseParityCheck) -> Vec<f64> {
    let mut grad = vec![0.0; h.n()];
    let mut prefix = Vec::new();
    for (row, &oj) in h.rows().iter().zip(o) {
        if oj == 0.0 {
            continue;
        }
        // prefix[k] = Π_{l<k} (1 - 2c), then sweep a suffix product back
        prefix.clear();
        let mut acc = 1.0;
        for &l in row {
            prefix.push(acc);
            acc *= 1.0 - 2.0 * c[l];
        }
        let mut suffix = 1.0;
        for (k, &l) in row.iter().enumerate().rev() {
            grad[l] += oj * prefix[k] * suffix;
            suffix *= 1.0 - 2.0 * c[l];
        }
    }
    grad
}

/// One gradient step of size `mu` on the inputs, clamped to `[0, 1]`.
pub fn update_inputs(state: &MlpdState, h: &SparseParityCheck, mu: f64) -> SoftVector {
    let grad = energy_gradient(&state.c, &state.o, h);
    SoftVector::from_vec_unchecked(
        state
            .c
            .iter()
            .zip(&grad)
            .map(|(&ci, &g)| (ci - mu * g).clamp(0.0, 1.0))
            .collect(),
    )
}

/// Nearest of 0 and 1; exactly 0.5 maps to 0.
pub fn hard_map(c: &[f64]) -> Codeword {
    Codeword::from_bits_unchecked(c.iter().map(|&x| (x > 0.5) as u8).collect())
}

/// Decodes channel posteriors `p` by gradient descent on the inputs.
///
/// Each iteration runs a forward pass and stops if `E < eps_stop`, if the
/// hard decision is a codeword (with `syndrome_check`), or once `max_iters`
/// updates have been applied; otherwise it updates the inputs.
pub fn mlpd_decode(p: &SoftVector, h: &SparseParityCheck, cfg: &MlpdConfig) -> Result<(DecodeOutcome, MlpdState)> {
    cfg.validate()?;
    if p.len() != h.n() {
        return Err(Error::param(format!(
            "soft input has length {}, code length is {}",
            p.len(),
            h.n()
        )));
    }
    let mut state = MlpdState::new(p.clone(), h, 0);
    loop {
        let stop = state.energy < cfg.eps_stop
            || (cfg.syndrome_check && h.syndrome_weight(&hard_map(&state.c)) == 0)
            || state.iter >= cfg.max_iters;
        if stop {
            break;
        }
        let c = update_inputs(&state, h, cfg.mu);
        state = MlpdState::new(c, h, state.iter + 1);
    }
    let bits = hard_map(&state.c);
    let syndrome_weight = h.syndrome_weight(&bits);
    let outcome = DecodeOutcome {
        bits,
        converged: syndrome_weight == 0,
        iterations: state.iter,
        syndrome_weight,
        decoder: DecoderKind::Mlpd,
    };
    Ok((outcome, state))
}
