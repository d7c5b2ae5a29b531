//! LDPC codes as sparse parity-check matrices.
//!
//! A [`SparseParityCheck`] stores `H` twice: once by rows (the variables each
//! check touches) and once by columns (the checks each variable belongs to).
//! Both views are sorted and kept consistent; together they are the Tanner
//! graph of the code.

mod alist;
mod generator;

use std::ops::Deref;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use alist::{load_alist, save_alist};
pub use generator::{derive_generator, Generator};

/// Parity-check matrix in row/column adjacency form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseParityCheck {
    n: usize,
    rows: Vec<Vec<usize>>,
    cols: Vec<Vec<usize>>,
}

impl SparseParityCheck {
    /// Builds `H` from the variable lists of each check.
    ///
    /// Lists are sorted on the way in. Every check must touch at least one
    /// variable, indices must be `< n` and must not repeat within a check.
    pub fn from_rows(n: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        let mut rows = rows;
        let mut cols = vec![Vec::new(); n];
        for (j, row) in rows.iter_mut().enumerate() {
            if row.is_empty() {
                return Err(Error::param(format!("check {j} has no variables")));
            }
            row.sort_unstable();
            if row.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::param(format!("check {j} repeats a variable")));
            }
            if let Some(&last) = row.last() {
                if last >= n {
                    return Err(Error::param(format!(
                        "check {j} references variable {last}, code length is {n}"
                    )));
                }
            }
            for &i in row.iter() {
                cols[i].push(j);
            }
        }
        // rows are visited in increasing j, so every column list is already sorted
        Ok(SparseParityCheck { n, rows, cols })
    }

    /// Builds `H` from a dense 0/1 matrix given row by row.
    pub fn from_dense(dense: &[Vec<u8>]) -> Result<Self> {
        let n = dense.first().map_or(0, Vec::len);
        let mut rows = Vec::with_capacity(dense.len());
        for (j, r) in dense.iter().enumerate() {
            if r.len() != n {
                return Err(Error::param(format!("row {j} has length {}, expected {n}", r.len())));
            }
            rows.push(r.iter().enumerate().filter(|(_, &b)| b != 0).map(|(i, _)| i).collect());
        }
        Self::from_rows(n, rows)
    }

    /// Code length (number of variable nodes).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of checks.
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    /// Design dimension `n - m`. May understate the true dimension when `H`
    /// is rank deficient; see [`derive_generator`].
    pub fn design_k(&self) -> usize {
        self.n.saturating_sub(self.m())
    }

    /// Variables connected to check `j`, ascending.
    pub fn row(&self, j: usize) -> &[usize] {
        &self.rows[j]
    }

    /// Checks connected to variable `i`, ascending.
    pub fn col(&self, i: usize) -> &[usize] {
        &self.cols[i]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn cols(&self) -> &[Vec<usize>] {
        &self.cols
    }

    /// Column weights `σ_i`.
    pub fn column_weights(&self) -> impl Iterator<Item = usize> + '_ {
        self.cols.iter().map(Vec::len)
    }

    /// Row weights `ρ_j`.
    pub fn row_weights(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(Vec::len)
    }

    /// Total number of ones in `H`.
    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Checks the row/column cross-consistency and range invariants.
    pub fn is_consistent(&self) -> bool {
        if self.cols.len() != self.n {
            return false;
        }
        let sorted_unique = |v: &Vec<usize>| v.windows(2).all(|w| w[0] < w[1]);
        if !self.rows.iter().all(sorted_unique) || !self.cols.iter().all(sorted_unique) {
            return false;
        }
        let m = self.m();
        for (j, row) in self.rows.iter().enumerate() {
            for &i in row {
                if i >= self.n || self.cols[i].binary_search(&j).is_err() {
                    return false;
                }
            }
        }
        for (i, col) in self.cols.iter().enumerate() {
            for &j in col {
                if j >= m || self.rows[j].binary_search(&i).is_err() {
                    return false;
                }
            }
        }
        self.column_weights().sum::<usize>() == self.row_weights().sum::<usize>()
    }

    /// Computes `bits · Hᵀ` over GF(2).
    pub fn syndrome(&self, bits: &[u8]) -> Result<Vec<u8>> {
        if bits.len() != self.n {
            return Err(Error::param(format!(
                "word has length {}, code length is {}",
                bits.len(),
                self.n
            )));
        }
        Ok(self.syndrome_unchecked(bits))
    }

    /// True when `bits` satisfies every check. `bits` must have length `n`.
    pub fn is_codeword(&self, bits: &[u8]) -> bool {
        bits.len() == self.n
            && self
                .rows
                .iter()
                .all(|row| row.iter().fold(0u8, |acc, &i| acc ^ (bits[i] & 1)) == 0)
    }

    pub(crate) fn syndrome_unchecked(&self, bits: &[u8]) -> Vec<u8> {
        self.rows
            .iter()
            .map(|row| row.iter().fold(0u8, |acc, &i| acc ^ (bits[i] & 1)))
            .collect()
    }

    /// Number of unsatisfied checks.
    pub(crate) fn syndrome_weight(&self, bits: &[u8]) -> usize {
        self.rows
            .iter()
            .filter(|row| row.iter().fold(0u8, |acc, &i| acc ^ (bits[i] & 1)) != 0)
            .count()
    }
}

/// Builds a regular code with column weight `sigma` and row weight `rho`.
///
/// When `rho` divides `n` this is Gallager's construction: `sigma` stacked
/// blocks of `n / rho` checks, the first block covering consecutive runs of
/// `rho` variables and every later block a seeded column permutation of it.
/// Otherwise edge sockets are matched at random, rejecting matchings that
/// place a variable twice in one check.
pub fn construct_regular(n: usize, sigma: usize, rho: usize, seed: u64) -> Result<SparseParityCheck> {
    if sigma == 0 {
        return Err(Error::param("column weight must be at least 1"));
    }
    if rho < 2 {
        return Err(Error::param("row weight must be at least 2"));
    }
    if n < rho {
        return Err(Error::param(format!("row weight {rho} exceeds code length {n}")));
    }
    if !(n * sigma).is_multiple_of(rho) {
        return Err(Error::param(format!(
            "n * column weight = {} is not divisible by row weight {rho}",
            n * sigma
        )));
    }
    let m = n * sigma / rho;
    if sigma > m {
        return Err(Error::param(format!("column weight {sigma} exceeds check count {m}")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = if n.is_multiple_of(rho) {
        let mut rows = Vec::with_capacity(m);
        let mut perm: Vec<usize> = (0..n).collect();
        for block in 0..sigma {
            if block > 0 {
                perm.shuffle(&mut rng);
            }
            rows.extend(perm.chunks(rho).map(<[usize]>::to_vec));
        }
        rows
    } else {
        socket_matching(n, sigma, rho, &mut rng)?
    };
    SparseParityCheck::from_rows(n, rows)
}

fn socket_matching(n: usize, sigma: usize, rho: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<usize>>> {
    const ATTEMPTS: usize = 10_000;
    let mut sockets: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, sigma)).collect();
    for _ in 0..ATTEMPTS {
        sockets.shuffle(rng);
        let rows: Vec<Vec<usize>> = sockets
            .chunks(rho)
            .map(|c| {
                let mut r = c.to_vec();
                r.sort_unstable();
                r
            })
            .collect();
        if rows.iter().all(|r| r.windows(2).all(|w| w[0] != w[1])) {
            return Ok(rows);
        }
    }
    Err(Error::param(format!(
        "no simple ({n}, {sigma}, {rho}) matching found in {ATTEMPTS} attempts"
    )))
}

/// A hard-decision word over GF(2).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword(Vec<u8>);

impl Codeword {
    /// Wraps `bits`, rejecting anything other than 0 or 1.
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(Error::param(format!("bit {pos} is {}, expected 0 or 1", bits[pos])));
        }
        Ok(Codeword(bits))
    }

    pub fn zeros(n: usize) -> Self {
        Codeword(vec![0; n])
    }

    pub(crate) fn from_bits_unchecked(bits: Vec<u8>) -> Self {
        Codeword(bits)
    }

    pub fn into_bits(self) -> Vec<u8> {
        self.0
    }

    /// Number of positions where `self` and `other` differ.
    pub fn hamming_distance(&self, other: &[u8]) -> usize {
        self.0.iter().zip(other).filter(|(a, b)| a != b).count()
    }
}

impl Deref for Codeword {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}
