//! Systematic generator derivation by Gauss-Jordan elimination over GF(2).

use super::{Codeword, SparseParityCheck};
use crate::error::{Error, Result};

/// Systematic generator of the code defined by some `H`.
///
/// Under the column permutation `info_positions ++ parity_positions` the
/// generator has the form `[I_k | P]`. Rank deficiency of `H` shows up as
/// `k() > n - m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    n: usize,
    info_positions: Vec<usize>,
    parity_positions: Vec<usize>,
    /// `parity[a][p]`: contribution of message bit `a` to parity position `p`.
    parity: Vec<Vec<u8>>,
}

impl Generator {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Effective dimension `n - rank(H)`.
    pub fn k(&self) -> usize {
        self.info_positions.len()
    }

    /// GF(2) rank of `H`.
    pub fn rank(&self) -> usize {
        self.parity_positions.len()
    }

    /// Original column index of every systematic position, information
    /// positions first.
    pub fn permutation(&self) -> Vec<usize> {
        self.info_positions.iter().chain(&self.parity_positions).copied().collect()
    }

    pub fn info_positions(&self) -> &[usize] {
        &self.info_positions
    }

    /// Row `a` of the generator, in original column order.
    pub fn row(&self, a: usize) -> Codeword {
        let mut bits = vec![0u8; self.n];
        bits[self.info_positions[a]] = 1;
        for (p, &col) in self.parity_positions.iter().enumerate() {
            bits[col] = self.parity[a][p];
        }
        Codeword::from_bits_unchecked(bits)
    }

    /// Maps a `k`-bit message to its codeword.
    pub fn encode(&self, message: &[u8]) -> Result<Codeword> {
        if message.len() != self.k() {
            return Err(Error::param(format!(
                "message has length {}, code dimension is {}",
                message.len(),
                self.k()
            )));
        }
        let mut bits = vec![0u8; self.n];
        for (a, &col) in self.info_positions.iter().enumerate() {
            bits[col] = message[a] & 1;
        }
        for (p, &col) in self.parity_positions.iter().enumerate() {
            bits[col] = message
                .iter()
                .zip(&self.parity)
                .fold(0u8, |acc, (&b, row)| acc ^ (b & row[p]));
        }
        Ok(Codeword::from_bits_unchecked(bits))
    }
}

/// Reduces `H` to row echelon form and reads off a systematic generator.
pub fn derive_generator(h: &SparseParityCheck) -> Generator {
    let n = h.n();
    let words = n.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = h
        .rows()
        .iter()
        .map(|r| {
            let mut w = vec![0u64; words];
            for &i in r {
                w[i / 64] |= 1 << (i % 64);
            }
            w
        })
        .collect();

    let get = |row: &[u64], i: usize| (row[i / 64] >> (i % 64)) & 1 == 1;
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(found) = (rank..rows.len()).find(|&r| get(&rows[r], col)) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && get(row, col) {
                row.iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }

    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let info_positions: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let parity = info_positions
        .iter()
        .map(|&f| (0..rank).map(|p| get(&rows[p], f) as u8).collect())
        .collect();
    Generator {
        n,
        info_positions,
        parity_positions: pivots,
        parity,
    }
}
