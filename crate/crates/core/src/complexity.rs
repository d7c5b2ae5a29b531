//! Analytic multiplication counts per decoding iteration.
//!
//! With column weights `σ_i`, row weights `ρ_j` and `k = n - m`:
//!
//! | term          | count                          |
//! |---------------|--------------------------------|
//! | SPA `q` update | `2 Σ_i σ_i²`                  |
//! | SPA `r` update | `Σ_j ρ_j²`                    |
//! | SPA `Q` / decision | `2 Σ_i (σ_i + 1)`         |
//! | MLPD soft XOR | `Σ_j 2(ρ_j - 1)`               |
//! | MLPD `Δc`     | `Σ_j ρ_j² + n`                 |
//!
//! and the totals differ by exactly `2 Σ_i σ_i² + 3n - 2k`.

use std::fmt;

use crate::code::SparseParityCheck;

/// Multiplications per iteration for both decoders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplexityReport {
    pub spa_q: u64,
    pub spa_r: u64,
    pub spa_decision: u64,
    pub spa_total: u64,
    pub mlpd_xor: u64,
    pub mlpd_delta: u64,
    pub mlpd_total: u64,
    /// `2 Σσ_i² + 3n - 2k`.
    pub gap: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaCount {
    pub q: u64,
    pub r: u64,
    pub decision: u64,
    pub total: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MlpdCount {
    pub xor: u64,
    pub delta: u64,
    pub total: u64,
}

fn sum_sq(weights: impl Iterator<Item = usize>) -> u64 {
    weights.map(|w| (w * w) as u64).sum()
}

pub fn count_spa(h: &SparseParityCheck) -> SpaCount {
    let q = 2 * sum_sq(h.column_weights());
    let r = sum_sq(h.row_weights());
    let decision = 2 * h.column_weights().map(|s| s as u64 + 1).sum::<u64>();
    SpaCount {
        q,
        r,
        decision,
        total: q + r + decision,
    }
}

pub fn count_mlpd(h: &SparseParityCheck) -> MlpdCount {
    // a weight-1 check needs no multiplication for its soft XOR
    let xor = h.row_weights().map(|r| 2 * (r as u64).saturating_sub(1)).sum();
    let delta = sum_sq(h.row_weights()) + h.n() as u64;
    MlpdCount {
        xor,
        delta,
        total: xor + delta,
    }
}

/// `2 Σσ_i² + 3n - 2k` with `k = n - m`.
pub fn gap_term(h: &SparseParityCheck) -> i64 {
    let n = h.n() as i64;
    let k = n - h.m() as i64;
    2 * sum_sq(h.column_weights()) as i64 + 3 * n - 2 * k
}

/// Checks `count_spa - count_mlpd = 2 Σσ_i² + 3n - 2k`.
pub fn verify_gap(h: &SparseParityCheck) -> bool {
    count_spa(h).total as i64 - count_mlpd(h).total as i64 == gap_term(h)
}

pub fn report(h: &SparseParityCheck) -> ComplexityReport {
    let spa = count_spa(h);
    let mlpd = count_mlpd(h);
    ComplexityReport {
        spa_q: spa.q,
        spa_r: spa.r,
        spa_decision: spa.decision,
        spa_total: spa.total,
        mlpd_xor: mlpd.xor,
        mlpd_delta: mlpd.delta,
        mlpd_total: mlpd.total,
        gap: gap_term(h),
    }
}

impl fmt::Display for ComplexityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "spa_q        {}", self.spa_q)?;
        writeln!(f, "spa_r        {}", self.spa_r)?;
        writeln!(f, "spa_decision {}", self.spa_decision)?;
        writeln!(f, "spa_total    {}", self.spa_total)?;
        writeln!(f, "mlpd_xor     {}", self.mlpd_xor)?;
        writeln!(f, "mlpd_delta   {}", self.mlpd_delta)?;
        writeln!(f, "mlpd_total   {}", self.mlpd_total)?;
        write!(f, "gap          {}", self.gap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::construct_regular;

    fn hamming() -> SparseParityCheck {
        SparseParityCheck::from_dense(&[
            vec![1, 0, 0, 1, 1, 0, 1],
            vec![0, 1, 0, 1, 0, 1, 1],
            vec![0, 0, 1, 0, 1, 1, 1],
        ])
        .unwrap()
    }

    #[test]
    fn reference_codes() {
        let h = construct_regular(20, 1, 2, 0).unwrap();
        assert_eq!(count_spa(&h).total, 160);
        assert_eq!(count_mlpd(&h).total, 80);
        assert_eq!(gap_term(&h), 80);
        assert!(verify_gap(&h));

        let h = construct_regular(60, 1, 3, 0).unwrap();
        assert_eq!(count_spa(&h).total, 540);
        assert_eq!(count_mlpd(&h).total, 320);
        assert_eq!(gap_term(&h), 220);
        assert!(verify_gap(&h));
    }

    #[test]
    fn hamming_counts() {
        let h = hamming();
        assert_eq!(count_spa(&h).total, 134);
        assert_eq!(count_mlpd(&h).total, 73);
        assert!(verify_gap(&h));
    }

    #[test]
    fn regular_closed_forms() {
        for (n, s, r) in [(96, 3, 6), (120, 2, 4), (60, 4, 5)] {
            let h = construct_regular(n, s, r, 1).unwrap();
            let k = (n - h.m()) as u64;
            let (n, s, r) = (n as u64, s as u64, r as u64);
            let spa = count_spa(&h);
            assert_eq!(spa.q, 2 * n * s * s);
            assert_eq!(spa.r, (n - k) * r * r);
            assert_eq!(spa.decision, 2 * n * (s + 1));
            let mlpd = count_mlpd(&h);
            assert_eq!(mlpd.xor, 2 * (n - k) * (r - 1));
            assert_eq!(mlpd.delta, (n - k) * r * r + n);
            assert_eq!(mlpd.total, (n - k) * (r * r + 2 * r - 2) + n);
            assert!(verify_gap(&h));
        }
    }

    #[test]
    fn report_is_consistent() {
        let r = report(&hamming());
        assert_eq!(r.spa_total as i64, r.mlpd_total as i64 + r.gap);
        assert_eq!(r.spa_q + r.spa_r + r.spa_decision, r.spa_total);
        assert!(r.to_string().contains("mlpd_total   73"));
    }
}
