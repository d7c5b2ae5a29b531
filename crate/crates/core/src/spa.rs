//! Probability-domain sum-product decoding with a flooding schedule.
//!
//! One iteration updates every check-to-variable message `r_ji`, then every
//! variable-to-check message `q_ij`, then forms the bitwise posteriors `Q_i`
//! and tests the syndrome of the hard decision. Only the `b = 1` halves of
//! the messages are stored; the `b = 0` halves are their complements.

use crate::code::{Codeword, SparseParityCheck};
use crate::decoder::{DecodeOutcome, DecoderKind};
use crate::error::{Error, Result};
use crate::soft::{clamp_prob, SoftVector};

/// Messages on the edges of the Tanner graph, stored in row-major edge order.
#[derive(Debug, Clone)]
pub struct SpaMessages {
    /// `q_ij(1)`, variable to check.
    q1: Vec<f64>,
    /// `r_ji(1)`, check to variable.
    r1: Vec<f64>,
    /// First edge of each check.
    row_start: Vec<usize>,
    /// Edges of each variable, in the order of `H.col(i)`.
    var_edges: Vec<Vec<usize>>,
    degeneracies: usize,
}

impl SpaMessages {
    pub fn q1(&self) -> &[f64] {
        &self.q1
    }

    pub fn r1(&self) -> &[f64] {
        &self.r1
    }

    /// Updates that hit a zero normalizer and fell back to (0.5, 0.5).
    pub fn degeneracies(&self) -> usize {
        self.degeneracies
    }

    /// Edge index of `(check j, variable i)`, if connected.
    pub fn edge(&self, h: &SparseParityCheck, j: usize, i: usize) -> Option<usize> {
        h.row(j).binary_search(&i).ok().map(|pos| self.row_start[j] + pos)
    }
}

fn check_len(p: &[f64], h: &SparseParityCheck) -> Result<()> {
    if p.len() != h.n() {
        return Err(Error::param(format!(
            "soft input has length {}, code length is {}",
            p.len(),
            h.n()
        )));
    }
    Ok(())
}

/// Step a: every `q_ij(1)` starts at the channel posterior `P_i`.
pub fn spa_init(p: &SoftVector, h: &SparseParityCheck) -> Result<SpaMessages> {
    check_len(p, h)?;
    let mut row_start = Vec::with_capacity(h.m());
    let mut q1 = Vec::with_capacity(h.edge_count());
    let mut var_edges = vec![Vec::new(); h.n()];
    for row in h.rows() {
        row_start.push(q1.len());
        for &i in row {
            var_edges[i].push(q1.len());
            q1.push(clamp_prob(p[i]));
        }
    }
    let edges = q1.len();
    Ok(SpaMessages {
        q1,
        r1: vec![0.5; edges],
        row_start,
        var_edges,
        degeneracies: 0,
    })
}

/// Step b: `r_ji(0) = 1/2 + 1/2 · Π_{i' ∈ X_j \ i} (1 - 2 q_i'j(1))`.
pub fn check_update(msgs: &mut SpaMessages, h: &SparseParityCheck) {
    let mut factors = Vec::new();
    let mut suffix = Vec::new();
    for (j, row) in h.rows().iter().enumerate() {
        let start = msgs.row_start[j];
        let deg = row.len();
        factors.clear();
        factors.extend(msgs.q1[start..start + deg].iter().map(|&q| 1.0 - 2.0 * q));
        exclusive_products(&factors, &mut suffix);
        for (e, &others) in suffix.iter().enumerate() {
            let r0 = 0.5 + 0.5 * others;
            msgs.r1[start + e] = clamp_prob(1.0 - r0);
        }
    }
}

/// Step c: `q_ij(b) ∝ Pr(c_i = b) · Π_{j' ∈ Z_i \ j} r_j'i(b)`, normalized.
pub fn variable_update(msgs: &mut SpaMessages, p: &SoftVector, h: &SparseParityCheck) {
    let mut zeros = Vec::new();
    let mut ones = Vec::new();
    let mut excl0 = Vec::new();
    let mut excl1 = Vec::new();
    for i in 0..h.n() {
        let edges = &msgs.var_edges[i];
        zeros.clear();
        ones.clear();
        zeros.extend(edges.iter().map(|&e| 1.0 - msgs.r1[e]));
        ones.extend(edges.iter().map(|&e| msgs.r1[e]));
        exclusive_products(&zeros, &mut excl0);
        exclusive_products(&ones, &mut excl1);
        for (k, &e) in edges.iter().enumerate() {
            let q0 = (1.0 - p[i]) * excl0[k];
            let q1 = p[i] * excl1[k];
            let norm = q0 + q1;
            msgs.q1[e] = if norm > 0.0 && norm.is_finite() {
                clamp_prob(q1 / norm)
            } else {
                msgs.degeneracies += 1;
                0.5
            };
        }
    }
}

/// Steps d and e: posteriors `Q_i(1)` and hard decisions. Ties decide 0.
pub fn app_decide(msgs: &SpaMessages, p: &SoftVector, h: &SparseParityCheck) -> (Codeword, Vec<f64>) {
    let mut q = Vec::with_capacity(h.n());
    let mut bits = Vec::with_capacity(h.n());
    for i in 0..h.n() {
        let edges = &msgs.var_edges[i];
        let q0: f64 = (1.0 - p[i]) * edges.iter().map(|&e| 1.0 - msgs.r1[e]).product::<f64>();
        let q1: f64 = p[i] * edges.iter().map(|&e| msgs.r1[e]).product::<f64>();
        let (post0, post1) = normalize_pair(q0, q1);
        bits.push(decide(post0, post1));
        q.push(post1);
    }
    (Codeword::from_bits_unchecked(bits), q)
}

fn normalize_pair(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    if s > 0.0 && s.is_finite() {
        (a / s, b / s)
    } else {
        (0.5, 0.5)
    }
}

/// `1` iff `q1 > q0`. Invariant under scaling both by a positive constant.
pub fn decide(q0: f64, q1: f64) -> u8 {
    (q1 > q0) as u8
}

/// Writes `Π_{l≠k} factors[l]` for each `k` into `out` without division.
fn exclusive_products(factors: &[f64], out: &mut Vec<f64>) {
    let n = factors.len();
    out.clear();
    out.resize(n, 1.0);
    let mut acc = 1.0;
    for k in 0..n {
        out[k] = acc;
        acc *= factors[k];
    }
    acc = 1.0;
    for k in (0..n).rev() {
        out[k] *= acc;
        acc *= factors[k];
    }
}

/// Sum-product decoding result with the final posteriors `Q_i(1)`.
#[derive(Debug, Clone)]
pub struct SpaDecode {
    pub outcome: DecodeOutcome,
    pub posteriors: Vec<f64>,
    pub degeneracies: usize,
}

/// Runs steps a-e until the syndrome vanishes or `max_iters` iterations.
pub fn spa_decode(p: &SoftVector, h: &SparseParityCheck, max_iters: usize) -> Result<SpaDecode> {
    if max_iters == 0 {
        return Err(Error::param("max_iters must be at least 1"));
    }
    let mut msgs = spa_init(p, h)?;
    let mut iterations = 0;
    loop {
        iterations += 1;
        check_update(&mut msgs, h);
        variable_update(&mut msgs, p, h);
        let (bits, posteriors) = app_decide(&msgs, p, h);
        let syndrome_weight = h.syndrome_weight(&bits);
        if syndrome_weight == 0 || iterations == max_iters {
            return Ok(SpaDecode {
                outcome: DecodeOutcome {
                    bits,
                    converged: syndrome_weight == 0,
                    iterations,
                    syndrome_weight,
                    decoder: DecoderKind::Spa,
                },
                posteriors,
                degeneracies: msgs.degeneracies,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::construct_regular;
    use crate::soft::PROB_EPSILON;
    use proptest::prelude::*;

    fn soft(v: &[f64]) -> SoftVector {
        SoftVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn init_copies_posteriors() {
        let h = construct_regular(12, 2, 3, 0).unwrap();
        let msgs = spa_init(&SoftVector::erasure(12), &h).unwrap();
        assert_eq!(msgs.q1().len(), h.edge_count());
        assert!(msgs.q1().iter().all(|&q| q == 0.5));

        let msgs = spa_init(&SoftVector::from_bits(&[0; 12]), &h).unwrap();
        assert!(msgs.q1().iter().all(|&q| q == PROB_EPSILON));
        assert!(spa_init(&SoftVector::erasure(3), &h).is_err());
    }

    #[test]
    fn check_update_reference_value() {
        // check over three variables; r to variable 2 sees q(1) = 0.2, 0.3
        let h = SparseParityCheck::from_rows(3, vec![vec![0, 1, 2]]).unwrap();
        let mut msgs = spa_init(&soft(&[0.2, 0.3, 0.9]), &h).unwrap();
        check_update(&mut msgs, &h);
        let e = msgs.edge(&h, 0, 2).unwrap();
        assert!((1.0 - msgs.r1()[e] - 0.62).abs() < 1e-12);

        let mut msgs = spa_init(&soft(&[0.5, 0.3, 0.9]), &h).unwrap();
        check_update(&mut msgs, &h);
        let e = msgs.edge(&h, 0, 2).unwrap();
        assert!((msgs.r1()[e] - 0.5).abs() < 1e-15);

        let mut msgs = spa_init(&soft(&[0.0, 0.0, 0.9]), &h).unwrap();
        check_update(&mut msgs, &h);
        let e = msgs.edge(&h, 0, 2).unwrap();
        assert!(1.0 - msgs.r1()[e] > 1.0 - 1e-11);
    }

    #[test]
    fn variable_update_reference_value() {
        // variable 0 in checks 0 and 1; q toward check 0 uses r from check 1 only
        let h = SparseParityCheck::from_rows(3, vec![vec![0, 1], vec![0, 2]]).unwrap();
        let p = soft(&[0.3, 0.5, 0.5]);
        let mut msgs = spa_init(&p, &h).unwrap();
        let e1 = msgs.edge(&h, 1, 0).unwrap();
        msgs.r1[e1] = 0.2;
        variable_update(&mut msgs, &p, &h);
        let e0 = msgs.edge(&h, 0, 0).unwrap();
        assert!((msgs.q1()[e0] - 0.06 / 0.62).abs() < 1e-12);
        assert!((1.0 - msgs.q1()[e0] - 0.56 / 0.62).abs() < 1e-12);
    }

    #[test]
    fn single_check_variables_keep_channel_value() {
        let h = construct_regular(20, 1, 2, 4).unwrap();
        let p = soft(&(0..20).map(|i| 0.05 + 0.04 * i as f64).collect::<Vec<_>>());
        let mut msgs = spa_init(&p, &h).unwrap();
        for _ in 0..3 {
            check_update(&mut msgs, &h);
            variable_update(&mut msgs, &p, &h);
            for i in 0..20 {
                let e = msgs.edge(&h, h.col(i)[0], i).unwrap();
                assert_eq!(msgs.q1()[e], p[i]);
            }
        }
    }

    #[test]
    fn tie_decides_zero() {
        assert_eq!(decide(0.5, 0.5), 0);
        assert_eq!(decide(0.4, 0.6), 1);
        let h = SparseParityCheck::from_rows(2, vec![vec![0, 1]]).unwrap();
        let out = spa_decode(&SoftVector::erasure(2), &h, 5).unwrap();
        assert_eq!(&*out.outcome.bits, &[0, 0]);
    }

    #[test]
    fn noiseless_codeword_converges_in_one_iteration() {
        let h = construct_regular(60, 1, 3, 8).unwrap();
        let g = crate::code::derive_generator(&h);
        let msg: Vec<u8> = (0..g.k()).map(|a| (a * 7 % 3 == 1) as u8).collect();
        let cw = g.encode(&msg).unwrap();
        let out = spa_decode(&SoftVector::from_bits(&cw), &h, 50).unwrap();
        assert!(out.outcome.converged);
        assert_eq!(out.outcome.iterations, 1);
        assert_eq!(out.outcome.bits, cw);
        assert!(out.posteriors.iter().all(|&q| (0.0..=1.0).contains(&q)));
    }

    #[test]
    fn zero_iterations_rejected() {
        let h = construct_regular(20, 1, 2, 0).unwrap();
        assert!(spa_decode(&SoftVector::erasure(20), &h, 0).is_err());
    }

    /// Exhaustive bitwise MAP: Σ over codewords of likelihood-weighted bits.
    fn brute_force_posteriors(h: &SparseParityCheck, p: &[f64]) -> Vec<f64> {
        let n = h.n();
        let mut num = vec![0.0; n];
        let mut den = 0.0;
        for word in 0u32..(1 << n) {
            let bits: Vec<u8> = (0..n).map(|i| ((word >> i) & 1) as u8).collect();
            if !h.is_codeword(&bits) {
                continue;
            }
            let w: f64 = bits
                .iter()
                .zip(p)
                .map(|(&b, &pi)| if b == 1 { pi } else { 1.0 - pi })
                .product();
            den += w;
            for i in 0..n {
                if bits[i] == 1 {
                    num[i] += w;
                }
            }
        }
        num.iter().map(|x| x / den).collect()
    }

    #[test]
    fn exact_on_path_tree() {
        // path-shaped Tanner graph, diameter needs several iterations
        let h = SparseParityCheck::from_rows(
            7,
            vec![vec![0, 1], vec![1, 2, 3], vec![3, 4], vec![4, 5, 6]],
        )
        .unwrap();
        let p = soft(&[0.7, 0.4, 0.2, 0.6, 0.55, 0.1, 0.3]);
        let oracle = brute_force_posteriors(&h, &p);
        let mut msgs = spa_init(&p, &h).unwrap();
        for _ in 0..8 {
            check_update(&mut msgs, &h);
            variable_update(&mut msgs, &p, &h);
        }
        let (_, q) = app_decide(&msgs, &p, &h);
        for (a, b) in q.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    proptest! {
        #[test]
        fn messages_stay_interior_and_normalized(seed in 0u64..1000, raw in proptest::collection::vec(0.0f64..=1.0, 24)) {
            let h = construct_regular(24, 3, 6, seed).unwrap();
            let p = soft(&raw.iter().map(|&x| clamp_prob(x)).collect::<Vec<_>>());
            let mut msgs = spa_init(&p, &h).unwrap();
            for _ in 0..10 {
                check_update(&mut msgs, &h);
                prop_assert!(msgs.r1().iter().all(|&r| (PROB_EPSILON..=1.0 - PROB_EPSILON).contains(&r)));
                variable_update(&mut msgs, &p, &h);
                prop_assert!(msgs.q1().iter().all(|&q| (PROB_EPSILON..=1.0 - PROB_EPSILON).contains(&q)));
                let (_, post) = app_decide(&msgs, &p, &h);
                prop_assert!(post.iter().all(|&q| (0.0..=1.0).contains(&q)));
            }
            prop_assert_eq!(msgs.degeneracies(), 0);
        }

        #[test]
        fn decision_scale_invariant(q0 in 1e-6f64..1.0, q1 in 1e-6f64..1.0, scale in 1e-3f64..1e3) {
            prop_assert_eq!(decide(q0, q1), decide(q0 * scale, q1 * scale));
        }
    }
}
