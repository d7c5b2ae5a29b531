//! Shared generators and oracles for the integration tests.

#![allow(dead_code)]

use ldpc_lab::SparseParityCheck;
use rand::seq::index::sample;
use rand::Rng;

/// Random irregular code: `n` in `[lo, hi]`, each check draws a random
/// weight in `1..=max_row` and distinct variables.
pub fn random_irregular<R: Rng>(rng: &mut R, lo: usize, hi: usize, max_row: usize) -> SparseParityCheck {
    let n = rng.random_range(lo..=hi);
    let m = rng.random_range(1..n.max(2));
    let rows = (0..m)
        .map(|_| {
            let w = rng.random_range(1..=max_row.min(n));
            sample(rng, n, w).into_vec()
        })
        .collect();
    SparseParityCheck::from_rows(n, rows).unwrap()
}

/// Cycle-free code with every variable in exactly one check: a random
/// partition of `0..n` into groups of size at least 1.
pub fn random_forest<R: Rng>(rng: &mut R, n: usize) -> SparseParityCheck {
    let mut order: Vec<usize> = (0..n).collect();
    rand::seq::SliceRandom::shuffle(&mut order[..], rng);
    let mut rows = Vec::new();
    let mut rest = &order[..];
    while !rest.is_empty() {
        let w = rng.random_range(1..=rest.len().min(5));
        rows.push(rest[..w].to_vec());
        rest = &rest[w..];
    }
    SparseParityCheck::from_rows(n, rows).unwrap()
}

/// Bitwise MAP posteriors `Pr(c_i = 1 | r)` by enumerating every word.
pub fn brute_force_posteriors(h: &SparseParityCheck, p: &[f64]) -> Vec<f64> {
    let n = h.n();
    assert!(n <= 20);
    let mut num = vec![0.0; n];
    let mut den = 0.0;
    let mut bits = vec![0u8; n];
    for word in 0u32..(1 << n) {
        for (i, b) in bits.iter_mut().enumerate() {
            *b = ((word >> i) & 1) as u8;
        }
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

/// Central difference of `f` in coordinate `i`.
pub fn central_difference(f: impl Fn(&[f64]) -> f64, c: &[f64], i: usize, step: f64) -> f64 {
    let mut up = c.to_vec();
    let mut down = c.to_vec();
    up[i] += step;
    down[i] -= step;
    (f(&up) - f(&down)) / (2.0 * step)
}

/// `Q(x) = ½ erfc(x / √2)`, by composite Simpson quadrature of the normal
/// density on `[x, x + 12]`.
pub fn gaussian_tail(x: f64) -> f64 {
    let steps = 20_000;
    let hi = x + 12.0;
    let h = (hi - x) / steps as f64;
    let pdf = |t: f64| (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut acc = pdf(x) + pdf(hi);
    for k in 1..steps {
        let t = x + k as f64 * h;
        acc += if k % 2 == 1 { 4.0 } else { 2.0 } * pdf(t);
    }
    acc * h / 3.0
}
