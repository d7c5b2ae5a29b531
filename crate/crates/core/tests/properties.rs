mod common;

use common::{brute_force_posteriors, central_difference, random_forest, random_irregular};
use ldpc_lab::code::{construct_regular, derive_generator, load_alist, save_alist};
use ldpc_lab::complexity::{count_mlpd, count_spa, gap_term, verify_gap};
use ldpc_lab::mlpd::{check_gradient, energy_gradient, forward, update_inputs, MlpdState};
use ldpc_lab::spa::{app_decide, check_update, spa_init, variable_update};
use ldpc_lab::{SoftVector, SparseParityCheck, PROB_EPSILON};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn random_codes_are_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for _ in 0..100 {
        let h = random_irregular(&mut rng, 2, 200, 8);
        assert!(h.is_consistent());
        assert_eq!(h.column_weights().sum::<usize>(), h.row_weights().sum::<usize>());
        assert_eq!(load_alist(&save_alist(&h)).unwrap(), h);
        assert!(verify_gap(&h));
    }
}

#[test]
fn generator_rows_satisfy_parity() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..40 {
        let h = random_irregular(&mut rng, 4, 80, 6);
        let g = derive_generator(&h);
        assert_eq!(g.rank() + g.k(), h.n());
        for a in 0..g.k() {
            let row = g.row(a);
            assert!(h.syndrome(&row).unwrap().iter().all(|&s| s == 0));
        }
        let msg: Vec<u8> = (0..g.k()).map(|_| rng.random::<bool>() as u8).collect();
        assert!(h.is_codeword(&g.encode(&msg).unwrap()));
    }
}

#[test]
fn complexity_totals_match_general_formulas() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..50 {
        let h = random_irregular(&mut rng, 2, 120, 7);
        let s: u64 = h.column_weights().map(|w| (w * w + w + 1) as u64).sum();
        let r2: u64 = h.row_weights().map(|w| (w * w) as u64).sum();
        assert_eq!(count_spa(&h).total, 2 * s + r2);
        let mlpd: u64 = h.row_weights().map(|w| (w * w + 2 * w - 2) as u64).sum::<u64>() + h.n() as u64;
        assert_eq!(count_mlpd(&h).total, mlpd);
        assert_eq!(count_spa(&h).total as i64 - count_mlpd(&h).total as i64, gap_term(&h));
    }
}

#[test]
fn spa_exact_on_random_forests() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..30 {
        let n = rng.random_range(2..=12);
        let h = random_forest(&mut rng, n);
        let p: Vec<f64> = (0..n).map(|_| rng.random_range(0.01..0.99)).collect();
        let p = SoftVector::new(p).unwrap();
        let mut msgs = spa_init(&p, &h).unwrap();
        check_update(&mut msgs, &h);
        variable_update(&mut msgs, &p, &h);
        let (_, q) = app_decide(&msgs, &p, &h);
        let oracle = brute_force_posteriors(&h, &p);
        for (a, b) in q.iter().zip(&oracle) {
            assert!((a - b).abs() <= 1e-9);
        }
    }
}

#[test]
fn gradient_matches_finite_differences_on_random_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for _ in 0..200 {
        let h = random_irregular(&mut rng, 3, 40, 6);
        let c: Vec<f64> = (0..h.n()).map(|_| rng.random_range(0.01..0.99)).collect();
        let j = rng.random_range(0..h.m());
        for &i in h.row(j) {
            let fd = central_difference(|x| forward(x, &h).0[j], &c, i, 1e-6);
            assert!((fd - check_gradient(&c, &h, j, i).unwrap()).abs() < 1e-6);
        }
        let (o, _) = forward(&c, &h);
        let grad = energy_gradient(&c, &o, &h);
        let i = rng.random_range(0..h.n());
        let fd = central_difference(|x| forward(x, &h).1, &c, i, 1e-6);
        assert!((fd - grad[i]).abs() < 1e-6);
    }
}

#[test]
fn gradient_independent_of_chain_order() {
    // the same check written with its variables in two different orders
    let a = SparseParityCheck::from_rows(4, vec![vec![0, 1, 2, 3]]).unwrap();
    let c = [0.1, 0.7, 0.35, 0.8];
    let perm = [2, 0, 3, 1];
    let permuted: Vec<f64> = perm.iter().map(|&k| c[k]).collect();
    for (pos, &orig) in perm.iter().enumerate() {
        let g1 = check_gradient(&c, &a, 0, orig).unwrap();
        let g2 = check_gradient(&permuted, &a, 0, pos).unwrap();
        assert!((g1 - g2).abs() < 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn regular_construction_meets_weights(
        blocks in 1usize..6,
        sigma in 1usize..4,
        rho in 2usize..7,
        seed in any::<u64>(),
    ) {
        let n = blocks * rho * 2;
        prop_assume!(sigma <= n * sigma / rho);
        let h = construct_regular(n, sigma, rho, seed).unwrap();
        prop_assert!(h.is_consistent());
        prop_assert!(h.column_weights().all(|w| w == sigma));
        prop_assert!(h.row_weights().all(|w| w == rho));
        prop_assert_eq!(h.m(), n * sigma / rho);
    }

    #[test]
    fn soft_inputs_near_bits_descend(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_irregular(&mut rng, 3, 30, 5);
        let c: Vec<f64> = (0..h.n()).map(|_| rng.random_range(0.05..0.95)).collect();
        let state = MlpdState::new(SoftVector::new(c).unwrap(), &h, 0);
        let grad = energy_gradient(&state.c, &state.o, &h);
        prop_assume!(grad.iter().map(|g| g * g).sum::<f64>() > 1e-6);
        let next = MlpdState::new(update_inputs(&state, &h, 1e-4), &h, 1);
        prop_assert!(next.energy < state.energy);
    }

    #[test]
    fn spa_messages_interior_on_random_codes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_irregular(&mut rng, 3, 60, 6);
        let p: Vec<f64> = (0..h.n()).map(|_| rng.random::<f64>().clamp(PROB_EPSILON, 1.0 - PROB_EPSILON)).collect();
        let p = SoftVector::new(p).unwrap();
        let mut msgs = spa_init(&p, &h).unwrap();
        for _ in 0..5 {
            check_update(&mut msgs, &h);
            variable_update(&mut msgs, &p, &h);
            let in_range = |x: &f64| (PROB_EPSILON..=1.0 - PROB_EPSILON).contains(x);
            prop_assert!(msgs.q1().iter().all(in_range));
            prop_assert!(msgs.r1().iter().all(in_range));
        }
    }
}
