//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured quantities (run with `--nocapture` to see them).
//!
//! Criteria 1 and 2 run the full benchmark-scale solves and take a few
//! minutes each; the rest are fast deterministic oracle checks.

mod common;

use std::time::Instant;

use common::*;
use hankel_rpca::eval::{flag_anomalies, masked_errors, FlagParams};
use hankel_rpca::hankel::{dehankelize, hankelize};
use hankel_rpca::solvers::{
    default_gamma, ht_rmc, ht_rpca, rpca, ObservationMask, SolverConfig,
};
use hankel_rpca::synth::{gen_mask, gen_synthetic, SynthConfig};
use hankel_rpca::tensor::{bcirc, dft_mode3, fold, idft_mode3, t_product, t_svt, tnn, unfold};
use hankel_rpca::{Matrix, Tensor3};
use rand::RngExt;

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// The median residual over consecutive 20-iteration windows after the
/// initial transient must never increase (ADMM itself is not monotone).
fn assert_median_residual_trend(history: &[f64], seed: u64) {
    let median = |w: &[f64]| {
        let mut v = w.to_vec();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v[v.len() / 2]
    };
    let mut prev = f64::INFINITY;
    let mut start = 10;
    while start + 20 <= history.len() {
        let m = median(&history[start..start + 20]);
        assert!(
            m <= prev * (1.0 + 1e-9),
            "seed {seed}: median residual grew at iteration window {start}"
        );
        prev = m;
        start += 20;
    }
}

#[test]
fn criterion_1_benchmark_table_reproduction() {
    let started = Instant::now();
    let seeds: Vec<u64> = (0..5).collect();
    let full = ObservationMask::full(100, 1200);

    let mut ht_rmse = Vec::new();
    let mut ht_mae = Vec::new();
    let mut rp_rmse = Vec::new();
    let mut rp_mae = Vec::new();
    for &seed in &seeds {
        let data = gen_synthetic(&SynthConfig::<f64>::benchmark(seed)).unwrap();

        let cfg = SolverConfig::new(80, 0.002);
        let r = ht_rpca(&data.corrupted, &cfg).unwrap();
        assert_median_residual_trend(&r.residual_history, seed);
        let err = masked_errors(&data.sparse, &r.sparse, &full).unwrap();
        ht_rmse.push(err.rmse);
        ht_mae.push(err.mae);

        let cfg = SolverConfig::new(1, default_gamma(100, 1200));
        let r = rpca(&data.corrupted, &cfg).unwrap();
        assert_median_residual_trend(&r.residual_history, seed);
        let err = masked_errors(&data.sparse, &r.sparse, &full).unwrap();
        rp_rmse.push(err.rmse);
        rp_mae.push(err.mae);
    }

    let (hr, hm, rr) = (mean(&ht_rmse), mean(&ht_mae), mean(&rp_rmse));
    assert!((0.060..=0.095).contains(&hr), "ht-rpca mean rmse {hr}");
    assert!((0.035..=0.065).contains(&hm), "ht-rpca mean mae {hm}");
    assert!((0.080..=0.115).contains(&rr), "rpca mean rmse {rr}");
    for i in 0..seeds.len() {
        assert!(
            ht_rmse[i] < rp_rmse[i] && ht_mae[i] < rp_mae[i],
            "seed {}: ht-rpca (rmse {:.4}, mae {:.4}) must beat rpca (rmse {:.4}, mae {:.4})",
            seeds[i],
            ht_rmse[i],
            ht_mae[i],
            rp_rmse[i],
            rp_mae[i]
        );
    }
    println!(
        "criterion 1 (benchmark table, 5 seeds): PASS - ht-rpca rmse {hr:.4} mae {hm:.4}, \
         rpca rmse {rr:.4} mae {:.4}, wall {:?}",
        mean(&rp_mae),
        started.elapsed()
    );
}

#[test]
fn criterion_2_missing_data_behavior() {
    let started = Instant::now();
    let ratios = [0.1, 0.3, 0.5, 0.7, 0.9];
    for seed in 0..3u64 {
        let data = gen_synthetic(&SynthConfig::<f64>::benchmark(seed)).unwrap();
        let mut rmse = Vec::new();
        for &ratio in &ratios {
            let mask = gen_mask(100, 1200, ratio, seed.wrapping_add(1000)).unwrap();
            let cfg = SolverConfig::new(80, 0.002);
            let r = ht_rmc(&data.corrupted, &mask, &cfg).unwrap();
            let err = masked_errors(&data.sparse, &r.sparse, &mask).unwrap();
            rmse.push(err.rmse);
        }
        let base = rmse[0];
        assert!(base.is_finite() && base > 0.0, "seed {seed}: base rmse {base}");
        for (i, &ratio) in ratios.iter().enumerate().take(4) {
            assert!(
                rmse[i].is_finite() && rmse[i] <= 2.0 * base,
                "seed {seed}, ratio {ratio}: rmse {} vs base {base}",
                rmse[i]
            );
        }
        assert!(
            rmse[4] > 3.0 * base,
            "seed {seed}: rmse at 0.9 missing must break down, got {} vs base {base}",
            rmse[4]
        );
        println!(
            "criterion 2 seed {seed}: rmse by ratio {:?}",
            rmse.iter().map(|r| format!("{r:.4}")).collect::<Vec<_>>()
        );
    }
    println!(
        "criterion 2 (missing-data behavior, 3 seeds): PASS - graceful to 0.7, breakdown at 0.9, wall {:?}",
        started.elapsed()
    );
}

#[test]
fn criterion_3_oracle_suites() {
    let started = Instant::now();

    // (a) tnn equals the block-circulant nuclear norm / n3.
    let mut r = rng(31);
    for trial in 0..50 {
        let dims = (
            1 + (r.random::<u32>() as usize) % 6,
            1 + (r.random::<u32>() as usize) % 6,
            1 + (r.random::<u32>() as usize) % 6,
        );
        let a = random_tensor(dims.0, dims.1, dims.2, 31_000 + trial);
        let big = bcirc(&a);
        let nuclear: f64 = jacobi_singular_values(&CMat::from_real_slice(
            big.as_slice(),
            big.nrows(),
            big.ncols(),
        ))
        .iter()
        .sum();
        let expected = nuclear / dims.2 as f64;
        let rel = (tnn(&a) - expected).abs() / expected.max(1e-300);
        assert!(rel < 1e-8, "tnn oracle, dims {dims:?}: rel {rel:e}");
    }

    // (b) t_product equals fold(bcirc . unfold).
    for trial in 0..50 {
        let n1 = 1 + (r.random::<u32>() as usize) % 5;
        let n2 = 1 + (r.random::<u32>() as usize) % 5;
        let l = 1 + (r.random::<u32>() as usize) % 5;
        let n3 = 1 + (r.random::<u32>() as usize) % 5;
        let a = random_tensor(n1, n2, n3, 32_000 + trial);
        let b = random_tensor(n2, l, n3, 33_000 + trial);
        let big = bcirc(&a);
        let ub = unfold(&b);
        let mut prod = Matrix::zeros(big.nrows(), ub.ncols());
        for i in 0..big.nrows() {
            for j in 0..ub.ncols() {
                let mut acc = 0.0;
                for k in 0..big.ncols() {
                    acc += big.get(i, k) * ub.get(k, j);
                }
                prod.set(i, j, acc);
            }
        }
        let slow = fold(&prod, (n1, l, n3)).unwrap();
        let fast = t_product(&a, &b).unwrap();
        let rel = fast.sub(&slow).fro_norm() / (1.0 + slow.fro_norm());
        assert!(rel < 1e-10, "t_product oracle ({n1},{n2},{l},{n3}): rel {rel:e}");
    }

    // (c) t_svt equals the no-shortcut all-slice SVD oracle.
    for trial in 0..20 {
        let n1 = 1 + (r.random::<u32>() as usize) % 5;
        let n2 = 1 + (r.random::<u32>() as usize) % 5;
        let n3 = 1 + (r.random::<u32>() as usize) % 5;
        let lambda = r.random::<f64>() * 1.5;
        let y = random_tensor(n1, n2, n3, 34_000 + trial);
        let f = dft_mode3(&y);
        let mut g = hankel_rpca::ComplexTensor3::<f64>::zeros(n1, n2, n3);
        for k in 0..n3 {
            let mut slice = CMat::zeros(n1, n2);
            for j in 0..n2 {
                for i in 0..n1 {
                    slice.set(i, j, f.get(i, j, k));
                }
            }
            let shrunk = jacobi_shrink(&slice, lambda);
            for j in 0..n2 {
                for i in 0..n1 {
                    g.set(i, j, k, shrunk.get(i, j));
                }
            }
        }
        let slow = idft_mode3(&g).unwrap();
        let fast = t_svt(&y, lambda).unwrap();
        let rel = fast.sub(&slow).fro_norm() / (1.0 + slow.fro_norm());
        assert!(rel < 1e-10, "t_svt oracle ({n1},{n2},{n3}) lambda {lambda}: rel {rel:e}");
    }

    // (d) dehankelize . hankelize is the exact identity.
    for trial in 0..100 {
        let n = 1 + (r.random::<u32>() as usize) % 8;
        let t = 1 + (r.random::<u32>() as usize) % 30;
        let tau = 1 + (r.random::<u32>() as usize) % t;
        let x = random_matrix(n, t, 35_000 + trial);
        let back = dehankelize(&hankelize(&x, tau).unwrap());
        assert_eq!(back, x, "roundtrip (n={n}, t={t}, tau={tau}) must be exact");
    }

    println!(
        "criterion 3 (oracle suites: tnn, t_product, t_svt, hankel roundtrip): PASS - wall {:?}",
        started.elapsed()
    );
}

#[test]
fn criterion_4_tau_one_reduction() {
    let started = Instant::now();
    for trial in 0..10u64 {
        let m = random_matrix(20, 50, 41_000 + trial).scale(4.0);
        let cfg = SolverConfig::new(1, 0.15);
        let a = ht_rpca(&m, &cfg).unwrap();
        let b = rpca(&m, &cfg).unwrap();
        let dl = max_abs_diff_mat(&a.low_rank, &b.low_rank);
        let ds = max_abs_diff_mat(&a.sparse, &b.sparse);
        assert!(dl <= 1e-8 && ds <= 1e-8, "trial {trial}: dl {dl:e}, ds {ds:e}");
    }
    println!(
        "criterion 4 (tau=1 reduction, 10 inputs): PASS - wall {:?}",
        started.elapsed()
    );
}

#[test]
fn criterion_5_exact_recovery() {
    let started = Instant::now();
    let mut r = rng(51);
    let a = Matrix::from_fn(50, 2, |_, _| r.random::<f64>() * 2.0 - 1.0);
    let b = Matrix::from_fn(60, 2, |_, _| r.random::<f64>() * 2.0 - 1.0);
    let truth =
        Matrix::from_fn(50, 60, |i, j| (0..2).map(|k| a.get(i, k) * b.get(j, k)).sum::<f64>());
    let mut m = truth.clone();
    for _ in 0..150 {
        let i = (r.random::<u32>() as usize) % 50;
        let j = (r.random::<u32>() as usize) % 60;
        let sign = if r.random::<f64>() < 0.5 { -1.0 } else { 1.0 };
        m.set(i, j, truth.get(i, j) + sign * (2.0 + 6.0 * r.random::<f64>()));
    }

    let result = rpca(&m, &SolverConfig::new(1, 1.0 / 60f64.sqrt())).unwrap();
    let rel_rpca = result.low_rank.sub(&truth).fro_norm() / truth.fro_norm();
    assert!(rel_rpca < 1e-3, "rpca recovery error {rel_rpca:e}");

    let gamma_t = 1.0 / (51.0f64 * 10.0).sqrt();
    let result = ht_rpca(&m, &SolverConfig::new(10, gamma_t)).unwrap();
    let rel_ht = result.low_rank.sub(&truth).fro_norm() / truth.fro_norm();
    assert!(rel_ht < 1e-3, "ht_rpca recovery error {rel_ht:e}");

    println!(
        "criterion 5 (noiseless exact recovery): PASS - rpca {rel_rpca:.2e}, ht-rpca {rel_ht:.2e}, wall {:?}",
        started.elapsed()
    );
}

#[test]
fn criterion_6_flag_rule() {
    let started = Instant::now();

    // Hand-computed fixture: mean 2, population sigma 4; strict inequality
    // leaves the boundary unflagged at xi = 2 and flags day 5 at xi = 1.9.
    let m = Matrix::from_rows(&[&[0.0, 0.0, 0.0, 0.0, 10.0]]);
    let flags = flag_anomalies(&m, &FlagParams { xi: 2.0, period: 1, days: 5 }).unwrap();
    assert_eq!(flags.count_true(), 0, "xi = 2 boundary must not flag");
    let flags = flag_anomalies(&m, &FlagParams { xi: 1.9, period: 1, days: 5 }).unwrap();
    assert_eq!(flags.count_true(), 1);
    assert!(flags.get(0, 4));

    // Constant matrix: zero sigma, strict inequality, no flags.
    let constant = Matrix::from_fn(3, 12, |_, _| 7.0);
    let flags =
        flag_anomalies(&constant, &FlagParams { xi: 2.0, period: 4, days: 3 }).unwrap();
    assert_eq!(flags.count_true(), 0);

    // Scaling invariance on random inputs.
    let mut r = rng(61);
    for trial in 0..10 {
        let m = random_matrix(4, 24, 61_000 + trial);
        let params = FlagParams { xi: 0.5 + r.random::<f64>() * 2.0, period: 6, days: 4 };
        let base = flag_anomalies(&m, &params).unwrap();
        let scaled = flag_anomalies(&m.scale(10.0), &params).unwrap();
        assert_eq!(base, scaled, "trial {trial}: flags must be scale invariant");
    }

    println!(
        "criterion 6 (flag rule fixtures + scaling invariance): PASS - wall {:?}",
        started.elapsed()
    );
}

#[test]
fn zero_tensor_edge_cases() {
    // Companions to the criteria: degenerate inputs stay well-defined.
    let z = Tensor3::<f64>::zeros(2, 3, 4);
    assert_eq!(tnn(&z), 0.0);
    assert_eq!(t_svt(&z, 0.5).unwrap(), z);
}
