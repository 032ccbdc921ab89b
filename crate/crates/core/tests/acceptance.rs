//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! The exact structural facts are checked in integer arithmetic, the
//! identity suites over seeded random inputs at their stated tolerances, and
//! the search criteria against values frozen from seeded runs of the
//! in-repo oracles (regenerate with
//! `cargo test --test acceptance regenerate_frozen -- --ignored --nocapture`).

// The ensure! macro negates ordered comparisons; NaNs would correctly fail.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::time::{Duration, Instant};

use common::*;
use distineq::forms::{eval_forms, i1_via_gradient_tensor, interaction_gradient};
use distineq::geometry::{apply_similarity, PointConfig};
use distineq::optimize::{
    brute_force_min_ratio, cluster_far_stress, min_ratio_over_configs, min_ratio_over_u,
    min_sigma_over_configs, AnnealingSchedule, SearchOptions, SearchReport,
};
use distineq::report::{csv_table, minimize_document, search_report_document};
use distineq::rng::Rng;
use distineq::scalar::{dist, norm};
use distineq::systems::{
    circle_system, kelvin_identity_check, sign_matrix, sphere_inner_identity_check, sphere_spectrum,
};

/// Values frozen from seeded runs of the in-repo searches (criterion 10) —
/// regenerate with the ignored `regenerate_frozen` test after any algorithm
/// change.
mod frozen {
    pub const RATIO_P3_M2: f64 = 0.28767825458965335;
    pub const RATIO_P4_M3: f64 = 0.18479834779199855;
    pub const RATIO_P5_M4: f64 = 0.15830339855125508;
    pub const SIGMA_P4_M1: f64 = 0.25243346540887956;
    pub const SIGMA_P5_M2: f64 = 0.34950526254837144;
}

const STRESS_CSV_M1: &str = include_str!("fixtures/stress_p4_m1.csv");
const STRESS_CSV_M2: &str = include_str!("fixtures/stress_p4_m2.csv");

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn criterion(n: u32, name: &str, budget: Duration, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    match outcome {
        Ok(()) => {
            println!("criterion {n:02} {name}: PASS ({elapsed:.2?})");
            assert!(
                elapsed <= budget,
                "criterion {n} exceeded its runtime budget: {elapsed:.2?} > {budget:.2?}"
            );
        }
        Err(msg) => {
            println!("criterion {n:02} {name}: FAIL ({msg})");
            panic!("criterion {n} failed: {msg}");
        }
    }
}

// ---------------------------------------------------------------------------
// Shared seeded runs (also re-executed by the determinism criterion)
// ---------------------------------------------------------------------------

fn ratio_search_opts(seed: u64, threads: usize) -> SearchOptions<f64> {
    SearchOptions {
        seed,
        restarts: 4,
        max_iters: 400,
        annealing: AnnealingSchedule {
            initial_temperature: 0.5,
            decay: 0.99,
        },
        threads,
        ..SearchOptions::default()
    }
}

fn sigma_search_opts(seed: u64, threads: usize) -> SearchOptions<f64> {
    SearchOptions {
        seed,
        restarts: 4,
        max_iters: 1200,
        annealing: AnnealingSchedule {
            initial_temperature: 0.5,
            decay: 0.995,
        },
        threads,
        ..SearchOptions::default()
    }
}

fn ratio_search(p: usize, m: usize, threads: usize) -> SearchReport<f64> {
    let seed = 0xACCE_5500 + (p * 10 + m) as u64;
    min_ratio_over_configs(p, m, &ratio_search_opts(seed, threads)).expect("search runs")
}

fn sigma_search(p: usize, m: usize, threads: usize) -> SearchReport<f64> {
    let seed = 0x51C0_0000 + (p * 10 + m) as u64;
    min_sigma_over_configs(p, m, &sigma_search_opts(seed, threads)).expect("search runs")
}

fn stress_csv(m: usize, threads: usize) -> String {
    let opts = SearchOptions::<f64> {
        seed: 0x57E5_5000 + m as u64,
        threads,
        ..Default::default()
    };
    let rows =
        cluster_far_stress(4, m, &[10.0, 100.0, 1000.0, 10000.0], &opts).expect("stress runs");
    csv_table("separation,min_ratio_estimate", &rows)
}

fn p2_exact_case(index: usize, threads: usize) -> (Vec<f64>, f64) {
    let mut rng = Rng::substream(0xC1_0000, &[index as u64]);
    let m = 1 + index % 3;
    let config = random_config(&mut rng, 2, m);
    let opts = SearchOptions::<f64> {
        seed: 0xC1_0000 + index as u64,
        restarts: 4,
        max_iters: 300,
        threads,
        ..Default::default()
    };
    min_ratio_over_u(&config, &opts).expect("p2 solve")
}

fn oracle_case_config(index: usize) -> PointConfig<f64> {
    let mut rng = Rng::substream(0xC8_0000, &[index as u64]);
    let p = 3 + index % 2;
    let m = 1 + (index / 2) % 2;
    random_config(&mut rng, p, m)
}

fn oracle_case_descent(index: usize, threads: usize) -> (Vec<f64>, f64) {
    let config = oracle_case_config(index);
    let opts = SearchOptions::<f64> {
        seed: 0xC8_0000 + index as u64,
        restarts: 8,
        max_iters: 500,
        threads,
        ..Default::default()
    };
    min_ratio_over_u(&config, &opts).expect("descent solve")
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

#[test]
fn criterion_01_p2_exact_constant() {
    criterion(1, "p2-exact-constant", Duration::from_secs(5), || {
        for index in 0..50 {
            let (_, value) = p2_exact_case(index, 1);
            ensure!((value - 1.0).abs() <= 1e-6, "case {index}: value {value}");
        }
        Ok(())
    });
}

#[test]
fn criterion_02_form_agreement() {
    criterion(2, "form-agreement", Duration::from_secs(10), || {
        let mut rng = Rng::seeded(0xC2);
        for trial in 0..1000 {
            let p = 2 + (rng.next_u64() % 6) as usize;
            let m = 1 + (rng.next_u64() % 3) as usize;
            let config = random_config(&mut rng, p, m);
            let u = random_unit_weights(&mut rng, p);
            let rewrite = eval_forms(&config, &u).unwrap().i1;
            let tensor = i1_via_gradient_tensor(&config, &u).unwrap();
            let denom = rewrite.abs().max(tensor.abs()).max(1e-300);
            ensure!(
                ((rewrite - tensor) / denom).abs() <= 1e-12,
                "trial {trial}: {rewrite} vs {tensor}"
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_03_gradient_matches_finite_differences() {
    criterion(
        3,
        "gradient-finite-differences",
        Duration::from_secs(10),
        || {
            let mut rng = Rng::seeded(0xC3);
            for trial in 0..100 {
                let p = 2 + (rng.next_u64() % 4) as usize;
                let m = 1 + (rng.next_u64() % 3) as usize;
                let config = random_config(&mut rng, p, m);
                let grad = interaction_gradient(&config);
                let h = 1e-6 * config.diameter();
                for k in 0..p {
                    for i in 0..p {
                        for j in 0..p {
                            if i == j {
                                continue;
                            }
                            for c in 0..m {
                                let fd = {
                                    let mut plus = config.points().to_vec();
                                    let mut minus = config.points().to_vec();
                                    plus[k][c] += h;
                                    minus[k][c] -= h;
                                    let a_plus = 1.0 / dist(&plus[i], &plus[j]);
                                    let a_minus = 1.0 / dist(&minus[i], &minus[j]);
                                    (a_plus - a_minus) / (2.0 * h)
                                };
                                let analytic = grad.entry(k, i, j)[c];
                                if k != i && k != j {
                                    ensure!(
                                        fd == 0.0 && analytic == 0.0,
                                        "structural zero violated"
                                    );
                                    continue;
                                }
                                ensure!(
                                    (fd - analytic).abs() <= 1e-6 * analytic.abs().max(1e-6),
                                    "trial {trial} entry ({k},{i},{j},{c}): fd {fd} vs {analytic}"
                                );
                            }
                        }
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_04_kelvin_identity_suite() {
    criterion(4, "kelvin-identities", Duration::from_secs(5), || {
        let mut rng = Rng::seeded(0xC4);
        for trial in 0..200 {
            let p = 2 + (rng.next_u64() % 5) as usize;
            let m = 1 + (rng.next_u64() % 3) as usize;
            let config = random_config(&mut rng, p, m);
            let u: Vec<f64> = (0..p).map(|_| 2.0 * rng.normal::<f64>()).collect();
            let center = random_kelvin_center(&mut rng, &config);
            let dev = kelvin_identity_check(&config, &u, &center).unwrap();
            let res = distineq::systems::critical_residuals(&config, &u).unwrap();
            let scale = 1.0 + res.total_norm();
            ensure!(
                dev.scalar <= 1e-11 * scale,
                "trial {trial} identity A: {}",
                dev.scalar
            );
            ensure!(
                dev.vector <= 1e-11 * scale,
                "trial {trial} identity B: {}",
                dev.vector
            );
            ensure!(
                dev.combined <= 1e-11 * scale,
                "trial {trial} identity C: {}",
                dev.combined
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_05_sphere_inner_identity() {
    criterion(5, "sphere-inner-identity", Duration::from_secs(5), || {
        let mut rng = Rng::seeded(0xC5);
        for trial in 0..200 {
            let p = 2 + (rng.next_u64() % 7) as usize;
            let m = 1 + (rng.next_u64() % 3) as usize;
            let sphere = random_sphere_config(&mut rng, p, m, 0.05);
            let v: Vec<f64> = (0..p).map(|_| 3.0 * rng.normal::<f64>()).collect();
            let dev = sphere_inner_identity_check(&sphere, &v).unwrap();
            let scale = 1e-12 * (1.0 + norm(&v) * p as f64);
            ensure!(
                dev <= scale,
                "trial {trial}: deviation {dev} vs scale {scale}"
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_06_sign_matrix_exactness() {
    criterion(6, "sign-matrix-exactness", Duration::from_secs(1), || {
        for p in 2..=12 {
            let s = sign_matrix(p).unwrap();
            if p % 2 == 0 {
                ensure!(s.det == 1, "p={p}: det {}", s.det);
                ensure!(s.rank == p, "p={p}: rank {}", s.rank);
            } else {
                ensure!(s.det == 0, "p={p}: det {}", s.det);
                ensure!(s.rank == p - 1, "p={p}: rank {}", s.rank);
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_07_m1_sigma_positivity() {
    criterion(7, "m1-sigma-positivity", Duration::from_secs(30), || {
        let mut rng = Rng::seeded(0xC7);
        for trial in 0..100 {
            let p = 4 + (rng.next_u64() % 6) as usize;
            let angles = random_sorted_angles(&mut rng, p, 0.1);
            let report = sphere_spectrum(&circle_system(&angles).unwrap());
            ensure!(
                report.sigma_min > 1e-9,
                "trial {trial} (p={p}): sigma_min {}",
                report.sigma_min
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_08_oracle_equivalence() {
    criterion(8, "oracle-equivalence", Duration::from_secs(120), || {
        for index in 0..10 {
            let config = oracle_case_config(index);
            let oracle = brute_force_min_ratio(&config, 1_000_000).unwrap();
            let (_, descent) = oracle_case_descent(index, 1);
            let band = 0.01 * oracle.max(descent);
            ensure!(
                (descent - oracle).abs() <= band,
                "case {index}: descent {descent} vs oracle {oracle}"
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_09_similarity_invariance() {
    criterion(9, "similarity-invariance", Duration::from_secs(10), || {
        let mut rng = Rng::seeded(0xC9);
        for cfg_index in 0..10 {
            let p = 2 + (rng.next_u64() % 5) as usize;
            let m = 1 + (rng.next_u64() % 3) as usize;
            let config = random_config(&mut rng, p, m);
            let u = random_unit_weights(&mut rng, p);
            let base = eval_forms(&config, &u).unwrap().ratio;
            for map_index in 0..100 {
                let map = random_similarity(&mut rng, m);
                let mapped = apply_similarity(&config, &map).unwrap();
                let ratio = eval_forms(&mapped, &u).unwrap().ratio;
                ensure!(
                    (ratio - base).abs() <= 1e-10 * (1.0 + base),
                    "config {cfg_index} map {map_index}: {ratio} vs {base}"
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_10_proven_case_regressions() {
    criterion(
        10,
        "proven-case-regressions",
        Duration::from_secs(300),
        || {
            let cases: [(usize, usize, f64); 3] = [
                (3, 2, frozen::RATIO_P3_M2),
                (4, 3, frozen::RATIO_P4_M3),
                (5, 4, frozen::RATIO_P5_M4),
            ];
            for (p, m, want) in cases {
                let report = ratio_search(p, m, 1);
                ensure!(report.best_value > 0.0, "ratio ({p},{m}) not positive");
                ensure!(
                    (report.best_value - want).abs() <= 1e-9,
                    "ratio ({p},{m}): {} vs frozen {want}",
                    report.best_value
                );
            }
            let cases: [(usize, usize, f64); 2] =
                [(4, 1, frozen::SIGMA_P4_M1), (5, 2, frozen::SIGMA_P5_M2)];
            for (p, m, want) in cases {
                let report = sigma_search(p, m, 1);
                ensure!(report.best_value > 0.0, "sigma ({p},{m}) not positive");
                ensure!(
                    (report.best_value - want).abs() <= 1e-9,
                    "sigma ({p},{m}): {} vs frozen {want}",
                    report.best_value
                );
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_11_cluster_stress() {
    criterion(11, "cluster-far-stress", Duration::from_secs(120), || {
        for (m, want) in [(1usize, STRESS_CSV_M1), (2usize, STRESS_CSV_M2)] {
            let csv = stress_csv(m, 1);
            for line in csv.lines().skip(1) {
                let est: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
                ensure!(est > 1e-6, "m={m}: estimate {est} too small");
            }
            ensure!(csv == want, "m={m}: CSV differs from frozen fixture");
        }
        Ok(())
    });
}

#[test]
fn criterion_12_determinism() {
    criterion(12, "determinism", Duration::from_secs(600), || {
        // Inner solves: p=2 exact-constant cases and oracle-equivalence cases.
        for index in [0usize, 1, 2] {
            let a = p2_exact_case(index, 1);
            let b = p2_exact_case(index, 1);
            let c = p2_exact_case(index, 4);
            let doc = |r: &(Vec<f64>, f64)| minimize_document(0, r.1, &r.0);
            ensure!(doc(&a) == doc(&b), "p2 case {index} differs across runs");
            ensure!(
                doc(&a) == doc(&c),
                "p2 case {index} differs across thread counts"
            );
        }
        for index in [0usize, 3] {
            let a = oracle_case_descent(index, 1);
            let b = oracle_case_descent(index, 1);
            let c = oracle_case_descent(index, 4);
            let doc = |r: &(Vec<f64>, f64)| minimize_document(0, r.1, &r.0);
            ensure!(
                doc(&a) == doc(&b),
                "oracle case {index} differs across runs"
            );
            ensure!(
                doc(&a) == doc(&c),
                "oracle case {index} differs across thread counts"
            );
        }
        // Outer searches from criterion 10.
        for (p, m) in [(3usize, 2usize), (4, 3), (5, 4)] {
            let a = search_report_document(&ratio_search(p, m, 1));
            let b = search_report_document(&ratio_search(p, m, 1));
            let c = search_report_document(&ratio_search(p, m, 4));
            ensure!(a == b, "ratio search ({p},{m}) differs across runs");
            ensure!(
                a == c,
                "ratio search ({p},{m}) differs across thread counts"
            );
        }
        for (p, m) in [(4usize, 1usize), (5, 2)] {
            let a = search_report_document(&sigma_search(p, m, 1));
            let b = search_report_document(&sigma_search(p, m, 1));
            let c = search_report_document(&sigma_search(p, m, 4));
            ensure!(a == b, "sigma search ({p},{m}) differs across runs");
            ensure!(
                a == c,
                "sigma search ({p},{m}) differs across thread counts"
            );
        }
        // Stress tables from criterion 11.
        for m in [1usize, 2] {
            let a = stress_csv(m, 1);
            let b = stress_csv(m, 4);
            ensure!(a == b, "stress table m={m} differs across thread counts");
        }
        Ok(())
    });
}

/// Golden regeneration: prints the criterion-10 constants and rewrites the
/// criterion-11 CSV fixtures in the source tree.
#[test]
#[ignore]
fn regenerate_frozen() {
    println!(
        "pub const RATIO_P3_M2: f64 = {:?};",
        ratio_search(3, 2, 1).best_value
    );
    println!(
        "pub const RATIO_P4_M3: f64 = {:?};",
        ratio_search(4, 3, 1).best_value
    );
    println!(
        "pub const RATIO_P5_M4: f64 = {:?};",
        ratio_search(5, 4, 1).best_value
    );
    println!(
        "pub const SIGMA_P4_M1: f64 = {:?};",
        sigma_search(4, 1, 1).best_value
    );
    println!(
        "pub const SIGMA_P5_M2: f64 = {:?};",
        sigma_search(5, 2, 1).best_value
    );
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("stress_p4_m1.csv"), stress_csv(1, 1)).unwrap();
    std::fs::write(dir.join("stress_p4_m2.csv"), stress_csv(2, 1)).unwrap();
    println!("fixtures rewritten under {}", dir.display());
}
