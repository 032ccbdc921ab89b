//! Shared random generators for the integration suites.
//!
//! Everything is driven by the crate's own seeded generator so the suites
//! are reproducible; the generators reject degenerate draws (near-coincident
//! points, tiny angle gaps) rather than rescaling them.

use distineq::geometry::{PointConfig, SimilarityMap, SphereConfig};
use distineq::linalg::Mat;
use distineq::rng::Rng;
use distineq::scalar::{dist, dot, norm};

/// Random configuration with a mutual separation floor, coordinates of
/// order one.
pub fn random_config(rng: &mut Rng, p: usize, m: usize) -> PointConfig<f64> {
    loop {
        let points: Vec<Vec<f64>> = (0..p)
            .map(|_| (0..m).map(|_| rng.range(-2.0, 2.0)).collect())
            .collect();
        let Ok(cfg) = PointConfig::new(points) else {
            continue;
        };
        if cfg.min_separation() >= 0.15 {
            return cfg;
        }
    }
}

/// Nonzero weight vector with unit norm.
pub fn random_unit_weights(rng: &mut Rng, p: usize) -> Vec<f64> {
    rng.unit_vector(p)
}

/// Unit-sphere configuration with a chord floor.
pub fn random_sphere_config(
    rng: &mut Rng,
    p: usize,
    m: usize,
    min_chord: f64,
) -> SphereConfig<f64> {
    loop {
        let points: Vec<Vec<f64>> = (0..p).map(|_| rng.unit_vector(m + 1)).collect();
        let Ok(cfg) = SphereConfig::new(points) else {
            continue;
        };
        if cfg.min_chord() >= min_chord {
            return cfg;
        }
    }
}

/// Random similarity: orthogonal matrix from Gram-Schmidt over normal
/// deviates, log-uniform scale, normal translation.
pub fn random_similarity(rng: &mut Rng, m: usize) -> SimilarityMap<f64> {
    'outer: loop {
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m);
        for _ in 0..m {
            let mut v: Vec<f64> = (0..m).map(|_| rng.normal()).collect();
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(&v, b);
                    for (vk, &bk) in v.iter_mut().zip(b.iter()) {
                        *vk -= c * bk;
                    }
                }
            }
            let n = norm(&v);
            if n < 1e-6 {
                continue 'outer;
            }
            for vk in v.iter_mut() {
                *vk /= n;
            }
            basis.push(v);
        }
        let mut rotation = Mat::zeros(m, m);
        for (j, b) in basis.iter().enumerate() {
            for i in 0..m {
                rotation[(i, j)] = b[i];
            }
        }
        let scale = (rng.range(-1.0, 1.0) * std::f64::consts::LN_10 * 0.5).exp();
        let translation: Vec<f64> = (0..m).map(|_| 2.0 * rng.normal::<f64>()).collect();
        if let Ok(map) = SimilarityMap::new(translation, rotation, scale) {
            return map;
        }
    }
}

/// Sorted angles in `[0, 2π)` whose consecutive and wraparound gaps all meet
/// the floor.
pub fn random_sorted_angles(rng: &mut Rng, p: usize, min_gap: f64) -> Vec<f64> {
    let tau = std::f64::consts::TAU;
    assert!(min_gap * (p as f64) < tau);
    let slack = tau - min_gap * p as f64;
    // Exponential spacings normalized so all p gaps (wraparound included)
    // meet the floor; the rotation offset stays inside the wraparound gap.
    let draws: Vec<f64> = (0..p)
        .map(|_| -rng.next_unit_f64().max(1e-12).ln())
        .collect();
    let total: f64 = draws.iter().sum();
    let gaps: Vec<f64> = draws.iter().map(|d| min_gap + slack * d / total).collect();
    let offset = rng.next_unit_f64() * (gaps[p - 1] - min_gap);
    let mut angles = Vec::with_capacity(p);
    let mut acc = offset;
    for g in gaps.iter().take(p - 1) {
        angles.push(acc);
        acc += g;
    }
    angles.push(acc);
    angles
}

/// Kelvin center at a controlled distance from every point.
pub fn random_kelvin_center(rng: &mut Rng, config: &PointConfig<f64>) -> Vec<f64> {
    let m = config.m();
    let diameter = config.diameter();
    loop {
        let center: Vec<f64> = (0..m).map(|_| rng.range(-3.0, 3.0) * diameter).collect();
        let clear = (0..config.p()).all(|i| dist(config.point(i), &center) >= 0.3 * diameter);
        if clear {
            return center;
        }
    }
}
