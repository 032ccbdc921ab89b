//! Point configurations and geometric transforms.
//!
//! A [`PointConfig`] is an ordered list of `p ≥ 2` distinct points in `R^m`.
//! Distinctness is enforced relative to the diameter so that rescaled copies
//! of a configuration validate identically. All transforms return new
//! configurations; nothing here mutates in place.

use crate::error::{Error, Result};
use crate::linalg::{jacobi_svd, Mat};
use crate::scalar::{dist, dot, norm, Real};

/// Relative threshold under which two points count as coincident.
pub const DUPLICATE_REL_TOL: f64 = 1e-12;
/// Default Kelvin guard: center must stay this fraction of the diameter
/// away from every point.
pub const KELVIN_GUARD_REL: f64 = 1e-9;
/// Unit-norm tolerance for sphere configurations.
pub const SPHERE_NORM_TOL: f64 = 1e-12;
/// Relative tolerance for the numerical rank decision in [`affine_reduce`].
pub const AFFINE_RANK_REL_TOL: f64 = 1e-10;

/// Ordered list of `p` distinct points in `R^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfig<S> {
    points: Vec<Vec<S>>,
}

impl<S: Real> PointConfig<S> {
    /// Validate and build a configuration (`make_config`).
    pub fn new(points: Vec<Vec<S>>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::TooFewPoints {
                found: points.len(),
                min: 2,
            });
        }
        let m = points[0].len();
        if m == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        for pt in &points {
            if pt.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: pt.len(),
                });
            }
            if pt.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonfiniteCoordinate);
            }
        }
        let cfg = PointConfig { points };
        let (min_d, max_d) = cfg.distance_extremes();
        // Finite coordinates can still overflow the squared distances.
        if !max_d.is_finite() {
            return Err(Error::NonfiniteCoordinate);
        }
        if min_d <= S::of(DUPLICATE_REL_TOL) * max_d {
            return Err(Error::DuplicatePoints);
        }
        Ok(cfg)
    }

    /// Number of points.
    pub fn p(&self) -> usize {
        self.points.len()
    }

    /// Ambient dimension.
    pub fn m(&self) -> usize {
        self.points[0].len()
    }

    pub fn point(&self, i: usize) -> &[S] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<S>] {
        &self.points
    }

    fn distance_extremes(&self) -> (S, S) {
        let mut min_d = S::infinity();
        let mut max_d = S::zero();
        for i in 0..self.p() {
            for j in (i + 1)..self.p() {
                let d = dist(&self.points[i], &self.points[j]);
                if d < min_d {
                    min_d = d;
                }
                if d > max_d {
                    max_d = d;
                }
            }
        }
        (min_d, max_d)
    }

    /// Largest pairwise distance.
    pub fn diameter(&self) -> S {
        self.distance_extremes().1
    }

    /// Smallest pairwise distance.
    pub fn min_separation(&self) -> S {
        self.distance_extremes().0
    }
}

/// Points of unit norm in `R^{m+1}` (an `m`-sphere configuration).
#[derive(Debug, Clone, PartialEq)]
pub struct SphereConfig<S> {
    points: Vec<Vec<S>>,
}

impl<S: Real> SphereConfig<S> {
    /// Validate unit norms (within [`SPHERE_NORM_TOL`]) and distinctness.
    pub fn new(points: Vec<Vec<S>>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::TooFewPoints {
                found: points.len(),
                min: 2,
            });
        }
        let dim = points[0].len();
        if dim < 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: dim,
            });
        }
        let tol = S::of(SPHERE_NORM_TOL);
        for pt in &points {
            if pt.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: pt.len(),
                });
            }
            if pt.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonfiniteCoordinate);
            }
            if (norm(pt) - S::one()).abs() > tol {
                return Err(Error::NotOnSphere);
            }
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if dist(&points[i], &points[j]) <= S::zero() {
                    return Err(Error::DuplicatePoints);
                }
            }
        }
        Ok(SphereConfig { points })
    }

    pub fn p(&self) -> usize {
        self.points.len()
    }

    /// Sphere dimension `m` (points live in `R^{m+1}`).
    pub fn m(&self) -> usize {
        self.points[0].len() - 1
    }

    pub fn point(&self, i: usize) -> &[S] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<S>] {
        &self.points
    }

    /// Smallest pairwise chord length.
    pub fn min_chord(&self) -> S {
        let mut min_d = S::infinity();
        for i in 0..self.p() {
            for j in (i + 1)..self.p() {
                let d = dist(&self.points[i], &self.points[j]);
                if d < min_d {
                    min_d = d;
                }
            }
        }
        min_d
    }
}

/// Ambient similarity `x ↦ scale · (rotation · x) + translation`.
#[derive(Debug, Clone)]
pub struct SimilarityMap<S> {
    translation: Vec<S>,
    rotation: Mat<S>,
    scale: S,
}

impl<S: Real> SimilarityMap<S> {
    /// Validate orthogonality of `rotation` (within 1e-12) and `scale > 0`.
    pub fn new(translation: Vec<S>, rotation: Mat<S>, scale: S) -> Result<Self> {
        let m = translation.len();
        if rotation.rows() != m || rotation.cols() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: rotation.rows(),
            });
        }
        if !(scale > S::zero()) || !scale.is_finite() {
            return Err(Error::InvalidSimilarity(
                "scale must be positive and finite",
            ));
        }
        let tol = S::of(1e-12);
        for a in 0..m {
            for b in 0..m {
                let mut g = S::zero();
                for k in 0..m {
                    g = g + rotation[(k, a)] * rotation[(k, b)];
                }
                let want = if a == b { S::one() } else { S::zero() };
                if (g - want).abs() > tol {
                    return Err(Error::InvalidSimilarity("rotation is not orthogonal"));
                }
            }
        }
        Ok(SimilarityMap {
            translation,
            rotation,
            scale,
        })
    }

    /// Identity in `R^m`.
    pub fn identity(m: usize) -> Self {
        SimilarityMap {
            translation: vec![S::zero(); m],
            rotation: Mat::identity(m),
            scale: S::one(),
        }
    }

    /// Pure scaling.
    pub fn scaling(m: usize, scale: S) -> Result<Self> {
        Self::new(vec![S::zero(); m], Mat::identity(m), scale)
    }

    pub fn dimension(&self) -> usize {
        self.translation.len()
    }

    pub fn apply_point(&self, x: &[S]) -> Vec<S> {
        let rotated = self.rotation.matvec(x);
        rotated
            .iter()
            .zip(self.translation.iter())
            .map(|(&r, &t)| self.scale * r + t)
            .collect()
    }
}

/// Symmetric matrix of pairwise distances, zero diagonal.
pub fn pairwise_distances<S: Real>(config: &PointConfig<S>) -> Mat<S> {
    let p = config.p();
    let mut d = Mat::zeros(p, p);
    for i in 0..p {
        for j in (i + 1)..p {
            let v = dist(config.point(i), config.point(j));
            d[(i, j)] = v;
            d[(j, i)] = v;
        }
    }
    d
}

/// Canonical gauge: relabel so the closest pair carries labels 1,2 (the
/// member with smaller original index first), translate point 1 to the
/// origin, rescale the minimum distance to 1, and sort the remaining points
/// by distance from point 1 with ties broken by original index.
pub fn normalize_config<S: Real>(config: &PointConfig<S>) -> PointConfig<S> {
    let p = config.p();
    let (mut bi, mut bj) = (0usize, 1usize);
    let mut best = S::infinity();
    for i in 0..p {
        for j in (i + 1)..p {
            let d = dist(config.point(i), config.point(j));
            if d < best {
                best = d;
                bi = i;
                bj = j;
            }
        }
    }
    let anchor = config.point(bi).to_vec();
    let inv = S::one() / best;

    let mut rest: Vec<usize> = (0..p).filter(|&k| k != bi && k != bj).collect();
    rest.sort_by(|&a, &b| {
        let da = dist(config.point(a), &anchor);
        let db = dist(config.point(b), &anchor);
        da.partial_cmp(&db).unwrap().then(a.cmp(&b))
    });

    let order = std::iter::once(bi).chain(std::iter::once(bj)).chain(rest);
    let points: Vec<Vec<S>> = order
        .map(|k| {
            config
                .point(k)
                .iter()
                .zip(anchor.iter())
                .map(|(&x, &a)| (x - a) * inv)
                .collect()
        })
        .collect();
    PointConfig { points }
}

/// Apply a similarity pointwise.
pub fn apply_similarity<S: Real>(
    config: &PointConfig<S>,
    map: &SimilarityMap<S>,
) -> Result<PointConfig<S>> {
    if map.dimension() != config.m() {
        return Err(Error::DimensionMismatch {
            expected: config.m(),
            found: map.dimension(),
        });
    }
    Ok(PointConfig {
        points: config.points().iter().map(|x| map.apply_point(x)).collect(),
    })
}

/// Kelvin transform of a single point: `x ↦ N + (x − N)/|x − N|²`.
pub fn kelvin_point<S: Real>(x: &[S], center: &[S]) -> Vec<S> {
    let mut sq = S::zero();
    for (&xi, &ni) in x.iter().zip(center.iter()) {
        let d = xi - ni;
        sq = sq + d * d;
    }
    x.iter()
        .zip(center.iter())
        .map(|(&xi, &ni)| ni + (xi - ni) / sq)
        .collect()
}

/// Kelvin transform of a whole configuration with the default guard
/// (`1e-9 ·` diameter).
pub fn kelvin_transform<S: Real>(config: &PointConfig<S>, center: &[S]) -> Result<PointConfig<S>> {
    kelvin_transform_with_guard(config, center, S::of(KELVIN_GUARD_REL) * config.diameter())
}

/// Kelvin transform with an explicit guard distance for the center.
pub fn kelvin_transform_with_guard<S: Real>(
    config: &PointConfig<S>,
    center: &[S],
    guard: S,
) -> Result<PointConfig<S>> {
    if center.len() != config.m() {
        return Err(Error::DimensionMismatch {
            expected: config.m(),
            found: center.len(),
        });
    }
    for i in 0..config.p() {
        if dist(config.point(i), center) < guard {
            return Err(Error::CenterTooClose);
        }
    }
    let points = config
        .points()
        .iter()
        .map(|x| kelvin_point(x, center))
        .collect();
    PointConfig::new(points)
}

/// Lift `R^m` onto the unit sphere `S^m ⊂ R^{m+1}`.
///
/// Embeds each point with last coordinate 0, inverts about the pole
/// `N = (0,…,0,1)` (landing on the sphere of radius ½ centered at ½N), then
/// recenters by −½N and doubles. Closed form:
/// `x ↦ (2x, |x|² − 1) / (|x|² + 1)`.
pub fn stereographic_lift<S: Real>(config: &PointConfig<S>) -> Result<SphereConfig<S>> {
    let two = S::of(2.0);
    let points = config
        .points()
        .iter()
        .map(|x| {
            let sq = dot(x, x);
            let denom = sq + S::one();
            let mut y: Vec<S> = x.iter().map(|&c| two * c / denom).collect();
            y.push((sq - S::one()) / denom);
            y
        })
        .collect();
    SphereConfig::new(points)
}

/// Re-coordinatize into `R^d`, `d` the numerical rank of `{x_i − x_1}`,
/// preserving all pairwise distances.
///
/// The basis comes from modified Gram-Schmidt over the differences in index
/// order, re-orthogonalized once; a difference joins the basis when its
/// residual exceeds `1e-10 ·` diameter.
pub fn affine_reduce<S: Real>(config: &PointConfig<S>) -> PointConfig<S> {
    let p = config.p();
    let m = config.m();
    let tol = S::of(AFFINE_RANK_REL_TOL) * config.diameter();
    let origin = config.point(0).to_vec();

    let mut basis: Vec<Vec<S>> = Vec::new();
    for i in 1..p {
        let mut v: Vec<S> = config
            .point(i)
            .iter()
            .zip(origin.iter())
            .map(|(&x, &o)| x - o)
            .collect();
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&v, b);
                for (vk, &bk) in v.iter_mut().zip(b.iter()) {
                    *vk = *vk - c * bk;
                }
            }
        }
        let r = norm(&v);
        if r > tol {
            for vk in v.iter_mut() {
                *vk = *vk / r;
            }
            basis.push(v);
            if basis.len() == m {
                break;
            }
        }
    }
    // p >= 2 distinct points guarantee rank >= 1.
    debug_assert!(!basis.is_empty());

    let points = config
        .points()
        .iter()
        .map(|x| {
            let diff: Vec<S> = x.iter().zip(origin.iter()).map(|(&c, &o)| c - o).collect();
            basis.iter().map(|b| dot(&diff, b)).collect()
        })
        .collect();
    PointConfig { points }
}

/// Numerical rank of the difference matrix `{x_i − x_1}` via singular
/// values; independent check for [`affine_reduce`].
pub fn difference_rank<S: Real>(config: &PointConfig<S>) -> usize {
    let rows: Vec<Vec<S>> = (1..config.p())
        .map(|i| {
            config
                .point(i)
                .iter()
                .zip(config.point(0).iter())
                .map(|(&x, &o)| x - o)
                .collect()
        })
        .collect();
    let svd = jacobi_svd(&Mat::from_rows(&rows));
    let tol = S::of(AFFINE_RANK_REL_TOL) * config.diameter();
    svd.singular_values.iter().filter(|&&s| s > tol).count()
}
