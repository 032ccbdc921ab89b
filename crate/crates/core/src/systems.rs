//! Equivalent-condition machinery.
//!
//! The inequality holds for a given `p` (granted the smaller cases) exactly
//! when two systems admit only the zero solution: the critical residual
//! system on the original points and the linear sphere system on their
//! stereographic images. This module builds both, provides the identity
//! checks tying them together through the Kelvin transform, handles the
//! point-at-infinity variant, and computes the exact integer facts about the
//! sign matrix that settle the one-dimensional case.
//!
//! "No non-zero solution" is a rank statement; numerically it is reported as
//! the smallest singular value of the stacked system together with the
//! candidate null vector, and every threshold is an explicit, empirical
//! parameter rather than a proved bound.

use crate::error::{Error, Result};
use crate::geometry::{PointConfig, SphereConfig};
use crate::linalg::{jacobi_svd, Mat};
use crate::scalar::{dist, dot, norm, Real};

/// Scalar and vector residuals of the critical system.
///
/// `r1_i = Σ_{j≠i} u_j/|x_i−x_j|` (the rows of `AU`) and
/// `r2_i = u_i Σ_{j≠i} u_j (x_i−x_j)/|x_i−x_j|^3`.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalResiduals<S> {
    pub r1: Vec<S>,
    pub r2: Vec<Vec<S>>,
}

impl<S: Real> CriticalResiduals<S> {
    /// `(Σ|r1_i|² + Σ|r2_i|²)^{1/2}`.
    pub fn total_norm(&self) -> S {
        let mut acc = dot(&self.r1, &self.r1);
        for v in &self.r2 {
            acc = acc + dot(v, v);
        }
        acc.sqrt()
    }
}

/// Residuals of the critical system at `(config, u)`.
pub fn critical_residuals<S: Real>(
    config: &PointConfig<S>,
    u: &[S],
) -> Result<CriticalResiduals<S>> {
    if u.len() != config.p() {
        return Err(Error::DimensionMismatch {
            expected: config.p(),
            found: u.len(),
        });
    }
    let p = config.p();
    let m = config.m();
    let mut r1 = vec![S::zero(); p];
    let mut r2 = vec![vec![S::zero(); m]; p];
    for i in 0..p {
        let xi = config.point(i);
        let mut sum1 = S::zero();
        let mut sum2 = vec![S::zero(); m];
        for j in 0..p {
            if j == i {
                continue;
            }
            let xj = config.point(j);
            let d = dist(xi, xj);
            sum1 = sum1 + u[j] / d;
            let inv3 = S::one() / (d * d * d);
            for c in 0..m {
                sum2[c] = sum2[c] + u[j] * (xi[c] - xj[c]) * inv3;
            }
        }
        r1[i] = sum1;
        for c in 0..m {
            r2[i][c] = u[i] * sum2[c];
        }
    }
    Ok(CriticalResiduals { r1, r2 })
}

/// Stacked matrix of the linear sphere system.
///
/// Block row `i` (of height `m+1`) holds `(y_i−y_j)/|y_i−y_j|^3` in column
/// `j ≠ i` and zeros in column `i`; multiplying by `v` yields the stacked
/// residuals `Σ_{j≠i} v_j (y_i−y_j)/|y_i−y_j|^3`.
#[derive(Debug, Clone)]
pub struct SphereSystemMatrix<S> {
    p: usize,
    m: usize,
    mat: Mat<S>,
}

impl<S: Real> SphereSystemMatrix<S> {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn matrix(&self) -> &Mat<S> {
        &self.mat
    }

    /// The `m+1` column entries of block `(i, j)`.
    pub fn block(&self, i: usize, j: usize) -> Vec<S> {
        (0..self.m + 1)
            .map(|c| self.mat[(i * (self.m + 1) + c, j)])
            .collect()
    }

    /// Stacked residuals for a weight vector.
    pub fn residuals(&self, v: &[S]) -> Vec<S> {
        self.mat.matvec(v)
    }
}

fn sphere_system_from_points<S: Real>(points: &[Vec<S>]) -> SphereSystemMatrix<S> {
    let p = points.len();
    let dim = points[0].len();
    let mut mat = Mat::zeros(p * dim, p);
    for i in 0..p {
        for j in 0..p {
            if j == i {
                continue;
            }
            let d = dist(&points[i], &points[j]);
            let inv3 = S::one() / (d * d * d);
            for c in 0..dim {
                mat[(i * dim + c, j)] = (points[i][c] - points[j][c]) * inv3;
            }
        }
    }
    SphereSystemMatrix { p, m: dim - 1, mat }
}

/// Sphere system matrix of a unit-sphere configuration.
pub fn sphere_system<S: Real>(sphere: &SphereConfig<S>) -> SphereSystemMatrix<S> {
    sphere_system_from_points(sphere.points())
}

/// Default relative threshold below which `sigma_min` counts as a
/// numerical null vector. Empirical; nothing here is a proved bound.
pub const NULL_DECISION_REL_TOL: f64 = 1e-9;

/// Singular spectrum of a stacked system with the candidate null vector.
#[derive(Debug, Clone)]
pub struct SpectrumReport<S> {
    /// All `min(rows, cols)` singular values, descending.
    pub singular_values: Vec<S>,
    pub sigma_min: S,
    /// Unit right singular vector paired with `sigma_min`.
    pub null_candidate: Vec<S>,
    /// `|M · null_candidate|`, recomputed from the input matrix.
    pub residual_norm: S,
}

impl<S: Real> SpectrumReport<S> {
    /// Numerical null-vector verdict at an explicit relative tolerance,
    /// scaled by the matrix norm (the largest singular value).
    pub fn has_null_vector_at(&self, rel_tol: S) -> bool {
        self.sigma_min <= rel_tol * self.singular_values[0]
    }

    /// Verdict at the default [`NULL_DECISION_REL_TOL`].
    pub fn has_null_vector(&self) -> bool {
        self.has_null_vector_at(S::of(NULL_DECISION_REL_TOL))
    }
}

/// Full singular spectrum of a general matrix.
pub fn spectrum<S: Real>(mat: &Mat<S>) -> Result<SpectrumReport<S>> {
    if !mat.is_finite() {
        return Err(Error::NonfiniteEntry);
    }
    let svd = jacobi_svd(mat);
    let keep = mat.rows().min(mat.cols());
    let singular_values: Vec<S> = svd.singular_values[..keep].to_vec();
    let sigma_min = singular_values[keep - 1];
    let null_candidate: Vec<S> = (0..mat.cols()).map(|i| svd.v[(i, keep - 1)]).collect();
    let residual_norm = norm(&mat.matvec(&null_candidate));
    debug_assert!(
        residual_norm
            <= sigma_min * (S::one() + S::of(1e-10))
                + S::of(16.0) * S::epsilon() * mat.frobenius_norm(),
        "null candidate residual inconsistent with sigma_min"
    );
    Ok(SpectrumReport {
        singular_values,
        sigma_min,
        null_candidate,
        residual_norm,
    })
}

/// Spectrum of a sphere system.
pub fn sphere_spectrum<S: Real>(system: &SphereSystemMatrix<S>) -> SpectrumReport<S> {
    spectrum(system.matrix()).expect("sphere system entries are finite")
}

/// Max deviation over `i` of the inner-product identity
/// `⟨2y_i, Σ_{j≠i} v_j (y_i−y_j)/d_ij^3⟩ = Σ_{j≠i} v_j/d_ij`
/// on unit-sphere points. Exact for every `v`, so the returned value is
/// rounding noise only.
pub fn sphere_inner_identity_check<S: Real>(sphere: &SphereConfig<S>, v: &[S]) -> Result<S> {
    if v.len() != sphere.p() {
        return Err(Error::DimensionMismatch {
            expected: sphere.p(),
            found: v.len(),
        });
    }
    let p = sphere.p();
    let dim = sphere.m() + 1;
    let two = S::of(2.0);
    let mut worst = S::zero();
    for i in 0..p {
        let yi = sphere.point(i);
        let mut lhs_vec = vec![S::zero(); dim];
        let mut rhs = S::zero();
        for j in 0..p {
            if j == i {
                continue;
            }
            let yj = sphere.point(j);
            let d = dist(yi, yj);
            let inv3 = S::one() / (d * d * d);
            for c in 0..dim {
                lhs_vec[c] = lhs_vec[c] + v[j] * (yi[c] - yj[c]) * inv3;
            }
            rhs = rhs + v[j] / d;
        }
        let dev = (two * dot(yi, &lhs_vec) - rhs).abs();
        if dev > worst {
            worst = dev;
        }
    }
    Ok(worst)
}

/// Max deviations of the three Kelvin-transform identities.
#[derive(Debug, Clone, Copy)]
pub struct KelvinIdentityDeviations<S> {
    /// Scalar residual identity.
    pub scalar: S,
    /// Vector residual identity.
    pub vector: S,
    /// Combined identity producing the sphere-system form.
    pub combined: S,
}

/// Check the three exact identities relating the critical residuals at
/// `(config, u)` to the transformed quantities `y_i' = (x_i−N)/|x_i−N|²`,
/// `v_i = |y_i'| u_i`:
///
/// - (A) `r1_i = |y_i'| Σ_{j≠i} v_j/|y_i'−y_j'|`
/// - (B) `r2_i = |y_i'| u_i Σ_{j≠i} v_j (y_i'|y_j'|² − y_j'|y_i'|²)/|y_i'−y_j'|³`
/// - (C) `u_i y_i' r1_i + r2_i − 2 y_i' ⟨r2_i, y_i'⟩/|y_i'|²
///        = |y_i'|² v_i Σ_{j≠i} v_j (y_i'−y_j')/|y_i'−y_j'|³`
///
/// Returns the max absolute deviation of each identity over `i`.
pub fn kelvin_identity_check<S: Real>(
    config: &PointConfig<S>,
    u: &[S],
    center: &[S],
) -> Result<KelvinIdentityDeviations<S>> {
    if u.len() != config.p() {
        return Err(Error::DimensionMismatch {
            expected: config.p(),
            found: u.len(),
        });
    }
    if center.len() != config.m() {
        return Err(Error::DimensionMismatch {
            expected: config.m(),
            found: center.len(),
        });
    }
    let guard = S::of(crate::geometry::KELVIN_GUARD_REL) * config.diameter();
    for i in 0..config.p() {
        if dist(config.point(i), center) < guard {
            return Err(Error::CenterTooClose);
        }
    }

    let p = config.p();
    let m = config.m();
    let res = critical_residuals(config, u)?;

    // Transformed points y' and weights v.
    let yprime: Vec<Vec<S>> = (0..p)
        .map(|i| {
            let xi = config.point(i);
            let mut sq = S::zero();
            for c in 0..m {
                let d = xi[c] - center[c];
                sq = sq + d * d;
            }
            xi.iter()
                .zip(center.iter())
                .map(|(&x, &n)| (x - n) / sq)
                .collect()
        })
        .collect();
    let ynorm: Vec<S> = yprime.iter().map(|y| norm(y)).collect();
    let v: Vec<S> = (0..p).map(|i| ynorm[i] * u[i]).collect();

    let two = S::of(2.0);
    let mut dev = KelvinIdentityDeviations {
        scalar: S::zero(),
        vector: S::zero(),
        combined: S::zero(),
    };

    for i in 0..p {
        let yi = &yprime[i];
        let ni = ynorm[i];

        let mut sum_a = S::zero();
        let mut sum_b = vec![S::zero(); m];
        let mut sum_c = vec![S::zero(); m];
        for j in 0..p {
            if j == i {
                continue;
            }
            let yj = &yprime[j];
            let nj = ynorm[j];
            let dy = dist(yi, yj);
            let inv3 = S::one() / (dy * dy * dy);
            sum_a = sum_a + v[j] / dy;
            for c in 0..m {
                sum_b[c] = sum_b[c] + v[j] * (yi[c] * nj * nj - yj[c] * ni * ni) * inv3;
                sum_c[c] = sum_c[c] + v[j] * (yi[c] - yj[c]) * inv3;
            }
        }

        // (A)
        let da = (res.r1[i] - ni * sum_a).abs();
        if da > dev.scalar {
            dev.scalar = da;
        }

        // (B)
        let mut db = S::zero();
        for c in 0..m {
            let diff = res.r2[i][c] - ni * u[i] * sum_b[c];
            db = db + diff * diff;
        }
        let db = db.sqrt();
        if db > dev.vector {
            dev.vector = db;
        }

        // (C)
        let r2_dot_y = dot(&res.r2[i], yi);
        let mut dc = S::zero();
        for c in 0..m {
            let lhs = u[i] * yi[c] * res.r1[i] + res.r2[i][c] - two * yi[c] * r2_dot_y / (ni * ni);
            let rhs = ni * ni * v[i] * sum_c[c];
            let diff = lhs - rhs;
            dc = dc + diff * diff;
        }
        let dc = dc.sqrt();
        if dc > dev.combined {
            dev.combined = dc;
        }
    }
    Ok(dev)
}

/// Residuals of the point-at-infinity system: `p−1` finite points carry the
/// first `p−1` weights, the infinite point's weight `v_p` enters the scalar
/// rows additively.
pub fn infinity_residuals<S: Real>(points: &[Vec<S>], v: &[S]) -> Result<(Vec<S>, Vec<Vec<S>>)> {
    let n = points.len();
    if v.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            found: v.len(),
        });
    }
    let config = PointConfig::new(points.to_vec())?;
    let m = config.m();
    let vp = v[n];
    let mut r1 = vec![S::zero(); n];
    let mut r2 = vec![vec![S::zero(); m]; n];
    for i in 0..n {
        let yi = config.point(i);
        let mut sum1 = S::zero();
        let mut sum2 = vec![S::zero(); m];
        for j in 0..n {
            if j == i {
                continue;
            }
            let yj = config.point(j);
            let d = dist(yi, yj);
            sum1 = sum1 + v[j] / d;
            let inv3 = S::one() / (d * d * d);
            for c in 0..m {
                sum2[c] = sum2[c] + v[j] * (yi[c] - yj[c]) * inv3;
            }
        }
        r1[i] = sum1 + vp;
        for c in 0..m {
            r2[i][c] = v[i] * sum2[c];
        }
    }
    Ok((r1, r2))
}

/// The augmented quotient whose infimum over unit `(u, ũ_p)` is the
/// inductive quantity `c₁`: the sup form on `p−1` finite points with the
/// `p`-th point at infinity contributing `ũ_p` to the scalar rows and
/// `ũ_p²` to the denominator.
pub fn augmented_ratio<S: Real>(points: &[Vec<S>], u: &[S], up_tilde: S) -> Result<S> {
    let n = points.len();
    if u.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: u.len(),
        });
    }
    if u.iter().all(|&x| x == S::zero()) && up_tilde == S::zero() {
        return Err(Error::ZeroWeights);
    }
    let config = PointConfig::new(points.to_vec())?;
    let m = config.m();
    let two = S::of(2.0);

    let mut numerator = S::zero();
    let mut sup = S::zero();
    let mut denom = up_tilde * up_tilde;
    for i in 0..n {
        let xi = config.point(i);
        let mut sum1 = S::zero();
        let mut sum2 = vec![S::zero(); m];
        for j in 0..n {
            if j == i {
                continue;
            }
            let xj = config.point(j);
            let d = dist(xi, xj);
            sum1 = sum1 + u[j] / d;
            denom = denom + u[j] * u[j] / (d * d);
            let inv3 = S::one() / (d * d * d);
            for c in 0..m {
                sum2[c] = sum2[c] + u[j] * (xi[c] - xj[c]) * inv3;
            }
        }
        let row = sum1 + up_tilde;
        numerator = numerator + row * row;
        let t = (u[i] * norm(&sum2)).abs();
        if t > sup {
            sup = t;
        }
    }
    Ok((numerator + two * sup) / denom)
}

/// The skew sign matrix `C` with `+1` above the diagonal, its exact
/// determinant, and its rank over the rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct SignMatrix {
    pub p: usize,
    pub c: Vec<Vec<i64>>,
    pub det: i128,
    pub rank: usize,
}

/// Build the sign matrix and compute `det`/`rank` exactly by fraction-free
/// (Bareiss) elimination over the integers.
pub fn sign_matrix(p: usize) -> Result<SignMatrix> {
    if p < 2 {
        return Err(Error::TooFewPoints { found: p, min: 2 });
    }
    let c: Vec<Vec<i64>> = (0..p)
        .map(|k| {
            (0..p)
                .map(|s| match s.cmp(&k) {
                    std::cmp::Ordering::Greater => 1,
                    std::cmp::Ordering::Less => -1,
                    std::cmp::Ordering::Equal => 0,
                })
                .collect()
        })
        .collect();
    let mut work: Vec<Vec<i128>> = c
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let (det, rank) = bareiss(&mut work)?;
    Ok(SignMatrix { p, c, det, rank })
}

/// Fraction-free Gaussian elimination: exact determinant (0 when singular)
/// and rank of a square integer matrix. Partial pivoting by first nonzero;
/// row swaps flip the determinant sign.
fn bareiss(a: &mut [Vec<i128>]) -> Result<(i128, usize)> {
    let n = a.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..n {
        // Pivot search in this column at or below `row`.
        let Some(pivot) = (row..n).find(|&r| a[r][col] != 0) else {
            continue;
        };
        if pivot != row {
            a.swap(pivot, row);
            sign = -sign;
        }
        for r in 0..n {
            if r == row {
                continue;
            }
            for ccol in 0..n {
                if ccol == col {
                    continue;
                }
                let lhs = a[row][col]
                    .checked_mul(a[r][ccol])
                    .ok_or(Error::DeterminantOverflow)?;
                let rhs = a[r][col]
                    .checked_mul(a[row][ccol])
                    .ok_or(Error::DeterminantOverflow)?;
                let num = lhs.checked_sub(rhs).ok_or(Error::DeterminantOverflow)?;
                a[r][ccol] = num / prev;
            }
            a[r][col] = 0;
        }
        prev = a[row][col];
        rank += 1;
        row += 1;
        if row == n {
            break;
        }
    }
    let det = if rank == n { sign * prev } else { 0 };
    Ok((det, rank))
}

/// Sphere system for points `y_k = (cos α_k, sin α_k)` on the unit circle.
///
/// Chord lengths are evaluated trigonometrically as
/// `2 sin((α_k−α_j)/2)` (for `k > j`), a distinct arithmetic route from the
/// Euclidean norms used by [`sphere_system`].
pub fn circle_system<S: Real>(angles: &[S]) -> Result<SphereSystemMatrix<S>> {
    let p = angles.len();
    if p < 2 {
        return Err(Error::TooFewPoints { found: p, min: 2 });
    }
    let tau = S::of(std::f64::consts::TAU);
    for &a in angles {
        if !a.is_finite() || a < S::zero() || a >= tau {
            return Err(Error::AnglesOutOfRange);
        }
    }
    for w in angles.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateAngles);
        }
        if w[0] > w[1] {
            return Err(Error::AnglesNotSorted);
        }
    }

    let two = S::of(2.0);
    let half = S::of(0.5);
    let points: Vec<Vec<S>> = angles.iter().map(|&a| vec![a.cos(), a.sin()]).collect();
    let mut mat = Mat::zeros(p * 2, p);
    for k in 0..p {
        for j in 0..p {
            if j == k {
                continue;
            }
            let chord = two * (((angles[k] - angles[j]) * half).sin()).abs();
            let inv3 = S::one() / (chord * chord * chord);
            for c in 0..2 {
                mat[(k * 2 + c, j)] = (points[k][c] - points[j][c]) * inv3;
            }
        }
    }
    Ok(SphereSystemMatrix { p, m: 1, mat })
}

/// Unit-circle configuration for sorted angles (validation as in
/// [`circle_system`]).
pub fn circle_config<S: Real>(angles: &[S]) -> Result<SphereConfig<S>> {
    // Reuse the angle validation.
    circle_system(angles)?;
    SphereConfig::new(angles.iter().map(|&a| vec![a.cos(), a.sin()]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn cfg(points: &[&[f64]]) -> PointConfig<f64> {
        PointConfig::new(points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn critical_residuals_p2() {
        let c = cfg(&[&[0.0], &[1.0]]);
        let r = critical_residuals(&c, &[1.0, 0.0]).unwrap();
        assert_eq!(r.r1, vec![0.0, 1.0]);
        assert_eq!(r.r2, vec![vec![0.0], vec![0.0]]);

        let r = critical_residuals(&c, &[1.0, -1.0]).unwrap();
        assert_eq!(r.r1, vec![-1.0, 1.0]);
        assert_eq!(r.r2, vec![vec![1.0], vec![-1.0]]);

        let r = critical_residuals(&c, &[0.0, 0.0]).unwrap();
        assert_eq!(r.total_norm(), 0.0);
    }

    #[test]
    fn sphere_system_antipodal() {
        let sphere: SphereConfig<f64> =
            SphereConfig::new(vec![vec![1.0, 0.0], vec![-1.0, 0.0]]).unwrap();
        let sys = sphere_system(&sphere);
        assert_eq!(sys.block(0, 1), vec![0.25, 0.0]);
        assert_eq!(sys.block(1, 0), vec![-0.25, 0.0]);
        assert_eq!(sys.block(0, 0), vec![0.0, 0.0]);
        let spec = sphere_spectrum(&sys);
        assert!((spec.sigma_min - 0.25).abs() < 1e-15);
        assert!((spec.singular_values[0] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn sphere_system_equilateral_constant_vector_not_null() {
        let angles: Vec<f64> = (0..3).map(|k| k as f64 * 2.0 * PI / 3.0).collect();
        let sphere = circle_config(&angles).unwrap();
        let sys = sphere_system(&sphere);
        let res = sys.residuals(&[1.0, 1.0, 1.0]);
        // Block i residual is y_i/sqrt(3).
        let inv_sqrt3 = 1.0 / 3.0f64.sqrt();
        for i in 0..3 {
            let y = sphere.point(i);
            assert!((res[2 * i] - y[0] * inv_sqrt3).abs() < 1e-14);
            assert!((res[2 * i + 1] - y[1] * inv_sqrt3).abs() < 1e-14);
        }
    }

    #[test]
    fn spectrum_trivia() {
        let spec = spectrum(&Mat::<f64>::identity(3)).unwrap();
        assert_eq!(spec.singular_values, vec![1.0, 1.0, 1.0]);

        let spec = spectrum(&Mat::<f64>::zeros(2, 2)).unwrap();
        assert_eq!(spec.sigma_min, 0.0);
        assert_eq!(spec.residual_norm, 0.0);
        assert!((crate::scalar::norm(&spec.null_candidate) - 1.0).abs() < 1e-15);

        let mut bad = Mat::<f64>::zeros(1, 1);
        bad[(0, 0)] = f64::NAN;
        assert_eq!(spectrum(&bad).unwrap_err(), Error::NonfiniteEntry);
    }

    #[test]
    fn inner_identity_examples() {
        let sphere: SphereConfig<f64> =
            SphereConfig::new(vec![vec![1.0, 0.0], vec![-1.0, 0.0]]).unwrap();
        assert!(sphere_inner_identity_check(&sphere, &[1.0, 0.0]).unwrap() <= 1e-14);

        let angles: Vec<f64> = (0..3).map(|k| k as f64 * 2.0 * PI / 3.0).collect();
        let sphere = circle_config(&angles).unwrap();
        assert!(sphere_inner_identity_check(&sphere, &[1.0, -2.0, 1.0]).unwrap() <= 1e-13);
    }

    #[test]
    fn kelvin_identities_examples() {
        let c = cfg(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let dev = kelvin_identity_check(&c, &[1.0, 1.0], &[0.0, 1.0]).unwrap();
        assert!(dev.scalar <= 1e-13, "A: {}", dev.scalar);
        assert!(dev.vector <= 1e-13, "B: {}", dev.vector);
        assert!(dev.combined <= 1e-13, "C: {}", dev.combined);

        let dev = kelvin_identity_check(&c, &[0.0, 0.0], &[0.0, 1.0]).unwrap();
        assert_eq!(dev.scalar, 0.0);
        assert_eq!(dev.vector, 0.0);
        assert_eq!(dev.combined, 0.0);

        let too_close = kelvin_identity_check(&c, &[1.0, 1.0], &[1.0, 1e-12]);
        assert_eq!(too_close.unwrap_err(), Error::CenterTooClose);
    }

    #[test]
    fn infinity_residual_examples() {
        let pts: Vec<Vec<f64>> = vec![vec![0.0], vec![1.0], vec![2.0]];
        let (r1, _r2) = infinity_residuals(&pts, &[1.0, 1.0, 1.0, -1.5]).unwrap();
        assert!(r1[0].abs() < 1e-15);

        let pts = vec![vec![0.0], vec![1.0]];
        let (r1, r2) = infinity_residuals(&pts, &[1.0, 0.0, -1.0]).unwrap();
        assert_eq!(r1[0], -1.0);
        assert_eq!(r2[0], vec![0.0]);

        let (r1, r2) = infinity_residuals(&pts, &[0.0, 0.0, 0.0]).unwrap();
        assert!(r1.iter().all(|&x| x == 0.0));
        assert!(r2.iter().all(|v| v.iter().all(|&x| x == 0.0)));
    }

    #[test]
    fn augmented_ratio_examples() {
        let pts: Vec<Vec<f64>> = vec![vec![0.0], vec![1.0]];
        let v = augmented_ratio(&pts, &[1.0, 0.0], 0.0).unwrap();
        assert_eq!(v, 1.0);

        let v = augmented_ratio(&pts, &[1.0, 1.0], -1.0).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-15);

        // Degree-0 homogeneity in (u, ũ).
        let a = augmented_ratio(&pts, &[0.3, -0.7], 0.4).unwrap();
        let b = augmented_ratio(&pts, &[0.9, -2.1], 1.2).unwrap();
        assert!((a - b).abs() < 1e-14);

        assert_eq!(
            augmented_ratio(&pts, &[0.0, 0.0], 0.0).unwrap_err(),
            Error::ZeroWeights
        );
    }

    #[test]
    fn sign_matrix_small_cases() {
        let s = sign_matrix(2).unwrap();
        assert_eq!(s.c, vec![vec![0, 1], vec![-1, 0]]);
        assert_eq!(s.det, 1);
        assert_eq!(s.rank, 2);

        let s = sign_matrix(4).unwrap();
        assert_eq!(s.det, 1);
        assert_eq!(s.rank, 4);

        let s = sign_matrix(5).unwrap();
        assert_eq!(s.det, 0);
        assert_eq!(s.rank, 4);
    }

    #[test]
    fn sign_matrix_skew_structure() {
        let s = sign_matrix(6).unwrap();
        for k in 0..6 {
            assert_eq!(s.c[k][k], 0);
            for j in 0..6 {
                assert_eq!(s.c[k][j], -s.c[j][k]);
                assert!(s.c[k][j].abs() <= 1);
            }
        }
    }

    #[test]
    fn circle_system_matches_sphere_system() {
        let angles = [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2];
        let via_circle = circle_system(&angles).unwrap();
        let via_sphere = sphere_system(&circle_config(&angles).unwrap());
        for r in 0..8 {
            for c in 0..4 {
                let a = via_circle.matrix()[(r, c)];
                let b = via_sphere.matrix()[(r, c)];
                assert!(
                    (a - b).abs() <= 1e-14 * (1.0 + a.abs()),
                    "({r},{c}): {a} vs {b}"
                );
            }
        }

        let anti = circle_system(&[0.0, PI]).unwrap();
        let block = anti.block(0, 1);
        assert!((block[0] - 0.25).abs() < 1e-15);
        assert!(block[1].abs() < 1e-15); // sin(pi) rounding only
    }

    #[test]
    fn circle_system_chords_and_validation() {
        let angles: Vec<f64> = (0..3).map(|k| k as f64 * 2.0 * PI / 3.0).collect();
        let sphere = circle_config(&angles).unwrap();
        let want = 3.0f64.sqrt();
        for i in 0..3 {
            for j in (i + 1)..3 {
                let d = crate::scalar::dist(sphere.point(i), sphere.point(j));
                assert!((d - want).abs() < 1e-12);
            }
        }

        assert_eq!(
            circle_system(&[1.0, 0.5]).unwrap_err(),
            Error::AnglesNotSorted
        );
        assert_eq!(
            circle_system(&[0.5, 0.5]).unwrap_err(),
            Error::DuplicateAngles
        );
        assert_eq!(
            circle_system(&[0.0, 7.0]).unwrap_err(),
            Error::AnglesOutOfRange
        );
    }

    #[test]
    fn null_verdict_thresholding() {
        // Identity: sigma_min equals the norm, clearly no null vector.
        let spec = spectrum(&Mat::<f64>::identity(3)).unwrap();
        assert!(!spec.has_null_vector());
        // Rank-deficient: exact zero singular value.
        let mut mat = Mat::<f64>::zeros(2, 2);
        mat[(0, 0)] = 1.0;
        mat[(0, 1)] = 1.0;
        mat[(1, 0)] = 1.0;
        mat[(1, 1)] = 1.0;
        let spec = spectrum(&mat).unwrap();
        assert!(spec.has_null_vector());
        // Threshold is explicit: loosening it flips a healthy verdict.
        let spec = spectrum(&Mat::<f64>::identity(2)).unwrap();
        assert!(spec.has_null_vector_at(1.5));
    }

    #[test]
    fn square_sigma_min_frozen_regression() {
        // Dense SVD oracle value for the square on the circle, frozen;
        // algebraically (2*sqrt(2) - 1)/4.
        let angles: Vec<f64> = (0..4).map(|k| k as f64 * FRAC_PI_2).collect();
        let spec = sphere_spectrum(&circle_system(&angles).unwrap());
        assert!((spec.sigma_min - 0.4571067811865477).abs() < 1e-15);
        assert!((spec.sigma_min - (2.0 * 2.0f64.sqrt() - 1.0) / 4.0).abs() < 1e-12);
    }

    #[test]
    fn zero_component_deletion_is_exact() {
        let c = cfg(&[&[0.0, 0.0], &[1.0, 0.2], &[2.5, -0.3], &[0.4, 1.9]]);
        let u = [0.7, 0.0, -1.3, 0.5];
        let full = critical_residuals(&c, &u).unwrap();
        let deleted_cfg = cfg(&[&[0.0, 0.0], &[2.5, -0.3], &[0.4, 1.9]]);
        let deleted = critical_residuals(&deleted_cfg, &[0.7, -1.3, 0.5]).unwrap();
        let keep = [0usize, 2, 3];
        for (slot, &i) in keep.iter().enumerate() {
            assert_eq!(full.r1[i], deleted.r1[slot]);
            assert_eq!(full.r2[i], deleted.r2[slot]);
        }
    }
}
