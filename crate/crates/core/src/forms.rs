//! The two quadratic forms of the inequality and their derivatives.
//!
//! For a configuration `x_1,…,x_p` and weights `U`, the left side is
//!
//! ```text
//! I1 = |AU|^2 + sup_i |U^T (∂A/∂x_i) U|
//!    = Σ_i |Σ_{j≠i} u_j/d_ij|^2 + 2 sup_i |u_i Σ_{j≠i} u_j (x_i−x_j)/d_ij^3|
//! ```
//!
//! and the right side is `I2 = Σ_{i≠j} u_j^2/d_ij^2`. The second line avoids
//! assembling the gradient tensor and is the evaluation path; the first line
//! is kept as an independent route through [`i1_via_gradient_tensor`] and
//! cross-checked in debug builds on every call.

use crate::error::{Error, Result};
use crate::geometry::PointConfig;
use crate::linalg::Mat;
use crate::scalar::{dot, norm, Real};

/// Interaction matrix `a_ij = 1/|x_i − x_j|` (zero diagonal) together with
/// its gradient tensor `∂a_ij/∂x_k`.
#[derive(Debug, Clone)]
pub struct InteractionMatrix<S> {
    pub a: Mat<S>,
    pub grad: GradTensor<S>,
}

impl<S: Real> InteractionMatrix<S> {
    pub fn assemble(config: &PointConfig<S>) -> Self {
        InteractionMatrix {
            a: interaction_matrix(config),
            grad: interaction_gradient(config),
        }
    }
}

/// Gradient tensor: `entry(k, i, j)` is the `m`-vector `∂a_ij/∂x_k`.
///
/// Nonzero only for `k ∈ {i, j}`, `i ≠ j`:
/// `∂a_ij/∂x_i = −(x_i−x_j)/d_ij^3` and `∂a_ij/∂x_j = +(x_i−x_j)/d_ij^3`.
#[derive(Debug, Clone)]
pub struct GradTensor<S> {
    p: usize,
    m: usize,
    data: Vec<S>,
}

impl<S: Real> GradTensor<S> {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entry(&self, k: usize, i: usize, j: usize) -> &[S] {
        let base = ((k * self.p + i) * self.p + j) * self.m;
        &self.data[base..base + self.m]
    }
}

/// Matrix part: `a_ij = 1/|x_i − x_j|`, zero diagonal.
pub fn interaction_matrix<S: Real>(config: &PointConfig<S>) -> Mat<S> {
    let p = config.p();
    let mut a = Mat::zeros(p, p);
    for i in 0..p {
        for j in (i + 1)..p {
            let inv = S::one() / crate::scalar::dist(config.point(i), config.point(j));
            a[(i, j)] = inv;
            a[(j, i)] = inv;
        }
    }
    a
}

/// Gradient part of the interaction matrix.
pub fn interaction_gradient<S: Real>(config: &PointConfig<S>) -> GradTensor<S> {
    let p = config.p();
    let m = config.m();
    let mut data = vec![S::zero(); p * p * p * m];
    for i in 0..p {
        for j in 0..p {
            if i == j {
                continue;
            }
            let xi = config.point(i);
            let xj = config.point(j);
            let d = crate::scalar::dist(xi, xj);
            let inv3 = S::one() / (d * d * d);
            for c in 0..m {
                let g = (xi[c] - xj[c]) * inv3;
                // k = i block.
                data[((i * p + i) * p + j) * m + c] = -g;
                // k = j block.
                data[((j * p + i) * p + j) * m + c] = g;
            }
        }
    }
    GradTensor { p, m, data }
}

/// Evaluation of both sides at one `(config, weights)` pair.
#[derive(Debug, Clone)]
pub struct FormsEvaluation<S> {
    pub i1: S,
    pub i2: S,
    pub ratio: S,
    /// 1-based index attaining the sup (smallest on ties).
    pub sup_index: usize,
    /// The sup term of `I1`, i.e. `sup_i |U^T (∂A/∂x_i) U|`.
    pub sup_value: S,
    /// The vector `AU`.
    pub au: Vec<S>,
}

/// Precomputed per-configuration quantities shared by the forms evaluation
/// and the optimizers: inverse distances, their squares, the direction
/// weights `(x_i−x_j)/d_ij^3`, and the column sums of `1/d^2`.
#[derive(Debug, Clone)]
pub struct Kernel<S> {
    p: usize,
    m: usize,
    inv_d: Mat<S>,
    /// `w[(i·p + j)·m ..][..m]` = `(x_i−x_j)/d_ij^3`; zero for `i = j`.
    w: Vec<S>,
    /// `col_inv2[j] = Σ_{i≠j} 1/d_ij^2`.
    col_inv2: Vec<S>,
}

impl<S: Real> Kernel<S> {
    pub fn new(config: &PointConfig<S>) -> Self {
        let p = config.p();
        let m = config.m();
        let mut inv_d = Mat::zeros(p, p);
        let mut w = vec![S::zero(); p * p * m];
        let mut col_inv2 = vec![S::zero(); p];
        for i in 0..p {
            for j in 0..p {
                if i == j {
                    continue;
                }
                let xi = config.point(i);
                let xj = config.point(j);
                let d = crate::scalar::dist(xi, xj);
                let inv = S::one() / d;
                inv_d[(i, j)] = inv;
                col_inv2[j] = col_inv2[j] + inv * inv;
                let inv3 = inv * inv * inv;
                for c in 0..m {
                    w[(i * p + j) * m + c] = (xi[c] - xj[c]) * inv3;
                }
            }
        }
        Kernel {
            p,
            m,
            inv_d,
            w,
            col_inv2,
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn w_entry(&self, i: usize, j: usize) -> &[S] {
        &self.w[(i * self.p + j) * self.m..(i * self.p + j + 1) * self.m]
    }

    /// Direction weight `(x_i−x_j)/d_ij^3`.
    pub fn direction_weight(&self, i: usize, j: usize) -> &[S] {
        self.w_entry(i, j)
    }

    /// `AU`.
    pub fn au(&self, u: &[S]) -> Vec<S> {
        self.inv_d.matvec(u)
    }

    /// `s_i(u) = Σ_{j≠i} u_j (x_i−x_j)/d_ij^3`.
    pub fn gradient_sum(&self, i: usize, u: &[S]) -> Vec<S> {
        let mut s = vec![S::zero(); self.m];
        for j in 0..self.p {
            if j == i {
                continue;
            }
            let w = self.w_entry(i, j);
            for c in 0..self.m {
                s[c] = s[c] + u[j] * w[c];
            }
        }
        s
    }

    /// `I2(u) = Σ_{i≠j} u_j^2/d_ij^2`.
    pub fn i2(&self, u: &[S]) -> S {
        let mut acc = S::zero();
        for j in 0..self.p {
            acc = acc + u[j] * u[j] * self.col_inv2[j];
        }
        acc
    }

    /// Gradient of `I2`.
    pub fn i2_gradient(&self, u: &[S]) -> Vec<S> {
        let two = S::of(2.0);
        (0..self.p).map(|j| two * u[j] * self.col_inv2[j]).collect()
    }
}

fn check_weights<S: Real>(p: usize, u: &[S]) -> Result<()> {
    if u.len() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            found: u.len(),
        });
    }
    if u.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonfiniteEntry);
    }
    if u.iter().all(|&x| x == S::zero()) {
        return Err(Error::ZeroWeights);
    }
    Ok(())
}

/// Evaluate `I1`, `I2`, their ratio, and the active sup index.
pub fn eval_forms<S: Real>(config: &PointConfig<S>, u: &[S]) -> Result<FormsEvaluation<S>> {
    check_weights(config.p(), u)?;
    let kernel = Kernel::new(config);
    let ev = eval_forms_kernel(&kernel, u);
    #[cfg(debug_assertions)]
    {
        let alt = i1_via_gradient_tensor(config, u)?;
        let denom = ev.i1.abs().max(alt.abs()).max(S::of(1e-300));
        debug_assert!(
            ((ev.i1 - alt) / denom).abs() <= S::of(1e-12),
            "form route disagreement: {:?} vs {:?}",
            ev.i1,
            alt
        );
    }
    Ok(ev)
}

/// Evaluation path over a prebuilt [`Kernel`] (no validation).
pub fn eval_forms_kernel<S: Real>(kernel: &Kernel<S>, u: &[S]) -> FormsEvaluation<S> {
    let p = kernel.p();
    let au = kernel.au(u);
    let au_sq = dot(&au, &au);

    let two = S::of(2.0);
    let mut sup_value = S::neg_infinity();
    let mut sup_index = 0usize;
    for i in 0..p {
        let s = kernel.gradient_sum(i, u);
        let t = two * (u[i] * norm(&s)).abs();
        if t > sup_value {
            sup_value = t;
            sup_index = i;
        }
    }

    let i1 = au_sq + sup_value;
    let i2 = kernel.i2(u);
    FormsEvaluation {
        i1,
        i2,
        ratio: i1 / i2,
        sup_index: sup_index + 1,
        sup_value,
        au,
    }
}

/// Independent `I1` route: `|AU|^2 + sup_i |U^T (∂A/∂x_i) U|` through the
/// assembled matrix and full gradient tensor contraction.
pub fn i1_via_gradient_tensor<S: Real>(config: &PointConfig<S>, u: &[S]) -> Result<S> {
    check_weights(config.p(), u)?;
    let p = config.p();
    let m = config.m();
    let a = interaction_matrix(config);
    let grad = interaction_gradient(config);

    let au = a.matvec(u);
    let au_sq = dot(&au, &au);

    let mut sup = S::neg_infinity();
    for k in 0..p {
        let mut contracted = vec![S::zero(); m];
        for i in 0..p {
            for j in 0..p {
                let g = grad.entry(k, i, j);
                for c in 0..m {
                    contracted[c] = contracted[c] + u[i] * u[j] * g[c];
                }
            }
        }
        let t = norm(&contracted);
        if t > sup {
            sup = t;
        }
    }
    Ok(au_sq + sup)
}

/// Subgradient of `u ↦ I1(u)/I2(u)`.
///
/// The smooth parts are differentiated exactly; the sup term contributes
/// through the active index (smallest on ties) with direction
/// `g/|g|`, and `0` when the active bilinear vector vanishes. At points of
/// differentiability this is the gradient.
pub fn ratio_subgradient<S: Real>(config: &PointConfig<S>, u: &[S]) -> Result<Vec<S>> {
    check_weights(config.p(), u)?;
    let kernel = Kernel::new(config);
    Ok(ratio_subgradient_kernel(&kernel, u))
}

/// Gradient of the smoothed ratio, where the sup term is replaced by the
/// temperature-`temp` log-sum-exp overbound `T ln Σ exp(x_i/T)` of the per
/// index terms `x_i = |U^T (∂A/∂x_i) U|`.
///
/// Used as a step direction only; values are always reported with the exact
/// sup.
pub fn soft_ratio_gradient_kernel<S: Real>(kernel: &Kernel<S>, u: &[S], temp: S) -> Vec<S> {
    let p = kernel.p();
    let two = S::of(2.0);

    let au = kernel.au(u);
    let i2 = kernel.i2(u);
    let mut grad_i1 = kernel.au(&au);
    for g in grad_i1.iter_mut() {
        *g = two * *g;
    }

    let sums: Vec<Vec<S>> = (0..p).map(|i| kernel.gradient_sum(i, u)).collect();
    let terms: Vec<S> = (0..p)
        .map(|i| two * (u[i] * norm(&sums[i])).abs())
        .collect();
    let top = terms.iter().cloned().fold(S::neg_infinity(), S::max);
    let weights: Vec<S> = terms.iter().map(|&x| ((x - top) / temp).exp()).collect();
    let wsum = weights.iter().fold(S::zero(), |a, &b| a + b);
    let smooth_sup = top + temp * wsum.ln();

    for i in 0..p {
        let ga: Vec<S> = sums[i].iter().map(|&c| u[i] * c).collect();
        let ga_norm = norm(&ga);
        if !(ga_norm > S::zero()) {
            continue;
        }
        let w = weights[i] / wsum;
        let dir: Vec<S> = ga.iter().map(|&c| c / ga_norm).collect();
        grad_i1[i] = grad_i1[i] + w * two * dot(&dir, &sums[i]);
        for j in 0..p {
            if j == i {
                continue;
            }
            let wij = kernel.w_entry(i, j);
            grad_i1[j] = grad_i1[j] + w * two * u[i] * dot(&dir, wij);
        }
    }

    let au_sq = dot(&au, &au);
    let i1 = au_sq + smooth_sup;
    let grad_i2 = kernel.i2_gradient(u);
    let inv_i2 = S::one() / i2;
    (0..p)
        .map(|j| (grad_i1[j] - i1 * inv_i2 * grad_i2[j]) * inv_i2)
        .collect()
}

/// Subgradient over a prebuilt [`Kernel`] (no validation).
pub fn ratio_subgradient_kernel<S: Real>(kernel: &Kernel<S>, u: &[S]) -> Vec<S> {
    let p = kernel.p();
    let two = S::of(2.0);

    let au = kernel.au(u);
    let i2 = kernel.i2(u);

    // d|AU|^2/du = 2 A (AU)  (A symmetric).
    let mut grad_i1 = kernel.au(&au);
    for g in grad_i1.iter_mut() {
        *g = two * *g;
    }

    // Active sup index and its bilinear vector.
    let mut sup_value = S::neg_infinity();
    let mut active = 0usize;
    let mut active_sum = vec![S::zero(); kernel.m()];
    let mut au_sq = S::zero();
    for (i, &aui) in au.iter().enumerate() {
        au_sq = au_sq + aui * aui;
        let s = kernel.gradient_sum(i, u);
        let t = two * (u[i] * norm(&s)).abs();
        if t > sup_value {
            sup_value = t;
            active = i;
            active_sum = s;
        }
    }

    // Sup term 2|g_a| with g_a = u_a s_a(u): chain rule through g_a/|g_a|.
    let ga: Vec<S> = active_sum.iter().map(|&c| u[active] * c).collect();
    let ga_norm = norm(&ga);
    if ga_norm > S::zero() {
        let dir: Vec<S> = ga.iter().map(|&c| c / ga_norm).collect();
        // ∂g_a/∂u_a = s_a; ∂g_a/∂u_j = u_a w_aj.
        grad_i1[active] = grad_i1[active] + two * dot(&dir, &active_sum);
        for j in 0..p {
            if j == active {
                continue;
            }
            let w = kernel.w_entry(active, j);
            grad_i1[j] = grad_i1[j] + two * u[active] * dot(&dir, w);
        }
    }

    let i1 = au_sq + sup_value;
    let grad_i2 = kernel.i2_gradient(u);
    let inv_i2 = S::one() / i2;
    (0..p)
        .map(|j| (grad_i1[j] - i1 * inv_i2 * grad_i2[j]) * inv_i2)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(points: &[&[f64]]) -> PointConfig<f64> {
        PointConfig::new(points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    fn tri_side_one() -> PointConfig<f64> {
        cfg(&[&[0.0, 0.0], &[1.0, 0.0], &[0.5, 0.75f64.sqrt()]])
    }

    #[test]
    fn interaction_matrix_values() {
        let a = interaction_matrix(&cfg(&[&[0.0], &[1.0], &[3.0]]));
        let want = [
            [0.0, 1.0, 1.0 / 3.0],
            [1.0, 0.0, 0.5],
            [1.0 / 3.0, 0.5, 0.0],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(a[(i, j)], want[i][j]);
            }
        }

        let a2 = interaction_matrix(&cfg(&[&[0.0], &[1.0]]));
        assert_eq!(a2[(0, 1)], 1.0);
        assert_eq!(a2[(1, 0)], 1.0);
        assert_eq!(a2[(0, 0)], 0.0);
    }

    #[test]
    fn interaction_matrix_scaling_homogeneity() {
        let c = cfg(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 2.0]]);
        let lam = 4.0;
        let scaled = cfg(&[&[0.0, 0.0], &[lam, 0.0], &[0.0, 2.0 * lam]]);
        let a = interaction_matrix(&c);
        let b = interaction_matrix(&scaled);
        for i in 0..3 {
            for j in 0..3 {
                assert!((b[(i, j)] - a[(i, j)] / lam).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn gradient_structure() {
        let c = cfg(&[&[0.0], &[1.0]]);
        let g = interaction_gradient(&c);
        // ∂a_12/∂x_1 = −(x_1−x_2)/d^3 = +1.
        assert_eq!(g.entry(0, 0, 1), &[1.0]);
        assert_eq!(g.entry(1, 0, 1), &[-1.0]);
        // Entries with k ∉ {i,j} are exactly zero.
        let c3 = cfg(&[&[0.0], &[1.0], &[3.0]]);
        let g3 = interaction_gradient(&c3);
        assert_eq!(g3.entry(2, 0, 1), &[0.0]);
        assert_eq!(g3.entry(0, 1, 2), &[0.0]);
        // Antisymmetry in the differentiation point.
        assert_eq!(g3.entry(0, 0, 2)[0], -g3.entry(2, 0, 2)[0]);
    }

    #[test]
    fn eval_forms_p2_axis_weight() {
        let c = cfg(&[&[0.0], &[1.0]]);
        let ev = eval_forms(&c, &[1.0, 0.0]).unwrap();
        assert_eq!(ev.i2, 1.0);
        assert_eq!(ev.sup_value, 0.0);
        assert_eq!(ev.i1, 1.0);
        assert_eq!(ev.ratio, 1.0);
        assert_eq!(ev.au, vec![0.0, 1.0]);
    }

    #[test]
    fn eval_forms_p2_equal_weights() {
        let c = cfg(&[&[0.0], &[1.0]]);
        let ev = eval_forms(&c, &[1.0, 1.0]).unwrap();
        assert_eq!(ev.i2, 2.0);
        assert_eq!(ev.sup_value, 2.0);
        assert_eq!(ev.i1, 4.0);
        assert_eq!(ev.ratio, 2.0);
        assert_eq!(ev.sup_index, 1); // tie resolved to the smallest index
    }

    #[test]
    fn eval_forms_equilateral() {
        let ev = eval_forms(&tri_side_one(), &[1.0, 1.0, 1.0]).unwrap();
        assert!((ev.i2 - 6.0).abs() < 1e-12);
        let au_sq: f64 = ev.au.iter().map(|x| x * x).sum();
        assert!((au_sq - 12.0).abs() < 1e-12);
        assert!((ev.sup_value - 2.0 * 3.0f64.sqrt()).abs() < 1e-12);
        let want = 2.0 + 3.0f64.sqrt() / 3.0;
        assert!((ev.ratio - want).abs() < 1e-12, "ratio {}", ev.ratio);
    }

    #[test]
    fn zero_weights_rejected() {
        let c = cfg(&[&[0.0], &[1.0]]);
        assert_eq!(eval_forms(&c, &[0.0, 0.0]).unwrap_err(), Error::ZeroWeights);
        assert_eq!(
            eval_forms(&c, &[1.0]).unwrap_err(),
            Error::DimensionMismatch {
                expected: 2,
                found: 1
            }
        );
        assert_eq!(
            ratio_subgradient(&c, &[0.0, 0.0]).unwrap_err(),
            Error::ZeroWeights
        );
    }

    #[test]
    fn subgradient_p2_axis_point() {
        let c = cfg(&[&[0.0], &[1.0]]);
        let g = ratio_subgradient(&c, &[1.0, 0.0]).unwrap();
        assert_eq!(g[0], 0.0);
    }

    #[test]
    fn subgradient_matches_finite_differences_at_smooth_point() {
        let c = cfg(&[&[0.0, 0.0], &[1.0, 0.1], &[0.4, 1.3]]);
        let u = [0.8, -0.5, 0.9];
        let g = ratio_subgradient(&c, &u).unwrap();
        let h = 1e-7;
        for k in 0..3 {
            let mut up = u;
            let mut dn = u;
            up[k] += h;
            dn[k] -= h;
            let fp = eval_forms(&c, &up).unwrap().ratio;
            let fm = eval_forms(&c, &dn).unwrap().ratio;
            let fd = (fp - fm) / (2.0 * h);
            assert!(
                (fd - g[k]).abs() <= 1e-5 * (1.0 + fd.abs()),
                "k={k}: fd {fd} vs analytic {}",
                g[k]
            );
        }
    }

    #[test]
    fn subgradient_scales_inversely_under_weight_scaling() {
        let c = cfg(&[&[0.0, 0.0], &[1.0, 0.1], &[0.4, 1.3]]);
        let u = [0.8, -0.5, 0.9];
        let t = 3.0;
        let ut: Vec<f64> = u.iter().map(|&x| t * x).collect();
        let g1 = ratio_subgradient(&c, &u).unwrap();
        let g2 = ratio_subgradient(&c, &ut).unwrap();
        for k in 0..3 {
            assert!((g2[k] - g1[k] / t).abs() < 1e-12 * (1.0 + g1[k].abs()));
        }
    }

    #[test]
    fn f32_evaluation_smoke() {
        let c: PointConfig<f32> = PointConfig::new(vec![vec![0.0f32], vec![1.0]]).unwrap();
        let ev = eval_forms(&c, &[1.0f32, 1.0]).unwrap();
        assert!((ev.ratio - 2.0).abs() < 1e-6);
        // K about -1 sends 1 to -1 + 2/4 = -0.5.
        let image = crate::geometry::kelvin_transform(&c, &[-1.0f32]).unwrap();
        assert!((image.point(1)[0] - (-0.5)).abs() < 1e-6);
    }

    #[test]
    fn both_routes_agree_on_equilateral() {
        let c = tri_side_one();
        let u = [1.0, 1.0, 1.0];
        let via_tensor = i1_via_gradient_tensor(&c, &u).unwrap();
        let via_rewrite = eval_forms(&c, &u).unwrap().i1;
        assert!((via_tensor - via_rewrite).abs() <= 1e-12 * via_tensor.abs());
    }
}
