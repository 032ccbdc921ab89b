//! Small dense matrices and a one-sided Jacobi SVD.
//!
//! Every matrix in this crate is tiny (at most a few hundred entries), so a
//! flat row-major `Vec` with hand-written kernels is both simpler and more
//! predictable than pulling in a linear algebra crate. The Jacobi SVD is
//! bit-deterministic: fixed sweep order, no pivoting heuristics.

use crate::scalar::{dot, Real};

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Real> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Mat {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// `self · v`.
    pub fn matvec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn frobenius_norm(&self) -> S {
        dot(&self.data, &self.data).sqrt()
    }

    fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }
}

impl<S: Real> std::ops::Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S: Real> std::ops::IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

/// Full SVD data: singular values descending with matching right singular
/// vectors (columns of `v`).
#[derive(Debug, Clone)]
pub struct Svd<S> {
    pub singular_values: Vec<S>,
    /// Right singular vectors, column `j` pairing with `singular_values[j]`.
    pub v: Mat<S>,
}

/// One-sided Jacobi SVD.
///
/// Returns all `cols` singular values of the input (matrices with fewer rows
/// than columns are implicitly zero-padded, which changes neither the
/// singular values nor the right singular vectors).
pub fn jacobi_svd<S: Real>(m: &Mat<S>) -> Svd<S> {
    let n = m.cols();
    let rows = m.rows().max(n);
    // Work on B = M (padded), orthogonalizing columns; accumulate V.
    let mut b = Mat::zeros(rows, n);
    for i in 0..m.rows() {
        for j in 0..n {
            b[(i, j)] = m[(i, j)];
        }
    }
    let mut v = Mat::<S>::identity(n);
    let eps = S::epsilon();
    let max_sweeps = 64;

    for _ in 0..max_sweeps {
        let mut converged = true;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut app = S::zero();
                let mut aqq = S::zero();
                let mut apq = S::zero();
                for i in 0..rows {
                    let bp = b[(i, p)];
                    let bq = b[(i, q)];
                    app = app + bp * bp;
                    aqq = aqq + bq * bq;
                    apq = apq + bp * bq;
                }
                if apq.abs() <= eps * (app * aqq).sqrt() || apq == S::zero() {
                    continue;
                }
                converged = false;
                // Jacobi rotation zeroing the (p,q) Gram entry.
                let tau = (aqq - app) / (apq + apq);
                let t = if tau >= S::zero() {
                    S::one() / (tau + (S::one() + tau * tau).sqrt())
                } else {
                    -S::one() / (-tau + (S::one() + tau * tau).sqrt())
                };
                let c = S::one() / (S::one() + t * t).sqrt();
                let s = c * t;
                for i in 0..rows {
                    let bp = b[(i, p)];
                    let bq = b[(i, q)];
                    b[(i, p)] = c * bp - s * bq;
                    b[(i, q)] = s * bp + c * bq;
                }
                for i in 0..n {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = c * vp - s * vq;
                    v[(i, q)] = s * vp + c * vq;
                }
            }
        }
        if converged {
            break;
        }
    }

    let mut sigma: Vec<(S, usize)> = (0..n)
        .map(|j| {
            let col = b.column(j);
            (dot(&col, &col).sqrt(), j)
        })
        .collect();
    // Descending by value, stable on the original column index.
    sigma.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));

    let mut vperm = Mat::zeros(n, n);
    for (new_j, &(_, old_j)) in sigma.iter().enumerate() {
        // Canonical sign: first component of largest magnitude is positive.
        let col = v.column(old_j);
        let mut lead = S::zero();
        for &x in &col {
            if x.abs() > lead.abs() {
                lead = x;
            }
        }
        let flip = lead < S::zero();
        for i in 0..n {
            let x = v[(i, old_j)];
            vperm[(i, new_j)] = if flip { -x } else { x };
        }
    }

    Svd {
        singular_values: sigma.into_iter().map(|(s, _)| s).collect(),
        v: vperm,
    }
}
