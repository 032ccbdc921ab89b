//! Scalar abstraction for the numerical kernels.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar the toolkit is generic over: `f32` or `f64`.
///
/// Tolerances in this crate are stated for `f64`; with `f32` the algorithms
/// run unchanged but the documented bounds do not apply.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Lift an `f64` constant into the scalar type.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("constant representable in scalar type")
    }

    /// Lossy conversion to `f64` for reporting and serialization.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Euclidean norm of a slice.
pub fn norm<S: Real>(v: &[S]) -> S {
    dot(v, v).sqrt()
}

/// Dot product of two equal-length slices.
pub fn dot<S: Real>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = S::zero();
    for (&x, &y) in a.iter().zip(b.iter()) {
        acc = acc + x * y;
    }
    acc
}

/// Squared Euclidean distance between two points.
pub fn dist_sq<S: Real>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = S::zero();
    for (&x, &y) in a.iter().zip(b.iter()) {
        let d = x - y;
        acc = acc + d * d;
    }
    acc
}

/// Euclidean distance between two points.
pub fn dist<S: Real>(a: &[S], b: &[S]) -> S {
    dist_sq(a, b).sqrt()
}

/// Scale a vector in place.
pub fn scale_in_place<S: Real>(v: &mut [S], s: S) {
    for x in v.iter_mut() {
        *x = *x * s;
    }
}

/// Normalize to unit Euclidean norm; returns `None` for the zero vector.
pub fn normalized<S: Real>(v: &[S]) -> Option<Vec<S>> {
    let n = norm(v);
    if n <= S::zero() || !n.is_finite() {
        return None;
    }
    Some(v.iter().map(|&x| x / n).collect())
}
