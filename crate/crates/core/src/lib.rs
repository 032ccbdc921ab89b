//! Numerical toolkit for a universal inverse-distance inequality on point
//! configurations in `R^m`.
//!
//! For `p` distinct points the inequality compares two quadratic forms in a
//! weight vector `U`: the left side combines `|AU|^2` (with `A` the inverse
//! distance interaction matrix) and the largest gradient bilinear term, the
//! right side is the inverse-square weighted form. The crate evaluates both
//! sides, estimates best constants by nonsmooth minimization, builds the
//! equivalent critical and sphere systems together with their singular
//! spectra, and runs seeded searches for near-counterexamples.
//!
//! All numerical kernels are generic over the scalar type through the
//! [`Real`] trait (`f32` or `f64`); concrete `f64` aliases are exported at
//! the crate root. The sign-matrix determinant is computed in exact integer
//! arithmetic and is not scalar-generic.
//!
//! ```
//! use distineq::forms::eval_forms;
//! use distineq::geometry::PointConfig;
//! use distineq::optimize::{min_ratio_over_u, SearchOptions};
//!
//! let triangle = PointConfig::new(vec![
//!     vec![0.0, 0.0],
//!     vec![1.0, 0.0],
//!     vec![0.5, 0.75f64.sqrt()],
//! ])?;
//! let ev = eval_forms(&triangle, &[1.0, 1.0, 1.0])?;
//! assert!((ev.ratio - (2.0 + 3.0f64.sqrt() / 3.0)).abs() < 1e-12);
//!
//! let opts = SearchOptions { seed: 1, ..SearchOptions::default() };
//! let (_, best) = min_ratio_over_u(&triangle, &opts)?;
//! assert!(best < ev.ratio);
//! # Ok::<(), distineq::Error>(())
//! ```

// Index loops mirror the matrix formulas; negated comparisons are NaN guards.
#![allow(clippy::needless_range_loop)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod forms;
pub mod geometry;
pub mod linalg;
pub mod optimize;
pub mod report;
pub mod rng;
pub mod scalar;
pub mod systems;

pub use error::{Error, Result};
pub use scalar::Real;

/// `f64` point configuration.
pub type PointConfig64 = geometry::PointConfig<f64>;
/// `f64` unit-sphere configuration.
pub type SphereConfig64 = geometry::SphereConfig<f64>;
/// `f64` similarity map.
pub type SimilarityMap64 = geometry::SimilarityMap<f64>;
/// `f64` forms evaluation.
pub type FormsEvaluation64 = forms::FormsEvaluation<f64>;
/// `f64` interaction matrix with gradient tensor.
pub type InteractionMatrix64 = forms::InteractionMatrix<f64>;
/// `f64` spectrum report.
pub type SpectrumReport64 = systems::SpectrumReport<f64>;
/// `f64` search options.
pub type SearchOptions64 = optimize::SearchOptions<f64>;
/// `f64` search report.
pub type SearchReport64 = optimize::SearchReport<f64>;
