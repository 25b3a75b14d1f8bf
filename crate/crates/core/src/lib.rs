//! Hankel-tensor robust PCA for multivariate time-series anomaly detection.
//!
//! The library decomposes an `N x T` sensor-by-time matrix into a low-rank
//! component and a sparse anomaly component. Instead of penalizing the matrix
//! rank directly, the low-rank part is constrained through a temporal Hankel
//! delay embedding: the matrix is lifted to an `N x (T-tau+1) x tau` tensor
//! whose tensor nuclear norm (in the t-SVD sense) is minimized. This captures
//! periodic structure that plain matrix RPCA ignores.
//!
//! Modules:
//! - [`tensor`]: third-order tensor algebra under the t-product (mode-3 DFT,
//!   t-product, t-SVD, tensor nuclear norm, singular value thresholding).
//! - [`hankel`]: the delay embedding `H_tau` and its averaging inverse.
//! - [`solvers`]: ADMM solvers `ht_rpca`, `ht_rmc` and the matrix `rpca`
//!   baseline, plus the scalar proximal operators they are built from.
//! - [`synth`]: seeded generator for corrupted periodic benchmark data.
//! - [`eval`]: masked MAE/RMSE, the `xi`-sigma anomaly flag rule, and
//!   cumulative singular-value diagnostics.
//!
//! All numeric code is generic over the scalar type via [`Scalar`]
//! (implemented for `f32` and `f64`); the crate root exports `f64` aliases
//! for the common case.
//!
//! # Example
//!
//! ```
//! use hankel_rpca::solvers::{ht_rpca, ObservationMask, SolverConfig};
//! use hankel_rpca::synth::{gen_synthetic, SynthConfig};
//! use hankel_rpca::eval::masked_errors;
//!
//! // A small periodic dataset with 10% anomalies.
//! let cfg = SynthConfig::<f64> {
//!     n: 10, t: 160, r: 2,
//!     sigma_u: 10.0, sigma_s: 20.0, sigma_noise: 0.1,
//!     anomaly_ratio: 0.1, seed: 1,
//! };
//! let data = gen_synthetic(&cfg).unwrap();
//!
//! // Embed with the slowest period (80 samples) and decompose.
//! let result = ht_rpca(&data.corrupted, &SolverConfig::new(80, 0.02)).unwrap();
//! assert!(result.converged);
//!
//! let full = ObservationMask::full(10, 160);
//! let err = masked_errors(&data.sparse, &result.sparse, &full).unwrap();
//! assert!(err.rmse < 1.0);
//! ```

pub mod error;
pub mod eval;
pub mod hankel;
mod linalg;
pub mod matrix;
pub mod scalar;
pub mod solvers;
pub mod synth;
pub mod tensor;

pub use error::{Error, Result};
pub use matrix::{BoolMatrix, Matrix};
pub use scalar::Scalar;
pub use solvers::{DecompositionResult, ObservationMask, SolverConfig};
pub use tensor::{ComplexTensor3, TSvdResult, Tensor3};

/// `f64` time-series matrix.
pub type Matrix64 = Matrix<f64>;
/// `f64` third-order tensor.
pub type Tensor64 = Tensor3<f64>;
/// `f64` solver configuration.
pub type SolverConfig64 = SolverConfig<f64>;
/// `f32` time-series matrix.
pub type Matrix32 = Matrix<f32>;
/// `f32` third-order tensor.
pub type Tensor32 = Tensor3<f32>;
/// `f32` solver configuration.
pub type SolverConfig32 = SolverConfig<f32>;
