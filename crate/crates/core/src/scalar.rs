//! Floating-point scalar abstraction: f32 or f64.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FromPrimitive, NumAssign, Signed};

/// Real scalar type the whole crate is generic over.
///
/// Combines the num-traits float interface with what the FFT and linear
/// algebra backends require. `Unit = Self` pins the backend's SIMD unit type
/// so `Complex<T>` is accepted by the complex factorization routines.
pub trait Scalar:
    Float
    + FromPrimitive
    + NumAssign
    + Signed
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
    + rustfft::FftNum
    + faer::traits::RealField<Unit = Self>
{
    /// Shorthand for lossless-enough conversion from `f64` constants.
    fn from_f64_c(v: f64) -> Self {
        Self::from_f64(v).expect("f64 constant representable in scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
