//! Dense complex matrices and the small-matrix kernels the rest of the crate
//! is built on: Kronecker products, Hilbert-Schmidt pairings, Hermitian
//! eigenvalues (cyclic Jacobi) and singular values (one-sided Jacobi).
//!
//! Everything here is generic over [`Scalar`], so the same code runs in `f32`
//! and `f64`. The physics layers above use the `f64` aliases from the crate
//! root.

mod eigen;
mod matrix;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, singular_values, HermitianEigen, Spectrum};
pub use matrix::{hs_inner, hs_norm, kron, ComplexMatrix};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display, LowerExp};

/// Real scalar type the numeric core is generic over.
///
/// Implemented for `f32` and `f64`. Tolerances in the physics modules are
/// stated for `f64`; `f32` is supported for the linear algebra only.
pub trait Scalar:
    Float
    + FloatConst
    + NumAssign
    + FromPrimitive
    + Default
    + Send
    + Sync
    + Debug
    + Display
    + LowerExp
    + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Converts a count into `Self`.
    #[inline]
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
