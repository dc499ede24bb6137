//! Scalar abstraction for the solver.
//!
//! All geometry and matrix math is generic over [`Real`], so the same code
//! runs in `f32` and `f64`. Internal tolerances widen with the machine
//! epsilon of the chosen type; the absolute values documented elsewhere in
//! this crate are the `f64` ones.

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the solver operates on: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + std::fmt::Debug
    + std::fmt::Display
    + std::iter::Sum
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` constant into `T`.
pub(crate) fn cast<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant converts to the scalar type")
}

/// Absolute tolerance for matching a coordinate against a grid boundary.
pub(crate) fn boundary_match_tol<T: Real>() -> T {
    cast::<T>(1e-12).max(T::epsilon() * cast(32.0))
}

/// Snap tolerance for interval-overlap bookkeeping: endpoints this close to
/// a cell boundary are treated as lying on it.
pub(crate) fn snap_tol<T: Real>() -> T {
    cast::<T>(1e-14).max(T::epsilon() * cast(8.0))
}
