//! Scalar trait shared by the analytic modules.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar: f32 or f64.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an f64 literal into `T`.
#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("finite literal")
}

/// Snapping tolerance: 1e-12, or a few ulps when `T` is coarser than that.
#[inline]
pub(crate) fn snap_tol<T: Real>() -> T {
    lit::<T>(1e-12).max(T::epsilon() * lit(16.0))
}
