//! Scalar abstraction shared by the state-vector code and the exact oracles.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use std::fmt::{Debug, Display, LowerExp};

/// Real scalar backing every amplitude and probability: `f32` or `f64`.
///
/// The two tolerances carry the repo-wide numerical contract. For `f64` the
/// constructive tolerance is `1e-12` and the norm-drift tolerance `1e-9`; the
/// `f32` values are scaled to that type's epsilon.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Threshold for constructive checks: transparency bounds, certain
    /// projection outcomes, vanishing orthogonal residuals.
    const CONSTRUCTIVE_TOL: f64;
    /// Allowed drift of a squared norm away from one.
    const NORM_TOL: f64;

    /// Converts an `f64` literal. Infallible for finite inputs.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn constructive_tol() -> Self {
        Self::lit(Self::CONSTRUCTIVE_TOL)
    }

    #[inline]
    fn norm_tol() -> Self {
        Self::lit(Self::NORM_TOL)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("float to f64")
    }
}

impl Real for f64 {
    const CONSTRUCTIVE_TOL: f64 = 1e-12;
    const NORM_TOL: f64 = 1e-9;
}

impl Real for f32 {
    const CONSTRUCTIVE_TOL: f64 = 1e-6;
    const NORM_TOL: f64 = 1e-5;
}
