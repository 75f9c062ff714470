//! Scalar abstractions shared by the linear-algebra and special-function code.
//!
//! [`Scalar`] is anything we can do exact field arithmetic with and compare by
//! magnitude: `f32`, `f64` and [`BigRational`](num_rational::BigRational).
//! [`Real`] adds the transcendental functions needed by quadrature, Chebyshev
//! nodes and the oscillator functions.

use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed, ToPrimitive};

pub trait Scalar: Num + Signed + Clone + PartialOrd + FromPrimitive + ToPrimitive + Debug + Send + Sync {
    /// Lossy conversion of a literal; panics only if the type cannot represent it.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal not representable")
    }

    fn magnitude(&self) -> Self {
        Signed::abs(self)
    }
}

impl<T> Scalar for T where T: Num + Signed + Clone + PartialOrd + FromPrimitive + ToPrimitive + Debug + Send + Sync {}

/// Floating-point scalars (`f32`, `f64`).
pub trait Real: Scalar + Float + FloatConst + Copy + std::iter::Sum + 'static {}

impl<T> Real for T where T: Scalar + Float + FloatConst + Copy + std::iter::Sum + 'static {}
