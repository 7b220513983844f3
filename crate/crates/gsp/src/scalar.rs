//! Scalar abstraction: every algorithm in this crate is generic over [`Real`],
//! so the same code runs in `f32` or `f64`. The crate root exposes `f64`
//! aliases, which is what the tests and the CLI use.

use ndarray::{LinalgScalar, ScalarOperand};
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating-point scalar usable in dense linear algebra.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + LinalgScalar
    + ScalarOperand
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossless-enough conversion from an `f64` literal.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Default off-diagonal tolerance for the symmetric eigensolver,
    /// relative to the Frobenius norm of the input.
    fn eig_tolerance() -> Self {
        let floor = Self::epsilon() * Self::of(8.0);
        let target = Self::of(1e-12);
        if target > floor {
            target
        } else {
            floor
        }
    }
}

impl Real for f32 {}
impl Real for f64 {}
