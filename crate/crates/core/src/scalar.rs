//! Real scalar abstraction.
//!
//! Every numerical routine in the crate is generic over a real field `R`
//! and works on complex matrices `Complex<R>`. Real dictionaries are the
//! special case of zero imaginary parts.

use std::fmt::{Debug, Display, LowerExp};

use nalgebra::{Complex, DMatrix, DVector, RealField};
use num_traits::{FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Complex matrix over the real field `R`.
pub type CMatrix<R> = DMatrix<Complex<R>>;
/// Complex column vector over the real field `R`.
pub type CVector<R> = DVector<Complex<R>>;

/// Real floating-point scalar usable by every routine in the crate.
///
/// Tolerances throughout the crate are quoted at double precision;
/// [`Real::tol`] maps them to the precision of the implementing type.
pub trait Real:
    RealField
    + Copy
    + FromPrimitive
    + ToPrimitive
    + Default
    + Debug
    + Display
    + LowerExp
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Converts a count.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// Lossy view as `f64`, used for reports and serialization.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar representable as f64")
    }

    /// Machine epsilon of the scalar type.
    fn machine_epsilon() -> Self {
        <Self as approx::AbsDiffEq>::default_epsilon()
    }

    /// Rescales a tolerance stated for `f64` arithmetic to this type,
    /// keeping the same fraction of significant digits: `reference^(ln eps / ln eps_f64)`.
    fn tol(reference: f64) -> Self {
        let digits = Self::machine_epsilon().as_f64().ln() / f64::EPSILON.ln();
        Self::lit(reference.powf(digits.min(1.0)))
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Builds a complex number from its real part.
pub fn cx<R: Real>(re: R) -> Complex<R> {
    Complex::new(re, R::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_scaling() {
        assert_eq!(f64::tol(1e-12), 1e-12);
        let t = f32::tol(1e-12);
        assert!(t > 1e-6 && t < 1e-4, "{t}");
        let t = f32::tol(1e-8);
        assert!(t > 1e-4 && t < 1e-3, "{t}");
    }

    #[test]
    fn epsilon_matches_std() {
        assert_eq!(f64::machine_epsilon(), f64::EPSILON);
        assert_eq!(f32::machine_epsilon(), f32::EPSILON);
    }
}
