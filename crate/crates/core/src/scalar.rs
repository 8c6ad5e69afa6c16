//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + NumAssign
        + Debug
        + Display
        + Default
        + Send
        + Sync
        + 'static
{
}

/// Complex amplitude over the real scalar `T`.
pub type Cx<T> = Complex<T>;

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// Tolerance expressed for `f64` and widened by the ratio of machine
/// epsilons, so an `f64` threshold keeps its meaning for `f32`.
#[inline]
pub fn tol<T: Real>(x: f64) -> T {
    let ratio = T::epsilon().to_f64().unwrap_or(f64::EPSILON) / f64::EPSILON;
    lit(x * ratio.max(1.0))
}

#[inline]
pub fn cx<T: Real>(re: f64, im: f64) -> Cx<T> {
    Complex::new(lit(re), lit(im))
}

#[inline]
pub fn czero<T: Real>() -> Cx<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub fn cone<T: Real>() -> Cx<T> {
    Complex::new(T::one(), T::zero())
}

/// The imaginary unit.
#[inline]
pub fn ci<T: Real>() -> Cx<T> {
    Complex::new(T::zero(), T::one())
}

/// Principal argument in (-π, π].
#[inline]
pub fn principal_arg<T: Real>(z: Cx<T>) -> T {
    if z.re == T::zero() && z.im == T::zero() {
        return T::zero();
    }
    let a = z.im.atan2(z.re);
    if a <= -T::PI() {
        T::PI()
    } else {
        a
    }
}

/// `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn rel_close<T: Real>(a: T, b: T, rel: T) -> bool {
    let scale = T::one().max(a.abs()).max(b.abs());
    (a - b).abs() <= rel * scale
}

/// Relative disagreement `|a - b| / max(|a|, |b|, floor)`.
pub fn rel_diff<T: Real>(a: T, b: T, floor: T) -> T {
    (a - b).abs() / a.abs().max(b.abs()).max(floor)
}

/// Complex analogue of [`rel_diff`].
pub fn rel_diff_cx<T: Real>(a: Cx<T>, b: Cx<T>, floor: T) -> T {
    (a - b).norm() / a.norm().max(b.norm()).max(floor)
}
