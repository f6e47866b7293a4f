use std::fmt::{Debug, Display};
use std::str::FromStr;

use nalgebra::RealField;
use num_complex::Complex;
use num_traits::{FromPrimitive, Signed, ToPrimitive};
use rustfft::FftNum;

/// Real scalar the whole crate is generic over: `f32` or `f64`.
///
/// Bounds combine what nalgebra's dense decompositions need with what
/// rustfft needs for its plans, plus parsing and shortest round-trip
/// printing for the text formats.
pub trait Real:
    RealField + FftNum + Copy + FromPrimitive + ToPrimitive + FromStr + Display + Debug
{
    /// Name used in dump headers.
    const NAME: &'static str;
}

impl Real for f32 {
    const NAME: &'static str = "f32";
}

impl Real for f64 {
    const NAME: &'static str = "f64";
}

/// Literal conversion; every `f64` constant used in the crate is representable.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

#[inline]
pub fn from_usize<T: Real>(x: usize) -> T {
    T::from_usize(x).expect("usize representable in scalar type")
}

#[inline]
pub fn from_i64<T: Real>(x: i64) -> T {
    T::from_i64(x).expect("i64 representable in scalar type")
}

/// `RealField` and `Signed` both provide `abs`; pin one.
#[inline]
pub fn abs<T: Real>(x: T) -> T {
    <T as Signed>::abs(&x)
}

#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[inline]
pub fn cis<T: Real>(angle: T) -> Complex<T> {
    Complex::new(angle.cos(), angle.sin())
}

#[inline]
pub fn modulus<T: Real>(z: Complex<T>) -> T {
    z.norm_sqr().sqrt()
}

/// `e^{-2πi r / n}` with the integer phase reduced first.
#[inline]
pub fn root_of_unity<T: Real>(r: i64, n: usize) -> Complex<T> {
    let reduced = r.rem_euclid(n as i64);
    cis(-T::two_pi() * from_i64::<T>(reduced) / from_usize::<T>(n))
}
