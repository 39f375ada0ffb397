//! Scalar fields used for module linear algebra: double-precision complex
//! numbers and exact Gaussian rationals.

use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

pub use num_complex::Complex64;
use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{Float, Signed, Zero};

use crate::phase::Phase;

/// Exact complex numbers with rational parts.
pub type GaussRat = Complex<Ratio<i128>>;

pub trait Scalar:
    Copy
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// Whether equality is decided exactly (tolerances are ignored).
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn conj(self) -> Self;
    /// `None` when the phase is not representable in this field.
    fn from_phase(p: &Phase) -> Option<Self>;
    fn from_ints(re: i64, im: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_c64(self) -> Complex64;
    fn is_zero(self) -> bool;
    fn approx_eq(self, other: Self, tol: f64) -> bool;
    fn inv(self) -> Option<Self>;
    /// Square root of a real non-negative value, if it exists in the field.
    fn sqrt_real(self) -> Option<Self>;
    /// `(re⁺, re⁻, im⁺, im⁻)`, each real and non-negative, with
    /// `self = re⁺ − re⁻ + i(im⁺ − im⁻)`.
    fn positive_parts(self) -> [Self; 4];

    fn norm_sqr(self) -> f64 {
        Complex64::norm_sqr(&self.to_c64())
    }

    fn magnitude(self) -> f64 {
        Complex64::norm(self.to_c64())
    }

    fn i() -> Self {
        Self::from_ints(0, 1)
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn conj(self) -> Self {
        Complex::conj(&self)
    }
    fn from_phase(p: &Phase) -> Option<Self> {
        Some(p.to_complex())
    }
    fn from_ints(re: i64, im: i64) -> Self {
        Complex64::new(re as f64, im as f64)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn to_c64(self) -> Complex64 {
        self
    }
    fn is_zero(self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn approx_eq(self, other: Self, tol: f64) -> bool {
        (self - other).norm() <= tol
    }
    fn inv(self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(Complex::inv(&self))
        }
    }
    fn sqrt_real(self) -> Option<Self> {
        if self.re < 0.0 {
            return None;
        }
        Some(Complex64::new(Float::sqrt(self.re), 0.0))
    }
    fn positive_parts(self) -> [Self; 4] {
        let r = |x: f64| Complex64::new(x, 0.0);
        [r(self.re.max(0.0)), r((-self.re).max(0.0)), r(self.im.max(0.0)), r((-self.im).max(0.0))]
    }
}

fn isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut x = Float::sqrt(n as f64) as i128;
    while x > 0 && x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    (x * x == n).then_some(x)
}

impl Scalar for GaussRat {
    const EXACT: bool = true;

    fn zero() -> Self {
        Complex::new(Ratio::zero(), Ratio::zero())
    }
    fn one() -> Self {
        Complex::new(Ratio::from_integer(1), Ratio::zero())
    }
    fn conj(self) -> Self {
        Complex::new(self.re, -self.im)
    }
    fn from_phase(p: &Phase) -> Option<Self> {
        let one = Ratio::from_integer(1);
        let zero = Ratio::zero();
        Some(match p.quarter_turns()? {
            0 => Complex::new(one, zero),
            1 => Complex::new(zero, one),
            2 => Complex::new(-one, zero),
            _ => Complex::new(zero, -one),
        })
    }
    fn from_ints(re: i64, im: i64) -> Self {
        Complex::new(Ratio::from_integer(re as i128), Ratio::from_integer(im as i128))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(Ratio::new(num as i128, den as i128), Ratio::zero())
    }
    fn to_c64(self) -> Complex64 {
        let f = |r: Ratio<i128>| *r.numer() as f64 / *r.denom() as f64;
        Complex64::new(f(self.re), f(self.im))
    }
    fn is_zero(self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn approx_eq(self, other: Self, _tol: f64) -> bool {
        self == other
    }
    fn inv(self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        let d = self.re * self.re + self.im * self.im;
        Some(Complex::new(self.re / d, -self.im / d))
    }
    fn sqrt_real(self) -> Option<Self> {
        if !self.im.is_zero() || self.re.is_negative() {
            return None;
        }
        let n = isqrt(*self.re.numer())?;
        let d = isqrt(*self.re.denom())?;
        Some(Complex::new(Ratio::new(n, d), Ratio::zero()))
    }
    fn positive_parts(self) -> [Self; 4] {
        let z = Ratio::zero();
        let pos = |x: Ratio<i128>| if x.is_negative() { z } else { x };
        let r = |x| Complex::new(x, z);
        [r(pos(self.re)), r(pos(-self.re)), r(pos(self.im)), r(pos(-self.im))]
    }
}
