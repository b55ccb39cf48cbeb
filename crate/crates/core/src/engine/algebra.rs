//! Number systems a registry function can be evaluated in.

use num_complex::Complex64;

use crate::clifford::{embed, to_bicomplex, Bicomplex, Multivector, UnitQuaternion};
use crate::elementary::{self, principal_atan2};
use crate::error::{QsdError, Result};

/// Arithmetic plus the elementary functions needed by the function registry.
///
/// Constants are created with [`StepAlgebra::lift`] so that they land in the
/// same space (direction, representation) as the argument.
pub trait StepAlgebra: Sized + Clone {
    fn lift(&self, z: Complex64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, s: Complex64) -> Self;
    fn inv(&self) -> Result<Self>;
    fn exp(&self) -> Result<Self>;
    fn sin(&self) -> Result<Self>;
    fn cos(&self) -> Result<Self>;
    fn tan(&self) -> Result<Self>;
    fn ln(&self) -> Result<Self>;
    fn sqrt(&self) -> Result<Self>;
    fn asin(&self) -> Result<Self>;
    fn acos(&self) -> Result<Self>;
    fn atan(&self) -> Result<Self>;
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Plain complex arithmetic, with logarithm and inverse trigonometric
/// branches matching the bicomplex closed forms.
impl StepAlgebra for Complex64 {
    fn lift(&self, z: Complex64) -> Self {
        z
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, s: Complex64) -> Self {
        self * s
    }
    fn inv(&self) -> Result<Self> {
        if *self == Complex64::new(0.0, 0.0) {
            return Err(QsdError::NonInvertible("complex inverse"));
        }
        Ok(Complex64::inv(self))
    }
    fn exp(&self) -> Result<Self> {
        Ok(Complex64::exp(*self))
    }
    fn sin(&self) -> Result<Self> {
        Ok(Complex64::sin(*self))
    }
    fn cos(&self) -> Result<Self> {
        Ok(Complex64::cos(*self))
    }
    fn tan(&self) -> Result<Self> {
        let c = StepAlgebra::cos(self)?;
        Ok(Complex64::sin(*self) * StepAlgebra::inv(&c).map_err(|_| QsdError::NonInvertible("tan"))?)
    }
    fn ln(&self) -> Result<Self> {
        if *self == Complex64::new(0.0, 0.0) {
            return Err(QsdError::NonInvertible("complex logarithm"));
        }
        Ok(Complex64::new(self.norm().ln(), principal_atan2(self.im, self.re)))
    }
    fn sqrt(&self) -> Result<Self> {
        Ok(Complex64::sqrt(*self))
    }
    // The inverse trigonometric functions use cancellation-free forms of the
    // logarithmic definitions, so a tiny imaginary step survives (x + ih
    // with h ≪ x is exactly what the complex-step method feeds in).
    fn asin(&self) -> Result<Self> {
        let (s1, s2) = ((ONE - self).sqrt(), (ONE + self).sqrt());
        Ok(Complex64::new(principal_atan2(self.re, (s1 * s2).re), (s1.conj() * s2).im.asinh()))
    }
    fn acos(&self) -> Result<Self> {
        let (s1, s2) = ((ONE - self).sqrt(), (ONE + self).sqrt());
        let principal = Complex64::new(2.0 * principal_atan2(s1.re, s2.re), (s2.conj() * s1).im.asinh());
        // −i Ln(w + √(w²−1)) is the principal arccos where √(w²−1) = i√(1−w²)
        // and its negative elsewhere.
        let (r, t) = (((self - ONE) * (self + ONE)).sqrt(), I * (s1 * s2));
        Ok(if (r - t).norm() <= (r + t).norm() { principal } else { -principal })
    }
    fn atan(&self) -> Result<Self> {
        let (x, y) = (self.re, self.im);
        if x == 0.0 && y.abs() == 1.0 {
            return Err(QsdError::NonInvertible("complex logarithm"));
        }
        let re = 0.5 * principal_atan2(2.0 * x, (1.0 - y) * (1.0 + y) - x * x);
        let im = 0.25 * (4.0 * y / (x * x + (1.0 - y) * (1.0 - y))).ln_1p();
        Ok(Complex64::new(re, im))
    }
}

impl StepAlgebra for Bicomplex {
    fn lift(&self, z: Complex64) -> Self {
        Bicomplex::lift(self, z)
    }
    fn add(&self, other: &Self) -> Self {
        *self + *other
    }
    fn sub(&self, other: &Self) -> Self {
        *self - *other
    }
    fn mul(&self, other: &Self) -> Self {
        *self * *other
    }
    fn scale(&self, s: Complex64) -> Self {
        Bicomplex::scale(self, s)
    }
    fn inv(&self) -> Result<Self> {
        elementary::inverse(self)
    }
    fn exp(&self) -> Result<Self> {
        Ok(elementary::exp(self))
    }
    fn sin(&self) -> Result<Self> {
        Ok(elementary::sin(self))
    }
    fn cos(&self) -> Result<Self> {
        Ok(elementary::cos(self))
    }
    fn tan(&self) -> Result<Self> {
        elementary::tan(self)
    }
    fn ln(&self) -> Result<Self> {
        elementary::principal_log(self)
    }
    fn sqrt(&self) -> Result<Self> {
        elementary::sqrt(self)
    }
    fn asin(&self) -> Result<Self> {
        elementary::arcsin(self)
    }
    fn acos(&self) -> Result<Self> {
        elementary::arccos(self)
    }
    fn atan(&self) -> Result<Self> {
        elementary::arctan(self)
    }
}

/// A full multivector together with the step direction it was built from.
///
/// Products use the 8×8 geometric product; transcendental functions project
/// onto the bicomplex subalgebra of `direction` and embed the result back.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepMultivector {
    pub value: Multivector,
    pub direction: UnitQuaternion,
}

impl StepMultivector {
    pub fn new(value: Multivector, direction: UnitQuaternion) -> Self {
        StepMultivector { value, direction }
    }

    pub fn from_bicomplex(b: &Bicomplex) -> Self {
        StepMultivector::new(embed(b), b.direction)
    }

    fn through_bicomplex(&self, f: impl FnOnce(&Bicomplex) -> Result<Bicomplex>) -> Result<Self> {
        let b = to_bicomplex(&self.value, self.direction, None)?;
        Ok(StepMultivector::new(embed(&f(&b)?), self.direction))
    }
}

impl StepAlgebra for StepMultivector {
    fn lift(&self, z: Complex64) -> Self {
        StepMultivector::new(Multivector::from_complex(z), self.direction)
    }
    fn add(&self, other: &Self) -> Self {
        StepMultivector::new(self.value + other.value, self.direction)
    }
    fn sub(&self, other: &Self) -> Self {
        StepMultivector::new(self.value - other.value, self.direction)
    }
    fn mul(&self, other: &Self) -> Self {
        StepMultivector::new(self.value * other.value, self.direction)
    }
    fn scale(&self, s: Complex64) -> Self {
        StepMultivector::new(self.value.scale_complex(s), self.direction)
    }
    fn inv(&self) -> Result<Self> {
        self.through_bicomplex(elementary::inverse)
    }
    fn exp(&self) -> Result<Self> {
        self.through_bicomplex(|b| Ok(elementary::exp(b)))
    }
    fn sin(&self) -> Result<Self> {
        self.through_bicomplex(|b| Ok(elementary::sin(b)))
    }
    fn cos(&self) -> Result<Self> {
        self.through_bicomplex(|b| Ok(elementary::cos(b)))
    }
    fn tan(&self) -> Result<Self> {
        self.through_bicomplex(elementary::tan)
    }
    fn ln(&self) -> Result<Self> {
        self.through_bicomplex(elementary::principal_log)
    }
    fn sqrt(&self) -> Result<Self> {
        self.through_bicomplex(elementary::sqrt)
    }
    fn asin(&self) -> Result<Self> {
        self.through_bicomplex(elementary::arcsin)
    }
    fn acos(&self) -> Result<Self> {
        self.through_bicomplex(elementary::arccos)
    }
    fn atan(&self) -> Result<Self> {
        self.through_bicomplex(elementary::arctan)
    }
}
