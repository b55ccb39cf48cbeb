use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::direction::UnitQuaternion;
use super::multivector::Multivector;
use crate::error::{QsdError, Result};

/// Relative tolerance used by [`to_bicomplex`] when none is given.
pub const DEFAULT_SUBALGEBRA_TOL: f64 = 1e-12;

/// `w = z1 + q·z2` in the commutative subalgebra span{1, i, q, iq}.
///
/// In real coordinates `w = a + b·i + c·q + d·iq` with `z1 = a + b·i` and
/// `z2 = c + d·i`. Grades: `a` scalar, `d·iq` vector, `c·q` bivector, `b·i`
/// pseudoscalar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bicomplex {
    pub z1: Complex64,
    pub z2: Complex64,
    pub direction: UnitQuaternion,
}

impl Bicomplex {
    pub fn new(z1: Complex64, z2: Complex64, direction: UnitQuaternion) -> Self {
        Bicomplex { z1, z2, direction }
    }

    pub fn from_coords(a: f64, b: f64, c: f64, d: f64, direction: UnitQuaternion) -> Self {
        Bicomplex::new(Complex64::new(a, b), Complex64::new(c, d), direction)
    }

    /// A complex number with no quaternionic part.
    pub fn complex(z: Complex64, direction: UnitQuaternion) -> Self {
        Bicomplex::new(z, Complex64::new(0.0, 0.0), direction)
    }

    pub fn real(x: f64, direction: UnitQuaternion) -> Self {
        Bicomplex::complex(Complex64::new(x, 0.0), direction)
    }

    /// The step point `z + h·q`.
    pub fn step(z: Complex64, h: f64, direction: UnitQuaternion) -> Self {
        Bicomplex::new(z, Complex64::new(h, 0.0), direction)
    }

    /// `q` itself.
    pub fn unit_q(direction: UnitQuaternion) -> Self {
        Bicomplex::from_coords(0.0, 0.0, 1.0, 0.0, direction)
    }

    /// `i·q`.
    pub fn unit_iq(direction: UnitQuaternion) -> Self {
        Bicomplex::from_coords(0.0, 0.0, 0.0, 1.0, direction)
    }

    pub fn a(&self) -> f64 {
        self.z1.re
    }

    pub fn b(&self) -> f64 {
        self.z1.im
    }

    pub fn c(&self) -> f64 {
        self.z2.re
    }

    pub fn d(&self) -> f64 {
        self.z2.im
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.a(), self.b(), self.c(), self.d()]
    }

    /// A constant in the same direction as `self`.
    pub fn lift(&self, z: Complex64) -> Self {
        Bicomplex::complex(z, self.direction)
    }

    /// Multiplication by a complex scalar.
    pub fn scale(&self, s: Complex64) -> Self {
        Bicomplex::new(self.z1 * s, self.z2 * s, self.direction)
    }

    /// Reversion: `a − b·i − c·q + d·iq`.
    pub fn reverse(&self) -> Self {
        Bicomplex::new(self.z1.conj(), -self.z2.conj(), self.direction)
    }

    pub fn is_finite(&self) -> bool {
        self.z1.is_finite() && self.z2.is_finite()
    }

    /// Largest absolute real coordinate.
    pub fn max_abs(&self) -> f64 {
        self.coords().iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Euclidean norm of the four real coordinates.
    pub fn norm(&self) -> f64 {
        self.z1.norm().hypot(self.z2.norm())
    }

    pub fn embed(&self) -> Multivector {
        embed(self)
    }
}

/// Maps `z1 + q·z2` into G(R³).
pub fn embed(b: &Bicomplex) -> Multivector {
    let mut c = [0.0; 8];
    c[Multivector::SCALAR] = b.a();
    c[Multivector::E123] = b.b();
    let q = b.direction;
    // c·q
    c[Multivector::E23] = -b.c() * q.ci();
    c[Multivector::E13] = b.c() * q.cj();
    c[Multivector::E12] = -b.c() * q.ck();
    // d·iq
    c[Multivector::E1] = b.d() * q.ci();
    c[Multivector::E2] = b.d() * q.cj();
    c[Multivector::E3] = b.d() * q.ck();
    Multivector(c)
}

/// Decomposes `x` as `z1 + q·z2`, failing if the residual outside
/// span{1, i, q, iq} exceeds `tol` (default `1e-12 · max|coefficient|`).
pub fn to_bicomplex(x: &Multivector, direction: UnitQuaternion, tol: Option<f64>) -> Result<Bicomplex> {
    let tol = tol.unwrap_or(DEFAULT_SUBALGEBRA_TOL * x.max_abs());
    let z1 = x.complex_part();
    // x·q⁻¹ with q⁻¹ = −q
    let z2 = x.geometric_product(&-direction.bivector()).complex_part();
    let b = Bicomplex::new(z1, z2, direction);
    let residual = (*x - embed(&b)).max_abs();
    if residual > tol || !residual.is_finite() {
        return Err(QsdError::NotInSubalgebra { residual, tol });
    }
    Ok(b)
}

impl Add for Bicomplex {
    type Output = Bicomplex;
    fn add(self, rhs: Bicomplex) -> Bicomplex {
        debug_assert_eq!(self.direction, rhs.direction, "mixed step directions");
        Bicomplex::new(self.z1 + rhs.z1, self.z2 + rhs.z2, self.direction)
    }
}

impl Sub for Bicomplex {
    type Output = Bicomplex;
    fn sub(self, rhs: Bicomplex) -> Bicomplex {
        debug_assert_eq!(self.direction, rhs.direction, "mixed step directions");
        Bicomplex::new(self.z1 - rhs.z1, self.z2 - rhs.z2, self.direction)
    }
}

impl Neg for Bicomplex {
    type Output = Bicomplex;
    fn neg(self) -> Bicomplex {
        Bicomplex::new(-self.z1, -self.z2, self.direction)
    }
}

/// `(z1 + q z2)(w1 + q w2) = (z1 w1 − z2 w2) + q (z1 w2 + z2 w1)`.
impl Mul for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, rhs: Bicomplex) -> Bicomplex {
        debug_assert_eq!(self.direction, rhs.direction, "mixed step directions");
        Bicomplex::new(self.z1 * rhs.z1 - self.z2 * rhs.z2, self.z1 * rhs.z2 + self.z2 * rhs.z1, self.direction)
    }
}

impl fmt::Display for Bicomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + q·({})", self.z1, self.z2)
    }
}
