use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::cayley::{BLADES, BLADE_GRADES, BLADE_NAMES, CAYLEY};
use crate::error::{QsdError, Result};

/// An element of G(R³), stored as eight blade coefficients in the order
/// {1, e1, e2, e3, e12, e13, e23, e123}.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Multivector(pub [f64; BLADES]);

impl Multivector {
    pub const SCALAR: usize = 0;
    pub const E1: usize = 1;
    pub const E2: usize = 2;
    pub const E3: usize = 3;
    pub const E12: usize = 4;
    pub const E13: usize = 5;
    pub const E23: usize = 6;
    pub const E123: usize = 7;

    pub const ZERO: Multivector = Multivector([0.0; BLADES]);

    pub fn new(coefficients: [f64; BLADES]) -> Self {
        Multivector(coefficients)
    }

    pub fn scalar(value: f64) -> Self {
        let mut c = [0.0; BLADES];
        c[Self::SCALAR] = value;
        Multivector(c)
    }

    /// The unit blade at `index` (storage order).
    pub fn blade(index: usize) -> Self {
        let mut c = [0.0; BLADES];
        c[index] = 1.0;
        Multivector(c)
    }

    /// The pseudoscalar e123, which plays the role of the complex unit.
    pub fn pseudoscalar() -> Self {
        Self::blade(Self::E123)
    }

    /// Embeds `re + im·e123`.
    pub fn from_complex(z: Complex64) -> Self {
        let mut c = [0.0; BLADES];
        c[Self::SCALAR] = z.re;
        c[Self::E123] = z.im;
        Multivector(c)
    }

    pub fn coefficients(&self) -> &[f64; BLADES] {
        &self.0
    }

    pub fn coefficient(&self, index: usize) -> f64 {
        self.0[index]
    }

    /// Geometric product per the Cayley table.
    pub fn geometric_product(&self, other: &Multivector) -> Multivector {
        let mut out = [0.0; BLADES];
        for (row, &x) in self.0.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (col, &y) in other.0.iter().enumerate() {
                let entry = CAYLEY[row][col];
                let term = x * y;
                if entry.sign > 0 {
                    out[entry.index as usize] += term;
                } else {
                    out[entry.index as usize] -= term;
                }
            }
        }
        Multivector(out)
    }

    /// Projection onto grade `r` (0..=3).
    pub fn grade(&self, r: usize) -> Result<Multivector> {
        if r > 3 {
            return Err(QsdError::InvalidArgument(format!("grade {r} outside 0..=3")));
        }
        let mut out = [0.0; BLADES];
        for (k, c) in out.iter_mut().enumerate() {
            if BLADE_GRADES[k] == r {
                *c = self.0[k];
            }
        }
        Ok(Multivector(out))
    }

    /// ⟨x⟩₀ + ⟨x⟩₃ read as a complex number, with e123 as the imaginary unit.
    pub fn complex_part(&self) -> Complex64 {
        Complex64::new(self.0[Self::SCALAR], self.0[Self::E123])
    }

    /// Reversion: sign (+, +, −, −) on grades (0, 1, 2, 3).
    pub fn reverse(&self) -> Multivector {
        let mut out = self.0;
        for (k, c) in out.iter_mut().enumerate() {
            if BLADE_GRADES[k] >= 2 {
                *c = -*c;
            }
        }
        Multivector(out)
    }

    pub fn scale(&self, factor: f64) -> Multivector {
        Multivector(self.0.map(|c| c * factor))
    }

    /// Multiplication by a complex scalar `re + im·e123`.
    pub fn scale_complex(&self, z: Complex64) -> Multivector {
        Multivector::from_complex(z).geometric_product(self)
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(self, rhs: Multivector) -> Multivector {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o += r;
        }
        Multivector(out)
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, rhs: Multivector) -> Multivector {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o -= r;
        }
        Multivector(out)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        Multivector(self.0.map(|c| -c))
    }
}

impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.geometric_product(&rhs)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}·{}", BLADE_NAMES[k])?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
