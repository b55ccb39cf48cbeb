use std::f64::consts::{FRAC_PI_2, PI};

use super::multivector::Multivector;
use crate::error::{QsdError, Result};

/// Direction of the quaternionic step, `q = c_i 𝐢 + c_j 𝐣 + c_k 𝐤` with
/// `c_i² + c_j² + c_k² = 1` so that `q² = −1`.
///
/// The quaternion units are the bivectors `𝐢 = e32`, `𝐣 = e13`, `𝐤 = e21`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitQuaternion {
    ci: f64,
    cj: f64,
    ck: f64,
}

impl UnitQuaternion {
    pub const I: UnitQuaternion = UnitQuaternion { ci: 1.0, cj: 0.0, ck: 0.0 };
    pub const J: UnitQuaternion = UnitQuaternion { ci: 0.0, cj: 1.0, ck: 0.0 };
    pub const K: UnitQuaternion = UnitQuaternion { ci: 0.0, cj: 0.0, ck: 1.0 };

    /// Normalises `(c_i, c_j, c_k)`; the zero vector and non-finite input are rejected.
    pub fn new(ci: f64, cj: f64, ck: f64) -> Result<Self> {
        let norm = ci.hypot(cj).hypot(ck);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(QsdError::InvalidArgument(format!("direction ({ci}, {cj}, {ck}) cannot be normalised")));
        }
        Ok(UnitQuaternion { ci: ci / norm, cj: cj / norm, ck: ck / norm })
    }

    /// Spherical parameterisation: `c_i = sinθ cosφ`, `c_j = sinθ sinφ`,
    /// `c_k = cosθ`, with θ ∈ [0, π] and φ ∈ [0, 2π).
    pub fn from_angles(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(QsdError::InvalidArgument(format!("theta = {theta} outside [0, π]")));
        }
        if !(0.0..2.0 * PI).contains(&phi) {
            return Err(QsdError::InvalidArgument(format!("phi = {phi} outside [0, 2π)")));
        }
        // cos θ as sin(π/2 − θ): exactly zero on the equator, where a
        // stray 𝐤 component would leak onto the diagonal of K₂
        let (st, ct) = (theta.sin(), (FRAC_PI_2 - theta).sin());
        let (sp, cp) = phi.sin_cos();
        Self::new(st * cp, st * sp, ct)
    }

    pub fn ci(&self) -> f64 {
        self.ci
    }

    pub fn cj(&self) -> f64 {
        self.cj
    }

    pub fn ck(&self) -> f64 {
        self.ck
    }

    /// `(θ, φ)` with φ folded into [0, 2π).
    pub fn to_angles(&self) -> (f64, f64) {
        let theta = self.ck.clamp(-1.0, 1.0).acos();
        let mut phi = self.cj.atan2(self.ci);
        if phi < 0.0 {
            phi += 2.0 * PI;
        }
        if phi >= 2.0 * PI {
            phi = 0.0;
        }
        (theta, phi)
    }

    /// The bivector `q = −c_i e23 + c_j e13 − c_k e12`.
    pub fn bivector(&self) -> Multivector {
        let mut c = [0.0; 8];
        c[Multivector::E23] = -self.ci;
        c[Multivector::E13] = self.cj;
        c[Multivector::E12] = -self.ck;
        Multivector(c)
    }

    /// The vector `i·q = c_i e1 + c_j e2 + c_k e3`.
    pub fn dual_vector(&self) -> Multivector {
        let mut c = [0.0; 8];
        c[Multivector::E1] = self.ci;
        c[Multivector::E2] = self.cj;
        c[Multivector::E3] = self.ck;
        Multivector(c)
    }
}

impl Default for UnitQuaternion {
    fn default() -> Self {
        UnitQuaternion::J
    }
}
