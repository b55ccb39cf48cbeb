//! Closed-form elementary functions on [`Bicomplex`] values.
//!
//! Everything is evaluated in `(a, b, c, d)` coordinates of
//! `w = a + b·i + c·q + d·iq`, never through generic blade arithmetic, so the
//! q-components of a tiny step are never mixed with the complex part.
//!
//! The logarithm and square root are built on the polar decomposition
//! `X = U·S` with `U·Ũ = 1` (unitary, spanned by {1, i, q, iq} with
//! `U = exp(b·i + c·q)`) and `S̃ = S` (scale, spanned by {1, iq}).

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::clifford::Bicomplex;
use crate::error::{QsdError, Result};

/// `atan2` folded into the open-closed interval (−π, π].
pub fn principal_atan2(y: f64, x: f64) -> f64 {
    let angle = y.atan2(x);
    if angle == -PI {
        PI
    } else {
        angle
    }
}

/// `[[M]] = √(⟨M⟩₀² − ⟨M⟩₁²)` where the grade-1 part of a subalgebra element
/// is its `iq` component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradeNorm(pub Complex64);

pub fn grade_norm(m: &Bicomplex) -> GradeNorm {
    let (m0, m1) = (m.a(), m.d());
    GradeNorm(Complex64::new((m0 - m1) * (m0 + m1), 0.0).sqrt())
}

/// Polar parts of an invertible element: `X = unitary · scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarParts {
    pub unitary: Bicomplex,
    pub scale: Bicomplex,
    scale_norm: f64,
}

impl PolarParts {
    /// `[[S]]`, equal to `e^a` for `S = exp(a + d·iq)`.
    pub fn scale_norm(&self) -> f64 {
        self.scale_norm
    }
}

/// `(s0 − s1·iq) / norm_sq` for a self-reverse `s0 + s1·iq` with `s0² − s1² = norm_sq`.
fn inverse_self_reverse(s0: f64, s1: f64, norm_sq: f64, like: &Bicomplex) -> Bicomplex {
    Bicomplex::from_coords(s0 / norm_sq, 0.0, 0.0, -s1 / norm_sq, like.direction)
}

/// Moduli `(|z1 − i z2|, |z1 + i z2|)` of `X` in the two idempotent
/// components of the subalgebra, where `XX̃` is `diag(|λ₊|², |λ₋|²)`.
fn idempotent_moduli(x: &Bicomplex) -> (f64, f64) {
    let iz2 = Complex64::new(-x.z2.im, x.z2.re);
    ((x.z1 - iz2).norm(), (x.z1 + iz2).norm())
}

/// `[[X X̃]]` in factored form `|z1 + i z2| · |z1 − i z2|`, avoiding the
/// cancellation in `⟨XX̃⟩₀² − ⟨XX̃⟩₁²` close to the zero divisors.
fn reverse_norm(x: &Bicomplex) -> f64 {
    let (p, m) = idempotent_moduli(x);
    p * m
}

/// Polar decomposition with
/// `S = (XX̃ + [[XX̃]]) / (√2 √(⟨XX̃⟩₀ + [[XX̃]]))` and `U = X S⁻¹`.
///
/// Close to a zero divisor (`|λ₊|`, `|λ₋|` more than a factor 2 apart)
/// the coordinates of `S⁻¹` are dominated by the larger inverse modulus and
/// `X S⁻¹` loses the other component, so `U` and `S` are assembled from
/// their idempotent components `λ±/|λ±|` and `|λ±|` instead. Steps
/// `z + h·q` with small `h` always take the first branch, which keeps the
/// orders separated.
pub fn polar(x: &Bicomplex) -> Result<PolarParts> {
    let (p, m) = idempotent_moduli(x);
    let n = p * m;
    if !(n > 0.0 && n.is_finite()) {
        return Err(QsdError::NonInvertible("polar decomposition"));
    }
    if p > 2.0 * m || m > 2.0 * p {
        let iz2 = Complex64::new(-x.z2.im, x.z2.re);
        let (up, um) = ((x.z1 - iz2) / p, (x.z1 + iz2) / m);
        let i = Complex64::new(0.0, 1.0);
        let unitary = Bicomplex::new((up + um) * 0.5, i * (up - um) * 0.5, x.direction);
        let scale = Bicomplex::from_coords(0.5 * (p + m), 0.0, 0.0, 0.5 * (p - m), x.direction);
        return Ok(PolarParts { unitary, scale, scale_norm: n.sqrt() });
    }
    let xx = *x * x.reverse();
    let (m0, m1) = (xx.a(), xx.d());
    let denom = (2.0 * (m0 + n)).sqrt();
    let s0 = (m0 + n) / denom;
    let s1 = m1 / denom;
    let scale = Bicomplex::from_coords(s0, 0.0, 0.0, s1, x.direction);
    // S0² − S1² = [[XX̃]]
    let unitary = *x * inverse_self_reverse(s0, s1, n, x);
    Ok(PolarParts { unitary, scale, scale_norm: n.sqrt() })
}

/// `e^w = e^{z1} [cos z2 + q sin z2]`, which expands to
/// `e^a [cos b + i sin b][cos c + q sin c][cosh d + iq sinh d]`.
pub fn exp(w: &Bicomplex) -> Bicomplex {
    let outer = w.z1.exp();
    Bicomplex::new(outer * w.z2.cos(), outer * w.z2.sin(), w.direction)
}

/// Inverse. Invertibility is decided by `[[XX̃]] ≠ 0`; the value itself is
/// `(z1 − q z2)/(z1² + z2²)`, which equals `X̃ (XX̃)⁻¹`, evaluated with the
/// larger of `z1`, `z2` factored out so a tiny step part stays separated.
pub fn inverse(w: &Bicomplex) -> Result<Bicomplex> {
    let n = reverse_norm(w);
    if !(n > 0.0 && n.is_finite()) {
        return Err(QsdError::NonInvertible("inverse"));
    }
    let one = Complex64::new(1.0, 0.0);
    if w.z1.norm() >= w.z2.norm() {
        let r = w.z1.inv();
        let t = w.z2 * r;
        let d = one + t * t;
        Ok(Bicomplex::new(r / d, -(t * r) / d, w.direction))
    } else {
        let r = w.z2.inv();
        let t = w.z1 * r;
        let d = t * t + one;
        Ok(Bicomplex::new((t * r) / d, -r / d, w.direction))
    }
}

/// Principal logarithm: imaginary coefficient in (−π, π], quaternionic
/// coefficient in (−π/2, π/2], so `Ln(−1) = iπ`.
pub fn principal_log(x: &Bicomplex) -> Result<Bicomplex> {
    let parts = polar(x)?;
    let u = parts.unitary;
    // U = U0 + U1·iq + U2·q + U3·i
    let (u0, u3, u2, u1) = (u.a(), u.b(), u.c(), u.d());

    let sin_2c = 2.0 * (u0 * u2 + u1 * u3);
    let cos_2c = 2.0 * (u0 * u0 + u3 * u3) - 1.0;
    let c = 0.5 * principal_atan2(sin_2c, cos_2c);

    let (sin_c, cos_c) = c.sin_cos();
    let (sin_b, cos_b) = if cos_c.abs() > FRAC_1_SQRT_2 { (u3 / cos_c, u0 / cos_c) } else { (u1 / sin_c, u2 / sin_c) };
    let b = principal_atan2(sin_b, cos_b);

    let s = parts.scale;
    // a = ½ ln(S0² − S1²) = ln [[S]]
    let a = parts.scale_norm.ln();
    let d = (s.d() / s.a()).atanh();

    debug_assert!(b > -PI && b <= PI, "b = {b} outside (−π, π]");
    debug_assert!(c > -FRAC_PI_2 && c <= FRAC_PI_2, "c = {c} outside (−π/2, π/2]");
    Ok(Bicomplex::from_coords(a, b, c, d, x.direction))
}

/// `√S = (S + [[S]]) / (√2 √(S0 + [[S]]))` for a self-reverse polar scale.
fn sqrt_scale(s: &Bicomplex, norm: f64) -> Bicomplex {
    let t = s.a() + norm;
    debug_assert!(t > 0.0, "S0 + [[S]] = {t} must be positive");
    let denom = (2.0 * t).sqrt();
    Bicomplex::from_coords(t / denom, 0.0, 0.0, s.d() / denom, s.direction)
}

/// Square root `X^{1/2} = U^{1/2} S^{1/2}`, where `U^{1/2}` is the unitary
/// polar part of `1 + U`.
///
/// Where that formula is invalid or ill-conditioned (`⟨U⟩₀ ≤ 0`, or `1 + U`
/// close to the zero divisors at `U = ±iq`) the root is taken as
/// `exp(Ln(X)/2)`. `sqrt(0) = 0`.
pub fn sqrt(x: &Bicomplex) -> Result<Bicomplex> {
    if x.coords().iter().all(|&c| c == 0.0) {
        return Ok(*x);
    }
    let parts = polar(x)?;
    debug_assert!(parts.scale.a() + parts.scale_norm > 0.0, "S0 + [[S]] must be positive");
    let one_plus_u = parts.unitary + x.lift(Complex64::new(1.0, 0.0));
    // With U = e^{ib} e^{qc}: ⟨U⟩₀ > 0 means |b| < π/2, where the half-angle
    // formula agrees with exp(Ln/2); elsewhere it can jump to the q-plane
    // root (√(−1 + qδ) → q) and break the separation of orders.
    // [[(1+U)(1+U)~]] = 2|cos b + cos c| vanishes at U = ±iq, and the
    // half-angle step loses accuracy as it does.
    if parts.unitary.a() <= 0.0 || reverse_norm(&one_plus_u) < 1.0 {
        return Ok(exp(&principal_log(x)?.scale(Complex64::new(0.5, 0.0))));
    }
    let sqrt_u = polar(&one_plus_u)?.unitary;
    Ok(sqrt_u * sqrt_scale(&parts.scale, parts.scale_norm))
}

/// `sin(z1 + q z2) = sin z1 cosh z2 + q cos z1 sinh z2`, the expansion of
/// `(e^{iw} − e^{−iw}) / 2i` for commuting `i` and `q`.
pub fn sin(w: &Bicomplex) -> Bicomplex {
    Bicomplex::new(w.z1.sin() * w.z2.cosh(), w.z1.cos() * w.z2.sinh(), w.direction)
}

/// `cos(z1 + q z2) = cos z1 cosh z2 − q sin z1 sinh z2`.
pub fn cos(w: &Bicomplex) -> Bicomplex {
    Bicomplex::new(w.z1.cos() * w.z2.cosh(), -(w.z1.sin() * w.z2.sinh()), w.direction)
}

pub fn tan(w: &Bicomplex) -> Result<Bicomplex> {
    let c = inverse(&cos(w)).map_err(|_| QsdError::NonInvertible("tan"))?;
    Ok(sin(w) * c)
}

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `arcsin w = −i Ln(i w + √(1 − w²))`.
pub fn arcsin(w: &Bicomplex) -> Result<Bicomplex> {
    let root = sqrt(&(w.lift(ONE) - *w * *w))?;
    Ok(principal_log(&(w.scale(I) + root))?.scale(-I))
}

/// `arccos w = −i Ln(w + √(w² − 1))`.
pub fn arccos(w: &Bicomplex) -> Result<Bicomplex> {
    let root = sqrt(&(*w * *w - w.lift(ONE)))?;
    Ok(principal_log(&(*w + root))?.scale(-I))
}

/// `arctan w = (i/2) [Ln(1 − i w) − Ln(1 + i w)]`.
pub fn arctan(w: &Bicomplex) -> Result<Bicomplex> {
    let iw = w.scale(I);
    let one = w.lift(ONE);
    let lhs = principal_log(&(one - iw))?;
    let rhs = principal_log(&(one + iw))?;
    Ok((lhs - rhs).scale(Complex64::new(0.0, 0.5)))
}
