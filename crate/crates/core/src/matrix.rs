//! 2×2 complex and 4×4 real representations of the quaternionic step.
//!
//! A bicomplex value `z1 + q·z2` becomes `z1·𝟙ₙ + z2·Qₙ` with
//! `Qₙ = c_i·Iₙ + c_j·Jₙ + c_k·Kₙ`. The derivative is read back with the
//! trace, `f'(z) ≈ tr[f(z𝟙 + hQ)·Q⁻¹] / (n·h)`.

use std::fmt;

use num_complex::Complex64;

use crate::clifford::{Bicomplex, UnitQuaternion};
use crate::elementary;
use crate::engine::{central_difference, FunctionTag, StepAlgebra};
use crate::error::{QsdError, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Taylor terms used by the matrix exponential.
const EXP_TERMS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    /// `Iₙ = −iσ₁`, `Jₙ = −iσ₂`, `Kₙ = −iσ₃`.
    Pauli2,
    /// Real 4×4 matrices; every quaternion unit is off-diagonal.
    Real4,
}

impl Representation {
    pub fn dim(&self) -> usize {
        match self {
            Representation::Pauli2 => 2,
            Representation::Real4 => 4,
        }
    }

    /// The images of 𝐢, 𝐣, 𝐤.
    pub fn basis(&self) -> [MatrixElement; 3] {
        let (r, o) = (|x: f64| Complex64::new(x, 0.0), |y: f64| Complex64::new(0.0, y));
        let rows = match self {
            Representation::Pauli2 => {
                vec![vec![ZERO, o(-1.0), o(-1.0), ZERO], vec![ZERO, r(-1.0), r(1.0), ZERO], vec![o(-1.0), ZERO, ZERO, o(1.0)]]
            }
            Representation::Real4 => [
                [[0., 1., 0., 0.], [-1., 0., 0., 0.], [0., 0., 0., 1.], [0., 0., -1., 0.]],
                [[0., 0., -1., 0.], [0., 0., 0., 1.], [1., 0., 0., 0.], [0., -1., 0., 0.]],
                [[0., 0., 0., 1.], [0., 0., 1., 0.], [0., -1., 0., 0.], [-1., 0., 0., 0.]],
            ]
            .iter()
            .map(|m| m.iter().flatten().map(|&x| r(x)).collect())
            .collect(),
        };
        let mut it = rows.into_iter().map(|entries| MatrixElement::from_entries(*self, entries));
        [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()]
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Representation::Pauli2 => "pauli2",
            Representation::Real4 => "real4",
        })
    }
}

/// An n×n complex matrix, row-major, in one of the two representations.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixElement {
    pub rep: Representation,
    entries: Vec<Complex64>,
    /// Step direction used when a value has to be read back as a bicomplex.
    pub direction: UnitQuaternion,
}

impl MatrixElement {
    fn from_entries(rep: Representation, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), rep.dim() * rep.dim());
        MatrixElement { rep, entries, direction: UnitQuaternion::default() }
    }

    pub fn new(rep: Representation, entries: Vec<Complex64>, direction: UnitQuaternion) -> Result<Self> {
        let n = rep.dim();
        if entries.len() != n * n {
            return Err(QsdError::InvalidArgument(format!("{rep} needs {} entries, got {}", n * n, entries.len())));
        }
        Ok(MatrixElement { rep, entries, direction })
    }

    pub fn identity(rep: Representation, direction: UnitQuaternion) -> Self {
        Self::scalar(rep, ONE, direction)
    }

    /// `z·𝟙ₙ`.
    pub fn scalar(rep: Representation, z: Complex64, direction: UnitQuaternion) -> Self {
        let n = rep.dim();
        let mut entries = vec![ZERO; n * n];
        for k in 0..n {
            entries[k * n + k] = z;
        }
        MatrixElement { rep, entries, direction }
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    pub fn trace(&self) -> Complex64 {
        let n = self.dim();
        (0..n).map(|k| self.entries[k * n + k]).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.is_finite())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    fn zip(&self, other: &Self, op: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        debug_assert_eq!(self.rep, other.rep);
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| op(a, b)).collect();
        MatrixElement { rep: self.rep, entries, direction: self.direction }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let entries = self.entries.iter().map(|&a| a * s).collect();
        MatrixElement { rep: self.rep, entries, direction: self.direction }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.rep, other.rep);
        let n = self.dim();
        let mut entries = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        MatrixElement { rep: self.rep, entries, direction: self.direction }
    }

    /// Gauss–Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim();
        let scale = self.max_abs();
        if !(scale.is_finite() && scale > 0.0) {
            return Err(QsdError::NonInvertible("singular matrix"));
        }
        let tiny = 4.0 * f64::EPSILON * scale;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(self.rep, self.direction).entries;
        for col in 0..n {
            let pivot_row =
                (col..n).max_by(|&r, &s| a[r * n + col].norm().total_cmp(&a[s * n + col].norm())).expect("non-empty range");
            let pivot = a[pivot_row * n + col];
            if pivot.norm() <= tiny {
                return Err(QsdError::NonInvertible("singular matrix"));
            }
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                    inv.swap(col * n + j, pivot_row * n + j);
                }
            }
            let p = pivot.inv();
            for j in 0..n {
                a[col * n + j] *= p;
                inv[col * n + j] *= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col];
                if factor == ZERO {
                    continue;
                }
                for j in 0..n {
                    let (ac, ic) = (a[col * n + j], inv[col * n + j]);
                    a[r * n + j] -= factor * ac;
                    inv[r * n + j] -= factor * ic;
                }
            }
        }
        Ok(MatrixElement { rep: self.rep, entries: inv, direction: self.direction })
    }

    /// Taylor series with scaling and squaring, after shifting out the trace:
    /// `exp(A) = e^μ·exp(A − μ𝟙)` with `μ = tr(A)/n`.
    /// Splits off the scalar part: `A = μ𝟙 + N` with `μ = tr(A)/n`.
    fn split_trace(&self) -> (Complex64, Self) {
        let n = self.dim();
        let mu = self.trace() / n as f64;
        let mut shifted = self.clone();
        for k in 0..n {
            shifted.entries[k * n + k] -= mu;
        }
        (mu, shifted)
    }

    /// `e^μ · exp(N)`; the traceless part goes through scaled Taylor
    /// and repeated squaring.
    pub fn exp(&self) -> Self {
        let (mu, shifted) = self.split_trace();
        let norm = shifted.inf_norm();
        let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
        let scaled = shifted.scale(Complex64::new(0.5f64.powi(squarings), 0.0));

        let identity = Self::identity(self.rep, self.direction);
        let mut acc = identity.clone();
        for k in (1..=EXP_TERMS).rev() {
            acc = identity.add(&scaled.matmul(&acc).scale(Complex64::new(1.0 / k as f64, 0.0)));
        }
        for _ in 0..squarings {
            acc = acc.matmul(&acc);
        }
        acc.scale(mu.exp())
    }

    fn inf_norm(&self) -> f64 {
        let n = self.dim();
        (0..n).map(|i| self.entries[i * n..(i + 1) * n].iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
    }
}

impl fmt::Display for MatrixElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        write!(f, "[")?;
        for i in 0..n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// `Qₙ = c_i·Iₙ + c_j·Jₙ + c_k·Kₙ`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuaternionMatrix {
    pub direction: UnitQuaternion,
    pub matrix: MatrixElement,
}

impl QuaternionMatrix {
    pub fn new(direction: UnitQuaternion, rep: Representation) -> Self {
        let [i, j, k] = rep.basis();
        let c = |x: f64| Complex64::new(x, 0.0);
        let mut matrix = i.scale(c(direction.ci())).add(&j.scale(c(direction.cj()))).add(&k.scale(c(direction.ck())));
        matrix.direction = direction;
        QuaternionMatrix { direction, matrix }
    }

    /// `Q⁻¹ = −Q`.
    pub fn inverse(&self) -> MatrixElement {
        self.matrix.scale(-ONE)
    }
}

/// `z·𝟙ₙ + h·Qₙ`.
pub fn embed_matrix(z: Complex64, h: f64, q: UnitQuaternion, rep: Representation) -> Result<MatrixElement> {
    if h.is_nan() || h < 0.0 {
        return Err(QsdError::InvalidArgument(format!("step h = {h} must be non-negative")));
    }
    bicomplex_to_matrix(&Bicomplex::step(z, h, q), rep)
}

/// `z1·𝟙ₙ + z2·Qₙ`.
pub fn bicomplex_to_matrix(w: &Bicomplex, rep: Representation) -> Result<MatrixElement> {
    let q = QuaternionMatrix::new(w.direction, rep);
    let m = MatrixElement::scalar(rep, w.z1, w.direction).add(&q.matrix.scale(w.z2));
    Ok(m)
}

/// `(tr W / n, tr(W·Q⁻¹) / n)`.
pub fn matrix_to_bicomplex(m: &MatrixElement) -> Bicomplex {
    let q = QuaternionMatrix::new(m.direction, m.rep);
    let z1 = extract_complex(m);
    let z2 = extract_complex(&m.matmul(&q.inverse()));
    Bicomplex::new(z1, z2, m.direction)
}

/// `tr W / n`.
pub fn extract_complex(m: &MatrixElement) -> Complex64 {
    m.trace() / m.dim() as f64
}

/// Functions with a genuine matrix implementation.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixFunction {
    Exp,
    Sin,
    Cos,
    /// Coefficients in ascending powers.
    Polynomial(Vec<Complex64>),
    Inverse,
}

impl MatrixFunction {
    /// Logarithm and square root are refused: they go through the closed
    /// forms on the bicomplex value instead.
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "exp" => Ok(MatrixFunction::Exp),
            "sin" => Ok(MatrixFunction::Sin),
            "cos" => Ok(MatrixFunction::Cos),
            "inv" | "inverse" => Ok(MatrixFunction::Inverse),
            other => match FunctionTag::parse(other) {
                Ok(FunctionTag::Poly(c)) => Ok(MatrixFunction::Polynomial(c)),
                _ => Err(QsdError::InvalidArgument(format!("no matrix implementation of '{other}'"))),
            },
        }
    }
}

/// `(sin N, cos N)` from the exponential combinations `(e^{iN} ∓ e^{−iN})/…`.
fn trig_of_traceless(n: &MatrixElement) -> (MatrixElement, MatrixElement) {
    let (p, m) = (n.scale(I).exp(), n.scale(-I).exp());
    (p.sub(&m).scale(Complex64::new(0.0, -0.5)), p.add(&m).scale(Complex64::new(0.5, 0.0)))
}

pub fn matrix_function(f: &MatrixFunction, a: &MatrixElement) -> Result<MatrixElement> {
    let out = match f {
        MatrixFunction::Exp => a.exp(),
        MatrixFunction::Sin => {
            let (mu, n) = a.split_trace();
            let (s, c) = trig_of_traceless(&n);
            s.scale(mu.cos()).add(&c.scale(mu.sin()))
        }
        MatrixFunction::Cos => {
            let (mu, n) = a.split_trace();
            let (s, c) = trig_of_traceless(&n);
            c.scale(mu.cos()).sub(&s.scale(mu.sin()))
        }
        MatrixFunction::Polynomial(coeffs) => {
            let Some((&last, rest)) = coeffs.split_last() else {
                return Err(QsdError::InvalidArgument("polynomial needs coefficients".into()));
            };
            let mut acc = MatrixElement::scalar(a.rep, last, a.direction);
            for &c in rest.iter().rev() {
                acc = acc.matmul(a).add(&MatrixElement::scalar(a.rep, c, a.direction));
            }
            acc
        }
        MatrixFunction::Inverse => a.inverse()?,
    };
    Ok(out)
}

/// `tr[f(z𝟙 + hQ)·Q⁻¹] / (n·h)`.
pub fn matrix_qsd_derivative(f: &FunctionTag, z: Complex64, h: f64, q: UnitQuaternion, rep: Representation) -> Result<Complex64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(QsdError::InvalidArgument(format!("step h = {h} must be positive and finite")));
    }
    let a = embed_matrix(z, h, q, rep)?;
    let w = f.eval(&a)?;
    let qinv = QuaternionMatrix::new(q, rep).inverse();
    let d = extract_complex(&w.matmul(&qinv)) / h;
    if d.is_finite() {
        Ok(d)
    } else {
        Err(QsdError::EvaluationFailure(format!("non-finite derivative {d}")))
    }
}

/// Both sides of the trace / imaginary-step identity for the 2×2
/// representation: `tr[f(z𝟙 + hQ₂)Q₂⁻¹]/(2h)` and
/// `(f(z + ih) − f(z − ih))/(2ih)`.
pub fn lemma_equivalence_check(f: &FunctionTag, z: Complex64, h: f64, theta: f64, phi: f64) -> Result<(Complex64, Complex64)> {
    if !(1e-6..=1e-1).contains(&h) {
        return Err(QsdError::InvalidArgument(format!("h = {h} outside [1e-6, 1e-1]")));
    }
    let q = UnitQuaternion::from_angles(theta, phi)?;
    let lhs = matrix_qsd_derivative(f, z, h, q, Representation::Pauli2)?;
    let rhs = central_difference(f, z, 2.0 * h, 1, I)?;
    Ok((lhs, rhs))
}

impl MatrixElement {
    fn through_bicomplex(&self, f: impl FnOnce(&Bicomplex) -> Result<Bicomplex>) -> Result<Self> {
        bicomplex_to_matrix(&f(&matrix_to_bicomplex(self))?, self.rep)
    }
}

/// Arithmetic and exp/sin/cos/inverse act on the matrices; the remaining
/// functions use the bicomplex closed forms.
impl StepAlgebra for MatrixElement {
    fn lift(&self, z: Complex64) -> Self {
        MatrixElement::scalar(self.rep, z, self.direction)
    }
    fn add(&self, other: &Self) -> Self {
        MatrixElement::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        MatrixElement::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.matmul(other)
    }
    fn scale(&self, s: Complex64) -> Self {
        MatrixElement::scale(self, s)
    }
    fn inv(&self) -> Result<Self> {
        matrix_function(&MatrixFunction::Inverse, self)
    }
    fn exp(&self) -> Result<Self> {
        matrix_function(&MatrixFunction::Exp, self)
    }
    fn sin(&self) -> Result<Self> {
        matrix_function(&MatrixFunction::Sin, self)
    }
    fn cos(&self) -> Result<Self> {
        matrix_function(&MatrixFunction::Cos, self)
    }
    fn tan(&self) -> Result<Self> {
        Ok(StepAlgebra::sin(self)?.matmul(&StepAlgebra::cos(self)?.inverse()?))
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
