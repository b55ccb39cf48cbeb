//! The differentiation front-end: quaternionic step over the algebraic and
//! matrix backends, the complex-step baseline, central differences and the
//! relative-error metric.

mod algebra;
mod registry;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

pub use algebra::{StepAlgebra, StepMultivector};
pub use registry::{function_registry, lookup, FunctionTag, RegistryEntry};

use crate::clifford::{Bicomplex, UnitQuaternion};
use crate::error::{QsdError, Result};
use crate::matrix::{self, Representation};

/// Step used when none is given.
pub const DEFAULT_STEP: f64 = 1e-20;

/// Where `f(z + h·q)` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Bicomplex,
    Multivector,
    Pauli2,
    Real4,
    /// Real-axis central difference of the given order.
    Central {
        order: u32,
    },
    /// Complex step; real arguments only.
    Csd,
}

impl Backend {
    pub fn is_quaternionic(&self) -> bool {
        matches!(self, Backend::Bicomplex | Backend::Multivector | Backend::Pauli2 | Backend::Real4)
    }

    /// Derivative order the backend estimates.
    pub fn order(&self) -> u32 {
        match self {
            Backend::Central { order } => *order,
            _ => 1,
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Bicomplex => f.write_str("bicomplex"),
            Backend::Multivector => f.write_str("multivector"),
            Backend::Pauli2 => f.write_str("pauli2"),
            Backend::Real4 => f.write_str("real4"),
            Backend::Central { order } => write!(f, "central{order}"),
            Backend::Csd => f.write_str("csd"),
        }
    }
}

impl FromStr for Backend {
    type Err = QsdError;

    /// `bicomplex`, `multivector`, `pauli2`, `real4`, `csd`, `central`
    /// (order 1) or `central<n>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Ok(match s.as_str() {
            "bicomplex" => Backend::Bicomplex,
            "multivector" | "ga" => Backend::Multivector,
            "pauli2" => Backend::Pauli2,
            "real4" => Backend::Real4,
            "csd" => Backend::Csd,
            "central" => Backend::Central { order: 1 },
            other => {
                let order = other
                    .strip_prefix("central")
                    .and_then(|n| n.parse::<u32>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| QsdError::InvalidArgument(format!("unknown backend '{other}'")))?;
                Backend::Central { order }
            }
        })
    }
}

/// `(1/h)·⟨f(z + h·q)·q⁻¹⟩_C`.
pub fn qsd_derivative(f: &FunctionTag, z: Complex64, h: f64, q: UnitQuaternion, backend: Backend) -> Result<Complex64> {
    check_step(h)?;
    let d = match backend {
        Backend::Bicomplex => {
            let w = f.eval(&Bicomplex::step(z, h, q))?;
            (w * -Bicomplex::unit_q(q)).z1 / h
        }
        Backend::Multivector => {
            let w = f.eval(&StepMultivector::from_bicomplex(&Bicomplex::step(z, h, q)))?;
            w.value.geometric_product(&-q.bivector()).complex_part() / h
        }
        Backend::Pauli2 => matrix::matrix_qsd_derivative(f, z, h, q, Representation::Pauli2)?,
        Backend::Real4 => matrix::matrix_qsd_derivative(f, z, h, q, Representation::Real4)?,
        other => {
            return Err(QsdError::InvalidArgument(format!("{other} is not a quaternionic backend")));
        }
    };
    finite(d)
}

/// `Im f(x + ih) / h`.
pub fn csd_derivative(f: &FunctionTag, x: f64, h: f64) -> Result<f64> {
    check_step(h)?;
    if !f.is_real_analytic() {
        return Err(QsdError::InvalidArgument(format!("{f} is not real on the real axis")));
    }
    if !x.is_finite() {
        return Err(QsdError::InvalidArgument(format!("x = {x}")));
    }
    let d = f.eval(&Complex64::new(x, h))?.im / h;
    finite(Complex64::new(d, 0.0)).map(|c| c.re)
}

/// `δⁿ f(z) / (h·u)ⁿ`, where `δⁿ f(z) = Σᵢ (−1)ⁱ C(n,i) f(z + (n/2 − i)·h·u)`
/// and `u` is a unit complex step direction (1 for the real axis).
pub fn central_difference(f: &FunctionTag, z: Complex64, h: f64, order: u32, direction: Complex64) -> Result<Complex64> {
    check_step(h)?;
    if order == 0 {
        return Err(QsdError::InvalidArgument("difference order must be at least 1".into()));
    }
    if !direction.is_finite() || (direction.norm() - 1.0).abs() > 1e-12 {
        return Err(QsdError::InvalidArgument(format!("step direction {direction} is not a unit")));
    }
    let n = order as i32;
    let step = direction * h;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut binom = 1.0;
    for i in 0..=n {
        let offset = f64::from(n) / 2.0 - f64::from(i);
        let term = f.eval(&(z + step * offset))? * binom;
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        binom = binom * f64::from(n - i) / f64::from(i + 1);
    }
    finite(sum / step.powi(n))
}

/// `|est − ref| / |ref|`.
pub fn relative_error(est: Complex64, reference: Complex64) -> Result<f64> {
    if reference == Complex64::new(0.0, 0.0) {
        return Err(QsdError::UndefinedReference);
    }
    Ok((est - reference).norm() / reference.norm())
}

/// One derivative evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffRequest {
    pub function: FunctionTag,
    pub z: Complex64,
    pub h: f64,
    pub direction: UnitQuaternion,
    pub backend: Backend,
}

impl DiffRequest {
    /// Default step and direction on the bicomplex backend.
    pub fn new(function: FunctionTag, z: Complex64) -> Self {
        DiffRequest { function, z, h: DEFAULT_STEP, direction: UnitQuaternion::J, backend: Backend::Bicomplex }
    }

    pub fn with_step(mut self, h: f64) -> Self {
        self.h = h;
        self
    }

    pub fn with_direction(mut self, direction: UnitQuaternion) -> Self {
        self.direction = direction;
        self
    }

    pub fn with_backend(mut self, backend: Backend) -> Self {
        self.backend = backend;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffResult {
    pub estimate: Complex64,
    /// Closed-form derivative, when one exists and is finite.
    pub reference: Option<Complex64>,
    /// `None` when there is no reference or it is zero.
    pub rel_err: Option<f64>,
}

/// The derivative estimate alone, dispatched on the backend.
pub fn estimate(req: &DiffRequest) -> Result<Complex64> {
    Ok(match req.backend {
        Backend::Central { order } => central_difference(&req.function, req.z, req.h, order, Complex64::new(1.0, 0.0))?,
        Backend::Csd => {
            if req.z.im != 0.0 {
                return Err(QsdError::InvalidArgument("the complex step needs a real argument".into()));
            }
            Complex64::new(csd_derivative(&req.function, req.z.re, req.h)?, 0.0)
        }
        backend => qsd_derivative(&req.function, req.z, req.h, req.direction, backend)?,
    })
}

pub fn differentiate(req: &DiffRequest) -> Result<DiffResult> {
    let estimate = estimate(req)?;
    let reference = req.function.reference_nth_derivative(req.z, req.backend.order()).filter(|r| r.is_finite());
    let rel_err = reference.and_then(|r| relative_error(estimate, r).ok());
    Ok(DiffResult { estimate, reference, rel_err })
}

fn check_step(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(QsdError::InvalidArgument(format!("step h = {h} must be positive and finite")))
    }
}

fn finite(d: Complex64) -> Result<Complex64> {
    if d.is_finite() {
        Ok(d)
    } else {
        Err(QsdError::EvaluationFailure(format!("non-finite derivative {d}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn lyness_point() -> Complex64 {
        c(FRAC_PI_4, PI / 3.0)
    }

    #[test]
    fn exp_at_zero() {
        for backend in [Backend::Bicomplex, Backend::Multivector, Backend::Pauli2, Backend::Real4] {
            let d = qsd_derivative(&FunctionTag::Exp, c(0.0, 0.0), 1e-20, UnitQuaternion::J, backend).unwrap();
            assert_eq!(d, c(1.0, 0.0), "{backend}");
        }
    }

    #[test]
    fn lyness_machine_precision() {
        let z = lyness_point();
        let d = qsd_derivative(&FunctionTag::Lyness, z, 1e-20, UnitQuaternion::J, Backend::Bicomplex).unwrap();
        let e = relative_error(d, FunctionTag::Lyness.reference_derivative(z)).unwrap();
        assert!(e <= 1e-13, "{e}");
    }

    #[test]
    fn ln_on_branch_cut() {
        let d = qsd_derivative(&FunctionTag::Ln, c(-0.5, 0.0), 1e-20, UnitQuaternion::J, Backend::Bicomplex).unwrap();
        assert!((d - c(-2.0, 0.0)).norm() <= 1e-13, "{d}");
    }

    #[test]
    fn ln_at_origin_sees_only_the_step() {
        // Ln(h·q) = ln h + q·π/2, so the estimate is π/(2h) while 1/z is undefined
        let d = qsd_derivative(&FunctionTag::Ln, c(0.0, 0.0), 1e-20, UnitQuaternion::J, Backend::Bicomplex).unwrap();
        assert!((d.re - std::f64::consts::FRAC_PI_2 * 1e20).abs() <= 1e5, "{d}");
        let r = differentiate(&DiffRequest::new(FunctionTag::Ln, c(0.0, 0.0))).unwrap();
        assert_eq!((r.reference, r.rel_err), (None, None));
    }

    #[test]
    fn csd_examples() {
        assert_eq!(csd_derivative(&FunctionTag::Exp, 0.0, 1e-20).unwrap(), 1.0);
        assert_eq!(csd_derivative(&FunctionTag::Sin, 0.0, 1e-20).unwrap(), 1.0);
        let q = qsd_derivative(&FunctionTag::Lyness, c(0.5, 0.0), 1e-20, UnitQuaternion::J, Backend::Bicomplex).unwrap();
        let s = csd_derivative(&FunctionTag::Lyness, 0.5, 1e-20).unwrap();
        assert!((q.re - s).abs() <= 2.0 * f64::EPSILON * s.abs(), "{q} {s}");
        let complex_poly = FunctionTag::Poly(vec![c(0.0, 1.0)]);
        assert!(csd_derivative(&complex_poly, 0.0, 1e-20).is_err());
    }

    #[test]
    fn central_difference_examples() {
        let z = c(0.3, -1.7);
        let d = central_difference(&FunctionTag::square(), z, 1e-3, 1, c(1.0, 0.0)).unwrap();
        assert!((d - 2.0 * z).norm() <= 1e-12 * z.norm());

        let d2 = central_difference(&FunctionTag::Exp, c(0.0, 0.0), 1e-4, 2, c(1.0, 0.0)).unwrap();
        assert!((d2 - c(1.0, 0.0)).norm() < 1e-6, "{d2}");

        let z = lyness_point();
        let r = FunctionTag::Lyness.reference_derivative(z);
        let e8 = relative_error(central_difference(&FunctionTag::Lyness, z, 1e-8, 1, c(1.0, 0.0)).unwrap(), r).unwrap();
        let e12 = relative_error(central_difference(&FunctionTag::Lyness, z, 1e-12, 1, c(1.0, 0.0)).unwrap(), r).unwrap();
        assert!(e8 < 1e-7 && e12 > 10.0 * e8, "{e8} {e12}");
    }

    #[test]
    fn imaginary_direction_difference() {
        let z = c(0.5, 0.2);
        let d = central_difference(&FunctionTag::Exp, z, 1e-4, 1, c(0.0, 1.0)).unwrap();
        assert!((d - z.exp()).norm() < 1e-8);
        assert!(central_difference(&FunctionTag::Exp, z, 1e-4, 1, c(0.0, 2.0)).is_err());
        assert!(central_difference(&FunctionTag::Exp, z, 1e-4, 0, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn relative_error_examples() {
        assert_eq!(relative_error(c(1.0, 2.0), c(1.0, 2.0)).unwrap(), 0.0);
        assert!((relative_error(c(1.01, 0.0), c(1.0, 0.0)).unwrap() - 0.01).abs() < 1e-15);
        let e = relative_error(c(1.0 + 1e-15, 0.0), c(1.0, 0.0)).unwrap();
        assert!((e - 1e-15).abs() < 2.3e-16);
        assert!(matches!(relative_error(c(1.0, 0.0), c(0.0, 0.0)), Err(QsdError::UndefinedReference)));
    }

    #[test]
    fn backend_parse_round_trip() {
        for b in [
            Backend::Bicomplex,
            Backend::Multivector,
            Backend::Pauli2,
            Backend::Real4,
            Backend::Central { order: 1 },
            Backend::Central { order: 3 },
            Backend::Csd,
        ] {
            assert_eq!(b.to_string().parse::<Backend>().unwrap(), b);
        }
        assert_eq!("central".parse::<Backend>().unwrap(), Backend::Central { order: 1 });
        assert!("central0".parse::<Backend>().is_err());
        assert!("schur".parse::<Backend>().is_err());
    }

    #[test]
    fn bad_steps_rejected() {
        for h in [0.0, -1e-20, f64::NAN, f64::INFINITY] {
            assert!(qsd_derivative(&FunctionTag::Exp, c(0.0, 0.0), h, UnitQuaternion::J, Backend::Bicomplex).is_err());
        }
    }

    #[test]
    fn differentiate_reports_error() {
        let req = DiffRequest::new(FunctionTag::Exp, c(0.0, 0.0));
        let r = differentiate(&req).unwrap();
        assert_eq!(r.estimate, c(1.0, 0.0));
        assert_eq!(r.rel_err, Some(0.0));

        let csd = differentiate(&req.clone().with_backend(Backend::Csd).with_step(1e-20)).unwrap();
        assert_eq!(csd.estimate, c(1.0, 0.0));
        let bad = DiffRequest::new(FunctionTag::Exp, c(0.0, 1.0)).with_backend(Backend::Csd);
        assert!(matches!(differentiate(&bad), Err(QsdError::InvalidArgument(_))));
    }
}
