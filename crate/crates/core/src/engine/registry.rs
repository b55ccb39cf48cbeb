use std::fmt;

use num_complex::Complex64;

use super::algebra::StepAlgebra;
use crate::clifford::Bicomplex;
use crate::error::{QsdError, Result};

/// Functions available to the differentiation front-end.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionTag {
    /// `g(z) = e^z / (cos³z + sin³z)`, the classic complex-step trial function.
    Lyness,
    Exp,
    Sin,
    Cos,
    Tan,
    Ln,
    Sqrt,
    Arcsin,
    Arccos,
    Arctan,
    Inv,
    /// Polynomial with coefficients in ascending powers.
    Poly(Vec<Complex64>),
}

/// One row of [`function_registry`].
#[derive(Debug, Clone, PartialEq)]
pub struct RegistryEntry {
    pub name: &'static str,
    pub tag: FunctionTag,
}

impl RegistryEntry {
    pub fn evaluate(&self, w: &Bicomplex) -> Result<Bicomplex> {
        self.tag.eval(w)
    }

    pub fn reference_derivative(&self, z: Complex64) -> Complex64 {
        self.tag.reference_derivative(z)
    }
}

/// All registered functions; `poly` is listed with the sample `1 + z + z²`.
pub fn function_registry() -> Vec<RegistryEntry> {
    use FunctionTag::*;
    let one = Complex64::new(1.0, 0.0);
    vec![
        RegistryEntry { name: "lyness", tag: Lyness },
        RegistryEntry { name: "exp", tag: Exp },
        RegistryEntry { name: "sin", tag: Sin },
        RegistryEntry { name: "cos", tag: Cos },
        RegistryEntry { name: "tan", tag: Tan },
        RegistryEntry { name: "ln", tag: Ln },
        RegistryEntry { name: "sqrt", tag: Sqrt },
        RegistryEntry { name: "arcsin", tag: Arcsin },
        RegistryEntry { name: "arccos", tag: Arccos },
        RegistryEntry { name: "arctan", tag: Arctan },
        RegistryEntry { name: "inv", tag: Inv },
        RegistryEntry { name: "poly", tag: Poly(vec![one, one, one]) },
    ]
}

/// Looks up a tag by name. Polynomials are written `poly:c0,c1,...` with
/// real coefficients in ascending powers.
pub fn lookup(name: &str) -> Result<FunctionTag> {
    FunctionTag::parse(name)
}

impl FunctionTag {
    pub fn parse(name: &str) -> Result<Self> {
        use FunctionTag::*;
        let tag = match name.trim() {
            "lyness" => Lyness,
            "exp" => Exp,
            "sin" => Sin,
            "cos" => Cos,
            "tan" => Tan,
            "ln" | "log" => Ln,
            "sqrt" => Sqrt,
            "arcsin" | "asin" => Arcsin,
            "arccos" | "acos" => Arccos,
            "arctan" | "atan" => Arctan,
            "inv" => Inv,
            other => {
                let Some(coeffs) = other.strip_prefix("poly:") else {
                    return Err(QsdError::InvalidArgument(format!("unknown function '{other}'")));
                };
                let coeffs = coeffs
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<f64>()
                            .map(|x| Complex64::new(x, 0.0))
                            .map_err(|_| QsdError::InvalidArgument(format!("bad polynomial coefficient '{c}'")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if coeffs.is_empty() {
                    return Err(QsdError::InvalidArgument("polynomial needs coefficients".into()));
                }
                Poly(coeffs)
            }
        };
        Ok(tag)
    }

    /// `z²` as a polynomial tag.
    pub fn square() -> Self {
        let zero = Complex64::new(0.0, 0.0);
        FunctionTag::Poly(vec![zero, zero, Complex64::new(1.0, 0.0)])
    }

    /// Real on the real axis, so the complex step applies.
    pub fn is_real_analytic(&self) -> bool {
        match self {
            FunctionTag::Poly(c) => c.iter().all(|c| c.im == 0.0),
            _ => true,
        }
    }

    pub fn eval<A: StepAlgebra>(&self, w: &A) -> Result<A> {
        use FunctionTag::*;
        match self {
            Lyness => {
                let c = w.cos()?;
                let s = w.sin()?;
                let denom = c.mul(&c).mul(&c).add(&s.mul(&s).mul(&s));
                Ok(w.exp()?.mul(&denom.inv()?))
            }
            Exp => w.exp(),
            Sin => w.sin(),
            Cos => w.cos(),
            Tan => w.tan(),
            Ln => w.ln(),
            Sqrt => w.sqrt(),
            Arcsin => w.asin(),
            Arccos => w.acos(),
            Arctan => w.atan(),
            Inv => w.inv(),
            Poly(coeffs) => {
                let mut iter = coeffs.iter().rev();
                let mut acc = w.lift(*iter.next().expect("non-empty polynomial"));
                for &c in iter {
                    acc = acc.mul(w).add(&w.lift(c));
                }
                Ok(acc)
            }
        }
    }

    /// Closed-form first derivative in complex arithmetic.
    pub fn reference_derivative(&self, z: Complex64) -> Complex64 {
        use FunctionTag::*;
        let one = Complex64::new(1.0, 0.0);
        match self {
            Lyness => {
                let (s, c) = (z.sin(), z.cos());
                let denom = c * c * c + s * s * s;
                let g = z.exp() / denom;
                g * (one - 3.0 * (s * s * c - c * c * s) / denom)
            }
            Exp => z.exp(),
            Sin => z.cos(),
            Cos => -z.sin(),
            Tan => {
                let c = z.cos();
                one / (c * c)
            }
            Ln => one / z,
            Sqrt => one / (2.0 * z.sqrt()),
            Arcsin => one / (one - z * z).sqrt(),
            // matches the branch of −i Ln(z + √(z² − 1)); the factored
            // radicand keeps a +0 imaginary part on the real segment (−1, 0)
            Arccos => Complex64::new(0.0, -1.0) / ((z - one) * (z + one)).sqrt(),
            Arctan => one / (one + z * z),
            Inv => -one / (z * z),
            Poly(coeffs) => poly_derivative(coeffs, z, 1),
        }
    }

    /// Closed-form `n`-th derivative where one is available.
    pub fn reference_nth_derivative(&self, z: Complex64, n: u32) -> Option<Complex64> {
        use FunctionTag::*;
        match (self, n) {
            (_, 0) => None,
            (_, 1) => Some(self.reference_derivative(z)),
            (Exp, _) => Some(z.exp()),
            (Sin, n) => Some(match n % 4 {
                0 => z.sin(),
                1 => z.cos(),
                2 => -z.sin(),
                _ => -z.cos(),
            }),
            (Cos, n) => Some(match n % 4 {
                0 => z.cos(),
                1 => -z.sin(),
                2 => -z.cos(),
                _ => z.sin(),
            }),
            (Poly(c), n) => Some(poly_derivative(c, z, n)),
            _ => None,
        }
    }
}

fn poly_derivative(coeffs: &[Complex64], z: Complex64, n: u32) -> Complex64 {
    let n = n as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, &c) in coeffs.iter().enumerate().skip(n).rev() {
        let falling: f64 = (k + 1 - n..=k).map(|j| j as f64).product();
        acc = acc * z + c * falling;
    }
    acc
}

impl fmt::Display for FunctionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FunctionTag::*;
        let name = match self {
            Lyness => "lyness",
            Exp => "exp",
            Sin => "sin",
            Cos => "cos",
            Tan => "tan",
            Ln => "ln",
            Sqrt => "sqrt",
            Arcsin => "arcsin",
            Arccos => "arccos",
            Arctan => "arctan",
            Inv => "inv",
            Poly(coeffs) => {
                write!(f, "poly:")?;
                for (k, c) in coeffs.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", c.re)?;
                }
                return Ok(());
            }
        };
        f.write_str(name)
    }
}
