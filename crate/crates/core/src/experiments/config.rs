use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;

use crate::clifford::UnitQuaternion;
use crate::engine::{Backend, FunctionTag, DEFAULT_STEP};
use crate::error::{QsdError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Diff,
    SweepH,
    SweepAngle,
    GridLog,
    LemmaCheck,
}

impl ExperimentKind {
    pub fn id(&self) -> &'static str {
        match self {
            ExperimentKind::Diff => "diff",
            ExperimentKind::SweepH => "sweep-h",
            ExperimentKind::SweepAngle => "sweep-angle",
            ExperimentKind::GridLog => "grid-log",
            ExperimentKind::LemmaCheck => "lemma-check",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    JsonLines,
}

impl FromStr for OutputFormat {
    type Err = QsdError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "jsonl" | "json-lines" => Ok(OutputFormat::JsonLines),
            other => Err(QsdError::InvalidArgument(format!("unknown format '{other}'"))),
        }
    }
}

/// A backend, optionally pinned to one of the canonical directions:
/// `pauli2@k`, `real4@i`, `bicomplex`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackendSpec {
    pub backend: Backend,
    pub direction: Option<UnitQuaternion>,
}

impl BackendSpec {
    pub fn new(backend: Backend) -> Self {
        BackendSpec { backend, direction: None }
    }

    pub fn pinned(backend: Backend, direction: UnitQuaternion) -> Self {
        BackendSpec { backend, direction: Some(direction) }
    }

    /// Parses one spec; a bare `central` takes `default_order`.
    pub fn parse(s: &str, default_order: u32) -> Result<Self> {
        let s = s.trim();
        let (name, pin) = match s.split_once('@') {
            Some((name, pin)) => (name, Some(pin)),
            None => (s, None),
        };
        let backend =
            if name.eq_ignore_ascii_case("central") { Backend::Central { order: default_order } } else { name.parse()? };
        let direction = match pin {
            None => None,
            Some(p) => {
                if !backend.is_quaternionic() {
                    return Err(QsdError::InvalidArgument(format!("{backend} has no quaternionic direction")));
                }
                Some(match p {
                    "i" => UnitQuaternion::I,
                    "j" => UnitQuaternion::J,
                    "k" => UnitQuaternion::K,
                    other => return Err(QsdError::InvalidArgument(format!("unknown direction '{other}'"))),
                })
            }
        };
        Ok(BackendSpec { backend, direction })
    }

    /// Comma-separated list.
    pub fn parse_list(s: &str, default_order: u32) -> Result<Vec<Self>> {
        let specs =
            s.split(',').filter(|p| !p.trim().is_empty()).map(|p| Self::parse(p, default_order)).collect::<Result<Vec<_>>>()?;
        if specs.is_empty() {
            return Err(QsdError::InvalidArgument("empty backend list".into()));
        }
        Ok(specs)
    }
}

impl fmt::Display for BackendSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.backend)?;
        match self.direction {
            Some(q) if q == UnitQuaternion::I => write!(f, "@i"),
            Some(q) if q == UnitQuaternion::J => write!(f, "@j"),
            Some(q) if q == UnitQuaternion::K => write!(f, "@k"),
            _ => Ok(()),
        }
    }
}

/// Geometric step range from `start` down to `stop`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRange {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl StepRange {
    pub fn validate(&self) -> Result<()> {
        let ok = self.start.is_finite()
            && self.stop.is_finite()
            && self.start > 0.0
            && self.stop > 0.0
            && self.points >= 1
            && (self.points == 1 || self.start > self.stop);
        if ok {
            Ok(())
        } else {
            Err(QsdError::InvalidArgument(format!(
                "step range {} → {} ({} points) must be positive and decreasing",
                self.start, self.stop, self.points
            )))
        }
    }

    /// The steps, descending. Integer decades are exact (`1e-20`, not
    /// `10^-20` through `powf`).
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let (a, b) = (self.start.log10(), self.stop.log10());
        let last = self.points - 1;
        (0..self.points)
            .map(|k| {
                if k == 0 {
                    return self.start;
                }
                if k == last {
                    return self.stop;
                }
                let e = a + (b - a) * k as f64 / last as f64;
                if (e - e.round()).abs() < 1e-12 {
                    format!("1e{}", e.round() as i64).parse().expect("decade literal")
                } else {
                    10f64.powf(e)
                }
            })
            .collect()
    }
}

/// Everything a sweep needs. Defaults reproduce the reference setup:
/// `z = π/4 + (π/3)i`, `h = 1e-20`, direction 𝐣.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub function: FunctionTag,
    pub backends: Vec<BackendSpec>,
    pub z: Complex64,
    pub h: f64,
    pub h_range: StepRange,
    pub theta: f64,
    pub phi: f64,
    pub theta_points: usize,
    pub phi_points: usize,
    /// Half-width of the square grid of the logarithm study.
    pub window: f64,
    pub grid_points: usize,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentKind) -> Self {
        let (function, backends) = match experiment {
            ExperimentKind::SweepH => (
                FunctionTag::Lyness,
                vec![
                    BackendSpec::new(Backend::Bicomplex),
                    BackendSpec::new(Backend::Multivector),
                    BackendSpec::pinned(Backend::Pauli2, UnitQuaternion::J),
                    BackendSpec::pinned(Backend::Pauli2, UnitQuaternion::K),
                    BackendSpec::new(Backend::Real4),
                    BackendSpec::new(Backend::Central { order: 1 }),
                ],
            ),
            ExperimentKind::SweepAngle => {
                (FunctionTag::Lyness, vec![BackendSpec::new(Backend::Real4), BackendSpec::new(Backend::Pauli2)])
            }
            ExperimentKind::GridLog => (FunctionTag::Ln, vec![BackendSpec::new(Backend::Bicomplex)]),
            ExperimentKind::LemmaCheck => (FunctionTag::Exp, vec![BackendSpec::new(Backend::Pauli2)]),
            ExperimentKind::Diff => (FunctionTag::Lyness, vec![BackendSpec::new(Backend::Bicomplex)]),
        };
        ExperimentConfig {
            experiment,
            function,
            backends,
            z: Complex64::new(FRAC_PI_4, PI / 3.0),
            h: if experiment == ExperimentKind::LemmaCheck { 1e-3 } else { DEFAULT_STEP },
            h_range: StepRange { start: 1e-1, stop: 1e-20, points: 20 },
            theta: FRAC_PI_2,
            phi: FRAC_PI_2,
            theta_points: 20,
            phi_points: 20,
            window: 1e-15,
            grid_points: 41,
            out: None,
            format: OutputFormat::Csv,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(QsdError::InvalidArgument(m));
        if !self.z.is_finite() {
            return bad(format!("z = {} is not finite", self.z));
        }
        if !(self.h > 0.0 && self.h.is_finite()) {
            return bad(format!("h = {} must be positive", self.h));
        }
        self.h_range.validate()?;
        self.direction()?;
        if self.theta_points == 0 || self.phi_points == 0 || self.grid_points == 0 {
            return bad("grid counts must be at least 1".into());
        }
        if !(self.window > 0.0 && self.window.is_finite()) {
            return bad(format!("window = {} must be positive", self.window));
        }
        if self.backends.is_empty() {
            return bad("no backends".into());
        }
        for spec in &self.backends {
            let order = spec.backend.order();
            if order > 1 && self.function.reference_nth_derivative(self.z, order).is_none() {
                return bad(format!("{} has no closed-form derivative of order {order}", self.function));
            }
            if self.experiment == ExperimentKind::SweepAngle && (spec.direction.is_some() || !spec.backend.is_quaternionic()) {
                return bad(format!("{spec} cannot be swept over directions"));
            }
        }
        Ok(())
    }

    /// Direction from the configured angles.
    pub fn direction(&self) -> Result<UnitQuaternion> {
        UnitQuaternion::from_angles(self.theta, self.phi)
    }

    /// `θ_k = kπ/(N−1)`, both ends included; a single point uses `theta`.
    pub fn theta_grid(&self) -> Vec<f64> {
        if self.theta_points == 1 {
            return vec![self.theta];
        }
        let last = (self.theta_points - 1) as f64;
        (0..self.theta_points).map(|k| PI * (k as f64 / last)).collect()
    }

    /// `φ_k = 2πk/M`, end excluded; a single point uses `phi`.
    pub fn phi_grid(&self) -> Vec<f64> {
        if self.phi_points == 1 {
            return vec![self.phi];
        }
        let m = self.phi_points as f64;
        (0..self.phi_points).map(|k| 2.0 * PI * (k as f64 / m)).collect()
    }

    /// Square grid `[−window, window]` per axis; the centre lands on 0
    /// exactly for odd counts.
    pub fn log_grid(&self) -> Vec<f64> {
        if self.grid_points == 1 {
            return vec![0.0];
        }
        let last = (self.grid_points - 1) as f64;
        (0..self.grid_points).map(|k| self.window * (2.0 * k as f64 - last) / last).collect()
    }
}
