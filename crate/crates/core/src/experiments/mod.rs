//! Step-size sweeps, direction sweeps and the logarithm grid study, emitted
//! as flat records.

mod config;
mod output;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

pub use config::{BackendSpec, ExperimentConfig, ExperimentKind, OutputFormat, StepRange};
pub use output::{write_records, CSV_HEADER};

use crate::clifford::UnitQuaternion;
use crate::engine::{self, DiffRequest, FunctionTag};
use crate::error::{QsdError, Result};

/// One output row. `rel_err` (and the estimate, on failure) is NaN when
/// undefined; `status` says why.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub experiment: String,
    #[serde(rename = "fn")]
    pub function: String,
    pub backend: String,
    pub z_re: f64,
    pub z_im: f64,
    pub h: f64,
    pub theta: f64,
    pub phi: f64,
    pub est_re: f64,
    pub est_im: f64,
    pub ref_re: f64,
    pub ref_im: f64,
    pub rel_err: f64,
    pub status: String,
}

impl SweepRecord {
    pub fn estimate(&self) -> Complex64 {
        Complex64::new(self.est_re, self.est_im)
    }

    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

/// Evaluates one point; failures are recorded in the row, never raised.
pub fn evaluate_point(
    experiment: ExperimentKind,
    function: &FunctionTag,
    spec: &BackendSpec,
    z: Complex64,
    h: f64,
    direction: UnitQuaternion,
) -> SweepRecord {
    let (theta, phi) = direction.to_angles();
    let req = DiffRequest { function: function.clone(), z, h, direction, backend: spec.backend };
    let nan = Complex64::new(f64::NAN, f64::NAN);
    let reference = function.reference_nth_derivative(z, spec.backend.order()).unwrap_or(nan);
    let (estimate, rel_err, status) = match engine::estimate(&req) {
        Err(e) => (nan, f64::NAN, e.status()),
        Ok(est) if !reference.is_finite() => (est, f64::NAN, "nan-inf"),
        Ok(est) => match engine::relative_error(est, reference) {
            Ok(e) => (est, e, "ok"),
            Err(e) => (est, f64::NAN, e.status()),
        },
    };
    SweepRecord {
        experiment: experiment.id().to_string(),
        function: function.to_string(),
        backend: spec.to_string(),
        z_re: z.re,
        z_im: z.im,
        h,
        theta,
        phi,
        est_re: estimate.re,
        est_im: estimate.im,
        ref_re: reference.re,
        ref_im: reference.im,
        rel_err,
        status: status.to_string(),
    }
}

/// Every backend over the step range; rows ordered by backend, then
/// descending `h`.
pub fn run_sweep_h(cfg: &ExperimentConfig) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    let default_dir = cfg.direction()?;
    let steps = cfg.h_range.values();
    let points: Vec<(BackendSpec, f64)> = cfg.backends.iter().flat_map(|spec| steps.iter().map(move |&h| (*spec, h))).collect();
    Ok(points
        .par_iter()
        .map(|(spec, h)| {
            let q = spec.direction.unwrap_or(default_dir);
            evaluate_point(ExperimentKind::SweepH, &cfg.function, spec, cfg.z, *h, q)
        })
        .collect())
}

/// Every backend over the (θ, φ) grid at step `h`; rows ordered by
/// backend, θ, then φ.
pub fn run_sweep_angle(cfg: &ExperimentConfig) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    let (thetas, phis) = (cfg.theta_grid(), cfg.phi_grid());
    let mut points = Vec::with_capacity(cfg.backends.len() * thetas.len() * phis.len());
    for spec in &cfg.backends {
        for &t in &thetas {
            for &p in &phis {
                points.push((*spec, UnitQuaternion::from_angles(t, p)?, t, p));
            }
        }
    }
    Ok(points
        .par_iter()
        .map(|(spec, q, t, p)| {
            let mut r = evaluate_point(ExperimentKind::SweepAngle, &cfg.function, spec, cfg.z, cfg.h, *q);
            // keep the grid angles rather than the ones recovered from q
            r.theta = *t;
            r.phi = *p;
            r
        })
        .collect())
}

/// The function (normally `ln`) over a square grid around the origin;
/// rows ordered by backend, Re z, then Im z.
pub fn run_grid_log(cfg: &ExperimentConfig) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    let q = cfg.direction()?;
    let axis = cfg.log_grid();
    let mut points = Vec::with_capacity(cfg.backends.len() * axis.len() * axis.len());
    for spec in &cfg.backends {
        for &re in &axis {
            for &im in &axis {
                points.push((*spec, Complex64::new(re, im)));
            }
        }
    }
    Ok(points.par_iter().map(|(spec, z)| evaluate_point(ExperimentKind::GridLog, &cfg.function, spec, *z, cfg.h, q)).collect())
}

/// Dispatches on `cfg.experiment`.
pub fn run(cfg: &ExperimentConfig) -> Result<Vec<SweepRecord>> {
    match cfg.experiment {
        ExperimentKind::SweepH => run_sweep_h(cfg),
        ExperimentKind::SweepAngle => run_sweep_angle(cfg),
        ExperimentKind::GridLog => run_grid_log(cfg),
        other => Err(QsdError::InvalidArgument(format!("{other} is not a sweep"))),
    }
}
