//! Command-line front-end: one-shot derivatives and the sweep experiments.
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use qsd::engine::{self, DiffRequest, FunctionTag};
use qsd::experiments::{self, BackendSpec, ExperimentConfig, ExperimentKind, OutputFormat, StepRange};
use qsd::matrix::lemma_equivalence_check;
use qsd::QsdError;

const LEMMA_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(name = "qsd", version, about = "Quaternionic-step derivatives and convergence experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Differentiate one function at one point
    Diff(Common),
    /// Error against step size, per backend
    SweepH(Common),
    /// Error over step directions (θ, φ)
    SweepAngle(Common),
    /// Logarithm derivative on a grid around the origin
    GridLog(Common),
    /// Trace formula against the imaginary-step central difference
    LemmaCheck(Common),
}

#[derive(Args)]
struct Common {
    /// Function tag: lyness, exp, sin, cos, tan, ln, sqrt, arcsin, arccos, arctan, inv, poly:c0,c1,...
    #[arg(long = "fn")]
    function: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    z_im: Option<f64>,
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    h_start: Option<f64>,
    #[arg(long)]
    h_stop: Option<f64>,
    #[arg(long)]
    h_points: Option<usize>,
    /// Polar angle of the step direction, in [0, π]
    #[arg(long)]
    theta: Option<f64>,
    /// Azimuth of the step direction, in [0, 2π)
    #[arg(long)]
    phi: Option<f64>,
    #[arg(long)]
    theta_points: Option<usize>,
    #[arg(long)]
    phi_points: Option<usize>,
    /// Comma-separated backends, e.g. bicomplex,pauli2@k,central2
    #[arg(long)]
    backend: Option<String>,
    /// Order used by a bare `central` backend
    #[arg(long, default_value_t = 1)]
    order: u32,
    /// Half-width of the logarithm grid
    #[arg(long)]
    window: Option<f64>,
    #[arg(long)]
    grid_points: Option<usize>,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or jsonl
    #[arg(long, default_value = "csv")]
    format: String,
}

impl Common {
    fn config(&self, kind: ExperimentKind) -> qsd::Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::new(kind);
        if let Some(f) = &self.function {
            cfg.function = FunctionTag::parse(f)?;
        }
        if let Some(b) = &self.backend {
            cfg.backends = BackendSpec::parse_list(b, self.order)?;
        } else if self.order < 1 {
            return Err(QsdError::InvalidArgument("order must be at least 1".into()));
        }
        cfg.z = Complex64::new(self.z_re.unwrap_or(cfg.z.re), self.z_im.unwrap_or(cfg.z.im));
        cfg.h = self.h.unwrap_or(cfg.h);
        cfg.h_range = StepRange {
            start: self.h_start.unwrap_or(cfg.h_range.start),
            stop: self.h_stop.unwrap_or(cfg.h_range.stop),
            points: self.h_points.unwrap_or(cfg.h_range.points),
        };
        cfg.theta = self.theta.unwrap_or(cfg.theta);
        cfg.phi = self.phi.unwrap_or(cfg.phi);
        cfg.theta_points = self.theta_points.unwrap_or(cfg.theta_points);
        cfg.phi_points = self.phi_points.unwrap_or(cfg.phi_points);
        cfg.window = self.window.unwrap_or(cfg.window);
        cfg.grid_points = self.grid_points.unwrap_or(cfg.grid_points);
        cfg.out = self.out.clone();
        cfg.format = self.format.parse::<OutputFormat>()?;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn exit_code(e: &QsdError) -> ExitCode {
    match e {
        QsdError::InvalidArgument(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn fmt_c(z: Complex64) -> String {
    format!("{} {}", z.re, z.im)
}

fn cmd_diff(cfg: &ExperimentConfig) -> qsd::Result<()> {
    let spec = cfg.backends[0];
    let req = DiffRequest {
        function: cfg.function.clone(),
        z: cfg.z,
        h: cfg.h,
        direction: spec.direction.map_or_else(|| cfg.direction(), Ok)?,
        backend: spec.backend,
    };
    let r = engine::differentiate(&req)?;
    println!("estimate {}", fmt_c(r.estimate));
    if let Some(reference) = r.reference {
        println!("reference {}", fmt_c(reference));
    }
    if let Some(e) = r.rel_err {
        println!("rel_err {e}");
    }
    match req.function.reference_nth_derivative(req.z, req.backend.order()) {
        Some(reference) if !reference.is_finite() => {
            Err(QsdError::EvaluationFailure(format!("{} is singular at z = {}", req.function, req.z)))
        }
        _ => Ok(()),
    }
}

fn cmd_sweep(cfg: &ExperimentConfig) -> qsd::Result<()> {
    let records = experiments::run(cfg)?;
    match &cfg.out {
        Some(path) => {
            let file =
                File::create(path).map_err(|e| QsdError::EvaluationFailure(format!("cannot create {}: {e}", path.display())))?;
            experiments::write_records(&records, cfg.format, file)
        }
        None => experiments::write_records(&records, cfg.format, io::stdout().lock()),
    }
}

fn cmd_lemma(cfg: &ExperimentConfig) -> qsd::Result<bool> {
    let (lhs, rhs) = lemma_equivalence_check(&cfg.function, cfg.z, cfg.h, cfg.theta, cfg.phi)?;
    let discrepancy = (lhs - rhs).norm() / rhs.norm();
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "lhs {}", fmt_c(lhs));
    let _ = writeln!(out, "rhs {}", fmt_c(rhs));
    let _ = writeln!(out, "discrepancy {discrepancy:e}");
    Ok(discrepancy <= LEMMA_TOL)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, common) = match &cli.command {
        Command::Diff(c) => (ExperimentKind::Diff, c),
        Command::SweepH(c) => (ExperimentKind::SweepH, c),
        Command::SweepAngle(c) => (ExperimentKind::SweepAngle, c),
        Command::GridLog(c) => (ExperimentKind::GridLog, c),
        Command::LemmaCheck(c) => (ExperimentKind::LemmaCheck, c),
    };
    let result = common.config(kind).and_then(|cfg| match kind {
        ExperimentKind::Diff => cmd_diff(&cfg).map(|_| true),
        ExperimentKind::LemmaCheck => cmd_lemma(&cfg),
        _ => cmd_sweep(&cfg).map(|_| true),
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: discrepancy above {LEMMA_TOL}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error ({}): {e}", e.status());
            exit_code(&e)
        }
    }
}
