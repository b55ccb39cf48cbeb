//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Exits 0 after printing every line so that the remaining test targets
//! still run under `cargo test`; set `QSD_ACCEPTANCE_STRICT=1` to exit 1
//! when any criterion fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::time::Instant;

use num_complex::Complex64;
use qsd::clifford::cayley::{generate_cayley_table, BLADES, CAYLEY};
use qsd::elementary::{self, polar, principal_log};
use qsd::engine::{central_difference, qsd_derivative};
use qsd::experiments::{self, BackendSpec, ExperimentConfig, ExperimentKind};
use qsd::matrix::{self, MatrixElement, Representation};
use qsd::{Backend, Bicomplex, FunctionTag, QsdError, UnitQuaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EPS: f64 = f64::EPSILON;
const I: Complex64 = Complex64::new(0.0, 1.0);

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn z0() -> Complex64 {
    Complex64::new(FRAC_PI_4, PI / 3.0)
}

/// `g' = g·(1 − 3(sin²z cos z − cos²z sin z)/(cos³z + sin³z))`, straight
/// from complex arithmetic.
fn lyness_derivative(z: Complex64) -> Complex64 {
    let (s, c) = (z.sin(), z.cos());
    let den = c * c * c + s * s * s;
    let g = z.exp() / den;
    g * (1.0 - 3.0 * (s * s * c - c * c * s) / den)
}

fn rel(est: Complex64, want: Complex64) -> f64 {
    (est - want).norm() / want.norm()
}

fn steps() -> Vec<f64> {
    (1..=20).map(|k| format!("1e-{k}").parse().unwrap()).collect()
}

fn machine_precision() -> Outcome {
    let z = z0();
    let est = qsd_derivative(&FunctionTag::Lyness, z, 1e-20, UnitQuaternion::J, Backend::Bicomplex).unwrap();
    let e = rel(est, lyness_derivative(z));
    outcome(e <= 1e-13, format!("relative error {e:.2e} (≤ 1e-13)"))
}

fn convergence_shape() -> Outcome {
    let z = z0();
    let want = lyness_derivative(z);
    let hs = steps();
    let qsd: Vec<f64> = hs
        .iter()
        .map(|&h| rel(qsd_derivative(&FunctionTag::Lyness, z, h, UnitQuaternion::J, Backend::Bicomplex).unwrap(), want))
        .collect();
    let floor_at = qsd.iter().position(|&e| e <= 1e-13);
    let qsd_ok = match floor_at {
        // decreasing until the floor, then never leaving it
        Some(k) => qsd[..=k].windows(2).all(|w| w[1] <= w[0]) && qsd[k..].iter().all(|&e| e <= 1e-13),
        None => false,
    };
    let central: Vec<f64> = hs
        .iter()
        .map(|&h| rel(central_difference(&FunctionTag::Lyness, z, h, 1, Complex64::new(1.0, 0.0)).unwrap(), want))
        .collect();
    let (kmin, &emin) = central.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).unwrap();
    let hmin = hs[kmin];
    let min_ok = (1e-9..=1e-7).contains(&hmin);
    let e12 = central[11];
    let rise_ok = e12 >= 100.0 * emin;
    outcome(
        qsd_ok && min_ok && rise_ok,
        format!(
            "QSD floor reached at h = {:e} [{}]; central1 minimum {emin:.2e} at h = {hmin:e} (want [1e-9, 1e-7]) [{}]; \
             central1 at 1e-12 is {e12:.2e}, {:.1} orders above the minimum [{}]",
            floor_at.map_or(f64::NAN, |k| hs[k]),
            if qsd_ok { "ok" } else { "no" },
            if min_ok { "ok" } else { "no" },
            (e12 / emin).log10(),
            if rise_ok { "ok" } else { "no" },
        ),
    )
}

fn taylor_order() -> Outcome {
    let z = z0();
    let want = lyness_derivative(z);
    let pts: Vec<(f64, f64)> = [1e-2, 1e-3, 1e-4, 1e-5]
        .iter()
        .map(|&h: &f64| {
            let e = rel(qsd_derivative(&FunctionTag::Lyness, z, h, UnitQuaternion::J, Backend::Bicomplex).unwrap(), want);
            (h.log10(), e.log10())
        })
        .collect();
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    outcome((1.8..=2.2).contains(&slope), format!("log-log slope {slope:.3} (want [1.8, 2.2])"))
}

fn angular_sweep() -> Outcome {
    let mut cfg = ExperimentConfig::new(ExperimentKind::SweepAngle);
    cfg.backends =
        vec![BackendSpec::new(Backend::Real4), BackendSpec::new(Backend::Bicomplex), BackendSpec::new(Backend::Pauli2)];
    let rows = experiments::run_sweep_angle(&cfg).unwrap();
    let worst = |b: &str| {
        rows.iter()
            .filter(|r| r.backend == b)
            .map(|r| r.rel_err)
            .fold(0.0f64, |m, e| if e.is_nan() { f64::INFINITY } else { m.max(e) })
    };
    let (real4, bic) = (worst("real4"), worst("bicomplex"));
    // the poles are grid rows; the equator (θ = π/2) falls between rows of
    // an even-sized grid and is evaluated on its own
    let poles = rows
        .iter()
        .filter(|r| r.backend == "pauli2" && (r.theta == 0.0 || r.theta == PI))
        .map(|r| r.rel_err)
        .fold(f64::INFINITY, f64::min);
    let pole_rows = rows.iter().filter(|r| r.backend == "pauli2" && (r.theta == 0.0 || r.theta == PI)).count();
    let spec = BackendSpec::new(Backend::Pauli2);
    let equator = cfg
        .phi_grid()
        .iter()
        .map(|&phi| {
            let q = UnitQuaternion::from_angles(FRAC_PI_2, phi).unwrap();
            let r = experiments::evaluate_point(ExperimentKind::SweepAngle, &cfg.function, &spec, cfg.z, cfg.h, q);
            if r.is_ok() {
                r.rel_err
            } else {
                f64::INFINITY
            }
        })
        .fold(0.0f64, f64::max);
    let pass = rows.len() == 3 * 400 && pole_rows == 40 && real4 < 1e-13 && bic < 1e-13 && equator < 1e-13 && poles > 1e-6;
    outcome(
        pass,
        format!(
            "worst real4 {real4:.2e}, bicomplex {bic:.2e}, pauli2 equator {equator:.2e} (< 1e-13); best pauli2 at poles {poles:.2e} (> 1e-6)"
        ),
    )
}

fn lemma_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for f in [FunctionTag::Exp, FunctionTag::Sin, FunctionTag::square()] {
        for _ in 0..20 {
            let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let theta = rng.gen_range(0.1..PI - 0.1);
            let phi = rng.gen_range(0.0..2.0 * PI);
            let (lhs, rhs) = matrix::lemma_equivalence_check(&f, z, 1e-3, theta, phi).unwrap();
            worst = worst.max(rel(lhs, rhs));
        }
    }
    outcome(worst <= 1e-10, format!("worst discrepancy {worst:.2e} over exp, sin, z² (≤ 1e-10)"))
}

fn explicit_matrix_example() -> Outcome {
    let z = Complex64::new(0.5, 0.2);
    let t = Complex64::new(1e-100, 0.0);
    let m = MatrixElement::new(Representation::Pauli2, vec![z, t, -t, z], UnitQuaternion::J).unwrap();
    let e = m.exp();
    let want = Complex64::new(1.61586, 0.32755);
    let diag_ok = [e.get(0, 0), e.get(1, 1)].iter().all(|d| (d.re - want.re).abs() < 5e-6 && (d.im - want.im).abs() < 5e-6);
    let d = e.get(0, 0);
    let off = [(e.get(0, 1), d * 1e-100), (e.get(1, 0), -d * 1e-100)];
    let off_ok = off.iter().all(|&(got, w)| rel(got, w) < 5e-6);
    outcome(diag_ok && off_ok, format!("diagonal {d:.6}, anti-diagonal {:.6e} / {:.6e}", e.get(0, 1), e.get(1, 0)))
}

fn logarithm_study() -> Outcome {
    let ln = |z: Complex64| qsd_derivative(&FunctionTag::Ln, z, 1e-20, UnitQuaternion::J, Backend::Bicomplex);
    let near: Vec<f64> = [1e-10, -1e-10]
        .iter()
        .map(|&x| {
            let z = Complex64::new(x, 0.0);
            ln(z).map_or(f64::INFINITY, |d| rel(d, 1.0 / z))
        })
        .collect();
    let half = ln(Complex64::new(-0.5, 0.0)).map_or(f64::INFINITY, |d| (d - Complex64::new(-2.0, 0.0)).norm());
    let mut cfg = ExperimentConfig::new(ExperimentKind::GridLog);
    cfg.grid_points = 3;
    let origin = experiments::run_grid_log(&cfg).ok().and_then(|rows| rows.into_iter().find(|r| r.z_re == 0.0 && r.z_im == 0.0));
    let recorded = origin.as_ref().is_some_and(|r| !r.is_ok() && r.rel_err.is_nan());
    let pass = near.iter().all(|&e| e < 1e-9) && half <= 1e-13 && recorded;
    outcome(
        pass,
        format!(
            "ε at ±1e-10: {:.2e}, {:.2e} (< 1e-9); |d + 2| at −0.5: {half:.2e} (≤ 1e-13); origin row status {}",
            near[0],
            near[1],
            origin.map_or("missing".to_string(), |r| r.status),
        ),
    )
}

/// Largest coordinate difference relative to the largest coordinate of `want`.
fn rel_dev(got: &Bicomplex, want: &Bicomplex) -> f64 {
    let scale = want.coords().iter().fold(0.0f64, |m, c| m.max(c.abs()));
    got.coords().iter().zip(want.coords()).fold(0.0f64, |m, (g, w)| m.max((g - w).abs())) / scale
}

fn random_direction(rng: &mut impl Rng) -> UnitQuaternion {
    loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-2 && n2 <= 1.0 {
            return UnitQuaternion::new(v[0], v[1], v[2]).unwrap();
        }
    }
}

/// Both idempotent components `z1 ∓ i z2`.
fn idempotent_parts(w: &Bicomplex) -> (Complex64, Complex64) {
    (w.z1 - I * w.z2, w.z1 + I * w.z2)
}

fn property_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = [0.0f64; 7];
    let mut ranges_ok = true;
    let mut principal = 0;
    for _ in 0..1000 {
        let q = random_direction(&mut rng);
        let mut c = || rng.gen_range(-1.0..1.0);
        let w = Bicomplex::from_coords(c(), c(), c(), c(), q);
        let one = Bicomplex::real(1.0, q);

        let l = principal_log(&w).unwrap();
        ranges_ok &= l.b() > -PI && l.b() <= PI && l.c() > -FRAC_PI_2 && l.c() <= FRAC_PI_2;
        worst[0] = worst[0].max(rel_dev(&elementary::exp(&l), &w));
        let r = elementary::sqrt(&w).unwrap();
        worst[1] = worst[1].max(rel_dev(&(r * r), &w));
        let p = polar(&w).unwrap();
        worst[2] = worst[2].max(rel_dev(&(p.unitary * p.unitary.reverse()), &one));
        worst[3] = worst[3].max(rel_dev(&p.scale.reverse(), &p.scale));
        worst[4] = worst[4].max(rel_dev(&(p.unitary * p.scale), &w));
        let (s, co) = (elementary::sin(&w), elementary::cos(&w));
        worst[5] = worst[5].max(rel_dev(&(s * s + co * co), &one));
        // principal domain: both idempotent components in the strip
        // |Re λ| < π/2, with cos²λ± less than π apart in argument
        let (lp, lm) = idempotent_parts(&w);
        let (ap, am) = ((lp.cos() * lp.cos()).arg(), (lm.cos() * lm.cos()).arg());
        if lp.re.abs() < FRAC_PI_2 - 0.05 && lm.re.abs() < FRAC_PI_2 - 0.05 && (ap - am).abs() < PI - 0.05 {
            principal += 1;
            worst[6] = worst[6].max(rel_dev(&elementary::arcsin(&s).unwrap(), &w));
        }
    }
    let limits = [1e-12, 1e-12, 1e-13, 1e-13, 1e-13, 1e-12, 1e-11];
    let pass = ranges_ok && principal > 0 && worst.iter().zip(limits).all(|(w, l)| *w <= l);
    outcome(
        pass,
        format!(
            "exp∘Ln {:.1e}, sqrt² {:.1e}, UŨ {:.1e}, S̃ {:.1e}, US {:.1e}, sin²+cos² {:.1e}, arcsin∘sin {:.1e} ({principal} in domain), log ranges {}",
            worst[0],
            worst[1],
            worst[2],
            worst[3],
            worst[4],
            worst[5],
            worst[6],
            if ranges_ok { "hold" } else { "violated" }
        ),
    )
}

fn special_values() -> Outcome {
    let ulps = |got: &Bicomplex, want: &Bicomplex| rel_dev(got, want) / EPS;
    let mut worst = 0.0f64;
    let mut branches = true;
    let q = UnitQuaternion::J;
    let l = principal_log(&Bicomplex::real(-1.0, q)).unwrap();
    branches &= l.b() > 0.0;
    worst = worst.max(ulps(&l, &Bicomplex::from_coords(0.0, PI, 0.0, 0.0, q)));
    let mut inverse_rejected = true;
    for q in [UnitQuaternion::I, UnitQuaternion::J, UnitQuaternion::K] {
        let l = principal_log(&Bicomplex::unit_iq(q)).unwrap();
        branches &= l.b() > 0.0 && l.c() > 0.0;
        worst = worst.max(ulps(&l, &Bicomplex::from_coords(0.0, FRAC_PI_2, FRAC_PI_2, 0.0, q)));
        let x = Bicomplex::real(1.0, q) + Bicomplex::unit_iq(q);
        inverse_rejected &= matches!(elementary::inverse(&x), Err(QsdError::NonInvertible(_)));
    }
    outcome(
        branches && inverse_rejected && worst <= 4.0,
        format!(
            "Ln(−1), Ln(iq) within {worst:.1} ulps, branches {}, inverse(1 + iq) {}",
            if branches { "principal" } else { "wrong" },
            if inverse_rejected { "non-invertible" } else { "accepted" }
        ),
    )
}

fn cayley_table() -> Outcome {
    let generated = generate_cayley_table();
    let matches =
        (0..BLADES).flat_map(|r| (0..BLADES).map(move |c| (r, c))).filter(|&(r, c)| generated[r][c] == CAYLEY[r][c]).count();
    outcome(matches == 64, format!("{matches}/64 entries match"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("machine-precision derivative", machine_precision),
        ("convergence shape", convergence_shape),
        ("Taylor order", taylor_order),
        ("angular sweep", angular_sweep),
        ("trace / imaginary-step equivalence", lemma_equivalence),
        ("explicit matrix exponential", explicit_matrix_example),
        ("logarithm study", logarithm_study),
        ("property suite", property_suite),
        ("special values", special_values),
        ("Cayley table", cayley_table),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        failed += usize::from(!o.pass);
        println!("{} {}: {name}: {} [{ms:.0} ms]", if o.pass { "PASS" } else { "FAIL" }, n + 1, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 && std::env::var_os("QSD_ACCEPTANCE_STRICT").is_some_and(|v| v == "1") {
        std::process::exit(1);
    }
}
