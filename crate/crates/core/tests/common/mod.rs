#![allow(dead_code)]

use num_complex::Complex64;
use qsd::{Bicomplex, UnitQuaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EPS: f64 = f64::EPSILON;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit_direction(rng: &mut impl Rng) -> UnitQuaternion {
    loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let n2 = v.iter().map(|x| x * x).sum::<f64>();
        if n2 > 1e-2 && n2 <= 1.0 {
            return UnitQuaternion::new(v[0], v[1], v[2]).unwrap();
        }
    }
}

pub fn bicomplex(rng: &mut impl Rng, range: f64) -> Bicomplex {
    let q = unit_direction(rng);
    let mut c = || rng.gen_range(-range..range);
    Bicomplex::from_coords(c(), c(), c(), c(), q)
}

pub fn complex(rng: &mut impl Rng, lo: f64, hi: f64) -> Complex64 {
    Complex64::new(rng.gen_range(lo..hi), rng.gen_range(lo..hi))
}

/// Largest coordinate difference, relative to the largest coordinate of `want`.
pub fn rel_dev(got: &Bicomplex, want: &Bicomplex) -> f64 {
    let scale = want.coords().iter().fold(0.0f64, |m, c| m.max(c.abs())).max(f64::MIN_POSITIVE);
    got.coords().iter().zip(want.coords()).fold(0.0f64, |m, (g, w)| m.max((g - w).abs())) / scale
}

pub fn complex_ulps(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / (EPS * want.norm().max(f64::MIN_POSITIVE))
}

/// `w = λ₊ e₊ + λ₋ e₋` with idempotents `e± = (1 ± iq)/2`, so that
/// `z1 = (λ₊ + λ₋)/2` and `z2 = i(λ₊ − λ₋)/2`.
pub fn idempotent_parts(w: &Bicomplex) -> (Complex64, Complex64) {
    let i = Complex64::new(0.0, 1.0);
    (w.z1 - i * w.z2, w.z1 + i * w.z2)
}

pub fn from_idempotent(plus: Complex64, minus: Complex64, q: UnitQuaternion) -> Bicomplex {
    let i = Complex64::new(0.0, 1.0);
    Bicomplex::new((plus + minus) * 0.5, i * (plus - minus) * 0.5, q)
}
