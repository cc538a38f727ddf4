//! Seeded random sources shared by the numerical checks.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::rational::Rational;
use crate::scalar::{GaussRat, C64};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian (independent N(0, 1/2) real and imaginary parts).
pub fn gaussian_c64<R: Rng>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<C64> {
    DMatrix::from_fn(rows, cols, |_, _| gaussian_c64(rng))
}

pub fn gaussian_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<C64> {
    (0..n).map(|_| gaussian_c64(rng)).collect()
}

/// Gaussian integer with both parts uniform in `-r..=r`.
pub fn small_gauss_int<R: Rng>(rng: &mut R, r: i64) -> GaussRat {
    GaussRat::new(
        Rational::from_integer(rng.random_range(-r..=r)),
        Rational::from_integer(rng.random_range(-r..=r)),
    )
}

pub fn small_gauss_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<GaussRat> {
    DMatrix::from_fn(rows, cols, |_, _| small_gauss_int(rng, 3))
}

/// Haar-ish random unitary from the QR factorization of a Gaussian matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> DMatrix<C64> {
    let g = gaussian_matrix(rng, n, n);
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let mut u = q;
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            u[(i, j)] *= phase;
        }
    }
    u
}

/// Random field elements: Gaussian floats, or small Gaussian integers in exact mode.
pub trait Sample: crate::scalar::Field {
    fn sample<R: Rng>(rng: &mut R) -> Self;
}

impl Sample for C64 {
    fn sample<R: Rng>(rng: &mut R) -> Self {
        gaussian_c64(rng)
    }
}

impl Sample for GaussRat {
    fn sample<R: Rng>(rng: &mut R) -> Self {
        small_gauss_int(rng, 3)
    }
}

pub fn sample_matrix<T: Sample, R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<T> {
    DMatrix::from_fn(rows, cols, |_, _| T::sample(rng))
}
