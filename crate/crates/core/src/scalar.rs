//! Coefficient fields for the algebraic checks: complex floats and Gaussian rationals.
//!
//! Triple products, brackets and cocycles are polynomial, so they are written once over
//! [`Field`] and evaluated either in `f64` or exactly.

use std::fmt::Debug;
use std::ops::Neg;

use nalgebra::{ClosedAddAssign, ClosedMulAssign, ClosedSubAssign, DMatrix};
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::rational::{to_f64, Rational};

pub type C64 = Complex<f64>;
pub type GaussRat = Complex<Rational>;

pub trait Field:
    nalgebra::Scalar
    + Copy
    + Zero
    + One
    + ClosedAddAssign
    + ClosedSubAssign
    + ClosedMulAssign
    + Neg<Output = Self>
    + Send
    + Sync
    + Debug
{
    fn conj(self) -> Self;
    fn from_rational(r: Rational) -> Self;
    fn i() -> Self;
    /// Real part, as an element of the field.
    fn re(self) -> Self;
    /// Imaginary part, as an element of the field.
    fn im(self) -> Self;
    fn to_c64(self) -> C64;

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    fn half() -> Self {
        Self::from_rational(Rational::new(1, 2))
    }

    fn abs_f64(self) -> f64 {
        self.to_c64().norm()
    }
}

impl Field for C64 {
    fn conj(self) -> Self {
        Complex::conj(&self)
    }
    fn from_rational(r: Rational) -> Self {
        C64::new(to_f64(&r), 0.0)
    }
    fn i() -> Self {
        C64::new(0.0, 1.0)
    }
    fn re(self) -> Self {
        C64::new(self.re, 0.0)
    }
    fn im(self) -> Self {
        C64::new(self.im, 0.0)
    }
    fn to_c64(self) -> C64 {
        self
    }
}

impl Field for GaussRat {
    fn conj(self) -> Self {
        Complex::conj(&self)
    }
    fn from_rational(r: Rational) -> Self {
        Complex::new(r, Rational::zero())
    }
    fn i() -> Self {
        Complex::new(Rational::zero(), Rational::one())
    }
    fn re(self) -> Self {
        Complex::new(self.re, Rational::zero())
    }
    fn im(self) -> Self {
        Complex::new(self.im, Rational::zero())
    }
    fn to_c64(self) -> C64 {
        C64::new(to_f64(&self.re), to_f64(&self.im))
    }
}

/// Conjugate transpose.
pub fn adj<T: Field>(m: &DMatrix<T>) -> DMatrix<T> {
    m.transpose().map(|z| z.conj())
}

/// Entrywise conjugate.
pub fn conj_m<T: Field>(m: &DMatrix<T>) -> DMatrix<T> {
    m.map(|z| z.conj())
}

/// Trace inner product `tr(a b*)`, linear in `a`.
pub fn inner<T: Field>(a: &DMatrix<T>, b: &DMatrix<T>) -> T {
    let mut s = T::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        s += *x * y.conj();
    }
    s
}

pub fn scale<T: Field>(m: &DMatrix<T>, s: T) -> DMatrix<T> {
    m.map(|z| z * s)
}

/// Largest entry modulus, the residual measure used throughout.
pub fn max_abs<T: Field>(m: &DMatrix<T>) -> f64 {
    m.iter().map(|z| z.abs_f64()).fold(0.0, f64::max)
}

pub fn to_c64_matrix<T: Field>(m: &DMatrix<T>) -> DMatrix<C64> {
    m.map(|z| z.to_c64())
}

pub fn commutator<T: Field>(a: &DMatrix<T>, b: &DMatrix<T>) -> DMatrix<T> {
    a * b - b * a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_is_trace_form() {
        let a = DMatrix::from_row_slice(1, 1, &[C64::new(1.0, 0.0)]);
        let b = DMatrix::from_row_slice(1, 1, &[C64::new(0.0, 1.0)]);
        assert_eq!(inner(&a, &b), C64::new(0.0, -1.0));
    }

    #[test]
    fn exact_field_ops() {
        let z = GaussRat::new(Rational::new(1, 2), Rational::from_integer(3));
        assert_eq!(z.conj().im, Rational::from_integer(-3));
        assert_eq!((z * GaussRat::i()).re, Rational::from_integer(-3));
        assert_eq!(z.im().re, Rational::from_integer(3));
    }
}
