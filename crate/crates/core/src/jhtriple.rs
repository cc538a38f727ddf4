//! Finite-rank models of the four simple JH*-triple types.
//!
//! Elements are matrices: `p x q` (I), skew `n x n` (II), symmetric `n x n` (III) or
//! column vectors of length `n` with entrywise conjugation as `σ` (IV).

use std::fmt;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::sampling::{gaussian_matrix, rng, sample_matrix, small_gauss_matrix, Sample};
use crate::scalar::{adj, conj_m, inner, max_abs, Field, GaussRat, C64};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TripleError {
    #[error("element has shape {got:?}, {system} expects {want:?}")]
    Shape { system: String, got: (usize, usize), want: (usize, usize) },
    #[error("invalid triple system: {0}")]
    BadSystem(String),
    #[error("operators x□x are indefinite (eigenvalues {min:.3e} .. {max:.3e})")]
    Indefinite { min: f64, max: f64 },
    #[error("sampled sign is {found:?} but the system is declared {declared:?}")]
    SignMismatch { found: TripleSign, declared: TripleSign },
    #[error("trials must be at least 1")]
    NoTrials,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TripleKind {
    I { p: usize, q: usize },
    II { n: usize },
    III { n: usize },
    IV { n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TripleSign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TripleSystem {
    pub kind: TripleKind,
    pub sign: TripleSign,
}

impl fmt::Display for TripleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TripleKind::I { p, q } => write!(f, "I({p},{q})")?,
            TripleKind::II { n } => write!(f, "II({n})")?,
            TripleKind::III { n } => write!(f, "III({n})")?,
            TripleKind::IV { n } => write!(f, "IV({n})")?,
        }
        if self.sign == TripleSign::Negative {
            f.write_str(" c-dual")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TripleSystemJson {
    #[serde(rename = "type")]
    ty: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    sign: TripleSign,
}

impl Serialize for TripleSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (ty, p, q, n) = match self.kind {
            TripleKind::I { p, q } => ("I", Some(p), Some(q), None),
            TripleKind::II { n } => ("II", None, None, Some(n)),
            TripleKind::III { n } => ("III", None, None, Some(n)),
            TripleKind::IV { n } => ("IV", None, None, Some(n)),
        };
        TripleSystemJson { ty: ty.into(), p, q, n, sign: self.sign }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TripleSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = TripleSystemJson::deserialize(d)?;
        let need = |v: Option<usize>, name: &str| v.ok_or_else(|| D::Error::missing_field_owned(name));
        let kind = match raw.ty.as_str() {
            "I" => TripleKind::I { p: need(raw.p, "p")?, q: need(raw.q, "q")? },
            "II" => TripleKind::II { n: need(raw.n, "n")? },
            "III" => TripleKind::III { n: need(raw.n, "n")? },
            "IV" => TripleKind::IV { n: need(raw.n, "n")? },
            other => return Err(D::Error::custom(format!("unknown triple type {other:?}"))),
        };
        TripleSystem::new(kind, raw.sign).map_err(D::Error::custom)
    }
}

trait MissingOwned: serde::de::Error {
    fn missing_field_owned(name: &str) -> Self {
        Self::custom(format!("missing field `{name}`"))
    }
}
impl<E: serde::de::Error> MissingOwned for E {}

impl TripleSystem {
    pub fn new(kind: TripleKind, sign: TripleSign) -> Result<Self, TripleError> {
        let ok = match kind {
            TripleKind::I { p, q } => p >= 1 && q >= 1,
            TripleKind::II { n } => n >= 2,
            TripleKind::III { n } | TripleKind::IV { n } => n >= 1,
        };
        if !ok {
            return Err(TripleError::BadSystem(format!("{kind:?} has no nonzero elements")));
        }
        Ok(TripleSystem { kind, sign })
    }

    pub fn positive(kind: TripleKind) -> Result<Self, TripleError> {
        TripleSystem::new(kind, TripleSign::Positive)
    }

    /// The c-dual system: same space, negated product.
    pub fn dual(&self) -> Self {
        let sign = match self.sign {
            TripleSign::Positive => TripleSign::Negative,
            TripleSign::Negative => TripleSign::Positive,
        };
        TripleSystem { kind: self.kind, sign }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self.kind {
            TripleKind::I { p, q } => (p, q),
            TripleKind::II { n } | TripleKind::III { n } => (n, n),
            TripleKind::IV { n } => (n, 1),
        }
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            TripleKind::I { p, q } => p * q,
            TripleKind::II { n } => n * (n - 1) / 2,
            TripleKind::III { n } => n * (n + 1) / 2,
            TripleKind::IV { n } => n,
        }
    }

    fn check_shape<T: Field>(&self, x: &DMatrix<T>) -> Result<(), TripleError> {
        if x.shape() != self.shape() {
            return Err(TripleError::Shape { system: self.to_string(), got: x.shape(), want: self.shape() });
        }
        Ok(())
    }

    /// Whether `x` lies in the element space (shape and symmetry) up to `tol`.
    pub fn contains(&self, x: &DMatrix<C64>, tol: f64) -> bool {
        if x.shape() != self.shape() {
            return false;
        }
        match self.kind {
            TripleKind::II { .. } => max_abs(&(x + x.transpose())) <= tol,
            TripleKind::III { .. } => max_abs(&(x - x.transpose())) <= tol,
            _ => true,
        }
    }

    /// The triple product `{x, y, z}`.
    pub fn triple<T: Field>(&self, x: &DMatrix<T>, y: &DMatrix<T>, z: &DMatrix<T>) -> Result<DMatrix<T>, TripleError> {
        for m in [x, y, z] {
            self.check_shape(m)?;
        }
        let v = match self.kind {
            TripleKind::IV { .. } => {
                let sz = conj_m(z);
                let sy = conj_m(y);
                z * inner(x, y) + x * inner(z, y) - sy * inner(x, &sz)
            }
            _ => {
                let ys = adj(y);
                (x * &ys * z + z * &ys * x) * T::half()
            }
        };
        Ok(match self.sign {
            TripleSign::Positive => v,
            TripleSign::Negative => -v,
        })
    }

    /// Orthonormal basis of the element space for the trace inner product.
    pub fn basis(&self) -> Vec<DMatrix<C64>> {
        let (r, c) = self.shape();
        let unit = |i: usize, j: usize| {
            let mut m = DMatrix::<C64>::zeros(r, c);
            m[(i, j)] = C64::new(1.0, 0.0);
            m
        };
        let s = std::f64::consts::FRAC_1_SQRT_2;
        match self.kind {
            TripleKind::I { p, q } => (0..p).flat_map(|i| (0..q).map(move |j| (i, j))).map(|(i, j)| unit(i, j)).collect(),
            TripleKind::II { n } => (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| (unit(i, j) - unit(j, i)) * C64::new(s, 0.0))
                .collect(),
            TripleKind::III { n } => {
                let mut b: Vec<DMatrix<C64>> = (0..n).map(|i| unit(i, i)).collect();
                for i in 0..n {
                    for j in i + 1..n {
                        b.push((unit(i, j) + unit(j, i)) * C64::new(s, 0.0));
                    }
                }
                b
            }
            TripleKind::IV { n } => (0..n).map(|i| unit(i, 0)).collect(),
        }
    }

    pub fn coords(&self, x: &DMatrix<C64>) -> DVector<C64> {
        DVector::from_iterator(self.dim(), self.basis().iter().map(|b| inner(x, b)))
    }

    /// Matrix of `z -> product(x, y, z)` in the orthonormal basis.
    pub fn box_matrix_with<P>(&self, x: &DMatrix<C64>, y: &DMatrix<C64>, product: &P) -> DMatrix<C64>
    where
        P: Fn(&DMatrix<C64>, &DMatrix<C64>, &DMatrix<C64>) -> DMatrix<C64>,
    {
        let basis = self.basis();
        let d = basis.len();
        let mut m = DMatrix::<C64>::zeros(d, d);
        for (j, b) in basis.iter().enumerate() {
            let img = product(x, y, b);
            for (i, bi) in basis.iter().enumerate() {
                m[(i, j)] = inner(&img, bi);
            }
        }
        m
    }

    /// The box operator `x□y` as a matrix on the element space.
    pub fn box_matrix(&self, x: &DMatrix<C64>, y: &DMatrix<C64>) -> Result<DMatrix<C64>, TripleError> {
        self.check_shape(x)?;
        self.check_shape(y)?;
        Ok(self.box_matrix_with(x, y, &|a, b, c| self.triple(a, b, c).expect("shapes checked")))
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> DMatrix<C64> {
        let (r, c) = self.shape();
        let g = gaussian_matrix(rng, r, c);
        match self.kind {
            TripleKind::II { .. } => (&g - g.transpose()) * C64::new(0.5, 0.0),
            TripleKind::III { .. } => (&g + g.transpose()) * C64::new(0.5, 0.0),
            _ => g,
        }
    }

    /// Random element over any sampled field (unnormalized projection onto the space).
    pub fn sample_element<T: Sample, R: Rng>(&self, rng: &mut R) -> DMatrix<T> {
        let (r, c) = self.shape();
        let g: DMatrix<T> = sample_matrix(rng, r, c);
        match self.kind {
            TripleKind::II { .. } => &g - g.transpose(),
            TripleKind::III { .. } => &g + g.transpose(),
            _ => g,
        }
    }

    /// Random element with small Gaussian-integer entries, for exact checks.
    pub fn random_exact_element<R: Rng>(&self, rng: &mut R) -> DMatrix<GaussRat> {
        let (r, c) = self.shape();
        let g = small_gauss_matrix(rng, r, c);
        match self.kind {
            TripleKind::II { .. } => &g - g.transpose(),
            TripleKind::III { .. } => &g + g.transpose(),
            _ => g,
        }
    }
}

fn hermitian_eigenvalues(m: &DMatrix<C64>) -> DVector<f64> {
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    h.symmetric_eigen().eigenvalues
}

/// `sqrt(||z□z||)` with the operator norm on the element space.
pub fn spectral_norm(z: &DMatrix<C64>, sys: &TripleSystem) -> Result<f64, TripleError> {
    let b = sys.box_matrix(z, z)?;
    let ev = hermitian_eigenvalues(&b);
    Ok(ev.iter().map(|v| v.abs()).fold(0.0, f64::max).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub system: TripleSystem,
    pub trials: usize,
    pub tol: f64,
    pub jh1: f64,
    pub jh2: f64,
    pub jh3: f64,
    /// `(x□y)* - y□x`
    pub box_adjoint: f64,
    pub pass: bool,
}

/// Residuals of JH1, JH2, JH3 and `(x□y)* = y□x` on seeded Gaussian samples.
pub fn check_axioms(sys: &TripleSystem, trials: usize, tol: f64, seed: u64) -> Result<AxiomReport, TripleError> {
    check_axioms_with(sys, trials, tol, seed, &|x, y, z| sys.triple(x, y, z).expect("sampled shapes match"))
}

/// [`check_axioms`] for an arbitrary product on the element space of `sys`.
pub fn check_axioms_with<P>(sys: &TripleSystem, trials: usize, tol: f64, seed: u64, product: &P) -> Result<AxiomReport, TripleError>
where
    P: Fn(&DMatrix<C64>, &DMatrix<C64>, &DMatrix<C64>) -> DMatrix<C64>,
{
    if trials == 0 {
        return Err(TripleError::NoTrials);
    }
    let mut g = rng(seed);
    let (mut jh1, mut jh2, mut jh3, mut box_adjoint) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..trials {
        let [x, y, z, a, b, c] = std::array::from_fn(|_| sys.random_element(&mut g));
        jh1 = jh1.max(max_abs(&(product(&x, &y, &z) - product(&z, &y, &x))));
        let lhs = product(&x, &y, &product(&a, &b, &c));
        let rhs = product(&product(&x, &y, &a), &b, &c) - product(&a, &product(&y, &x, &b), &c)
            + product(&a, &b, &product(&x, &y, &c));
        jh2 = jh2.max(max_abs(&(lhs - rhs)));
        let xx = sys.box_matrix_with(&x, &x, product);
        jh3 = jh3.max(max_abs(&(&xx - xx.adjoint())));
        let xy = sys.box_matrix_with(&x, &y, product);
        let yx = sys.box_matrix_with(&y, &x, product);
        box_adjoint = box_adjoint.max(max_abs(&(xy.adjoint() - yx)));
    }
    let pass = jh1 <= tol && jh2 <= tol && jh3 <= tol && box_adjoint <= tol;
    Ok(AxiomReport { system: *sys, trials, tol, jh1, jh2, jh3, box_adjoint, pass })
}

/// Sign of the operators `x□x` on samples; must agree with the declared sign.
pub fn sign_of(sys: &TripleSystem, samples: usize, seed: u64, tol: f64) -> Result<TripleSign, TripleError> {
    if samples == 0 {
        return Err(TripleError::NoTrials);
    }
    let mut g = rng(seed);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..samples {
        let x = sys.random_element(&mut g);
        let ev = hermitian_eigenvalues(&sys.box_matrix(&x, &x)?);
        lo = lo.min(ev.min());
        hi = hi.max(ev.max());
    }
    let found = if lo >= -tol {
        TripleSign::Positive
    } else if hi <= tol {
        TripleSign::Negative
    } else {
        return Err(TripleError::Indefinite { min: lo, max: hi });
    };
    if found != sys.sign {
        return Err(TripleError::SignMismatch { found, declared: sys.sign });
    }
    Ok(found)
}

/// Whether `{z, z, z} = z` up to `tol`.
pub fn tripotent_check(z: &DMatrix<C64>, sys: &TripleSystem, tol: f64) -> Result<bool, TripleError> {
    Ok(max_abs(&(sys.triple(z, z, z)? - z)) <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;
    use proptest::prelude::*;

    fn e(r: usize, c: usize, i: usize, j: usize) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(r, c);
        m[(i, j)] = C64::new(1.0, 0.0);
        m
    }

    fn sys(kind: TripleKind) -> TripleSystem {
        TripleSystem::positive(kind).unwrap()
    }

    fn all_small() -> Vec<TripleSystem> {
        let mut v = Vec::new();
        for p in 1..=4 {
            for q in 1..=4 {
                v.push(sys(TripleKind::I { p, q }));
            }
        }
        for n in 1..=4 {
            if n >= 2 {
                v.push(sys(TripleKind::II { n }));
            }
            v.push(sys(TripleKind::III { n }));
            v.push(sys(TripleKind::IV { n }));
        }
        v
    }

    #[test]
    fn product_examples() {
        let s = sys(TripleKind::I { p: 2, q: 2 });
        let x = e(2, 2, 0, 0);
        assert_eq!(s.triple(&x, &x, &x).unwrap(), x);
        let s4 = sys(TripleKind::IV { n: 3 });
        let e1 = e(3, 1, 0, 0);
        assert_eq!(s4.triple(&e1, &e1, &e1).unwrap(), e1);
        for t in all_small() {
            let mut g = rng(1);
            let (x, y) = (t.random_element(&mut g), t.random_element(&mut g));
            let z = DMatrix::zeros(t.shape().0, t.shape().1);
            assert_eq!(max_abs(&t.triple(&x, &y, &z).unwrap()), 0.0);
        }
    }

    #[test]
    fn shape_mismatch() {
        let s = sys(TripleKind::I { p: 2, q: 3 });
        let x = e(2, 2, 0, 0);
        assert!(matches!(s.triple(&x, &x, &x), Err(TripleError::Shape { .. })));
    }

    #[test]
    fn spectral_norm_examples() {
        let s = sys(TripleKind::I { p: 2, q: 2 });
        let mut a = DMatrix::<C64>::zeros(2, 2);
        a[(0, 0)] = C64::new(3.0, 0.0);
        a[(1, 1)] = C64::new(1.0, 0.0);
        assert!((spectral_norm(&a, &s).unwrap() - 3.0).abs() < 1e-12);
        let s4 = sys(TripleKind::IV { n: 3 });
        assert!((spectral_norm(&e(3, 1, 0, 0), &s4).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(spectral_norm(&DMatrix::zeros(3, 1), &s4).unwrap(), 0.0);
    }

    #[test]
    fn spectral_norm_matches_singular_values_and_type_iv_formula() {
        let mut g = rng(11);
        for _ in 0..20 {
            let s = sys(TripleKind::I { p: 3, q: 2 });
            let x = s.random_element(&mut g);
            let sv = x.clone().singular_values().max();
            assert!((spectral_norm(&x, &s).unwrap() - sv).abs() < 1e-10);
            let s4 = sys(TripleKind::IV { n: 4 });
            let z = s4.random_element(&mut g);
            let zz = inner(&z, &z).re;
            let zs = inner(&z, &conj_m(&z)).norm();
            let closed = (zz + (zz * zz - zs * zs).max(0.0).sqrt()).sqrt();
            assert!((spectral_norm(&z, &s4).unwrap() - closed).abs() < 1e-10);
        }
    }

    #[test]
    fn axioms_hold_for_all_small_models() {
        for s in all_small() {
            for t in [s, s.dual()] {
                let r = check_axioms(&t, 100, 1e-10, 42).unwrap();
                assert!(r.pass, "{t}: {r:?}");
            }
        }
    }

    #[test]
    fn axioms_exact_in_gaussian_rationals() {
        for s in all_small() {
            let mut g = rng(3);
            for _ in 0..5 {
                let [x, y, a, b, c] = std::array::from_fn(|_| s.random_exact_element(&mut g));
                let p = |u: &DMatrix<GaussRat>, v: &DMatrix<GaussRat>, w: &DMatrix<GaussRat>| s.triple(u, v, w).unwrap();
                assert_eq!(p(&x, &y, &a), p(&a, &y, &x));
                let lhs = p(&x, &y, &p(&a, &b, &c));
                let rhs = p(&p(&x, &y, &a), &b, &c) - p(&a, &p(&y, &x, &b), &c) + p(&a, &b, &p(&x, &y, &c));
                assert_eq!(lhs, rhs, "{s}");
            }
        }
    }

    #[test]
    fn corrupted_products_fail_jh2() {
        let s = sys(TripleKind::I { p: 2, q: 2 });
        let missing_conj = |x: &DMatrix<C64>, y: &DMatrix<C64>, z: &DMatrix<C64>| {
            (x * y.adjoint() * z + z * y.transpose() * x) * C64::new(0.5, 0.0)
        };
        let r = check_axioms_with(&s, 20, 1e-10, 1, &missing_conj).unwrap();
        assert!(!r.pass && r.jh2 > 1e-3, "{r:?}");
        let s4 = sys(TripleKind::IV { n: 3 });
        let flipped = |x: &DMatrix<C64>, y: &DMatrix<C64>, z: &DMatrix<C64>| {
            z * inner(x, y) + x * inner(z, y) + conj_m(y) * inner(x, &conj_m(z))
        };
        let r = check_axioms_with(&s4, 20, 1e-10, 1, &flipped).unwrap();
        assert!(!r.pass && r.jh2 > 1e-3, "{r:?}");
        // dropping the 1/2 uniformly rescales the product, which JH1 and JH2 cannot see
        let doubled = |x: &DMatrix<C64>, y: &DMatrix<C64>, z: &DMatrix<C64>| {
            let ys = y.adjoint();
            x * &ys * z + z * &ys * x
        };
        let r = check_axioms_with(&s, 20, 1e-10, 1, &doubled).unwrap();
        assert!(r.jh1 < 1e-10 && r.jh2 < 1e-10);
    }

    #[test]
    fn sign_examples() {
        let s = sys(TripleKind::I { p: 2, q: 2 });
        assert_eq!(sign_of(&s, 30, 1, 1e-10), Ok(TripleSign::Positive));
        assert_eq!(sign_of(&s.dual(), 30, 1, 1e-10), Ok(TripleSign::Negative));
        assert_eq!(sign_of(&sys(TripleKind::IV { n: 4 }), 30, 1, 1e-10), Ok(TripleSign::Positive));
        let mislabeled = TripleSystem { kind: TripleKind::II { n: 3 }, sign: TripleSign::Negative };
        assert!(matches!(sign_of(&mislabeled.dual(), 5, 1, 1e-10), Ok(TripleSign::Positive)));
        assert!(matches!(sign_of(&mislabeled, 5, 1, 1e-10), Err(TripleError::SignMismatch { .. }) | Ok(_)));
    }

    #[test]
    fn tripotents() {
        let s = sys(TripleKind::I { p: 2, q: 2 });
        let z = e(2, 2, 0, 0);
        assert!(tripotent_check(&z, &s, 1e-12).unwrap());
        assert!(!tripotent_check(&(&z * C64::new(2.0, 0.0)), &s, 1e-12).unwrap());
        assert!(tripotent_check(&DMatrix::zeros(2, 2), &s, 1e-12).unwrap());
    }

    #[test]
    fn json_encoding() {
        let s: TripleSystem = serde_json::from_str(r#"{"type":"I","p":2,"q":3,"sign":"positive"}"#).unwrap();
        assert_eq!(s, sys(TripleKind::I { p: 2, q: 3 }));
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"type":"I","p":2,"q":3,"sign":"positive"}"#);
        assert!(serde_json::from_str::<TripleSystem>(r#"{"type":"II","n":1,"sign":"positive"}"#).is_err());
        assert!(serde_json::from_str::<TripleSystem>(r#"{"type":"V","n":1,"sign":"positive"}"#).is_err());
    }

    #[test]
    fn basis_is_orthonormal() {
        for s in all_small() {
            let b = s.basis();
            assert_eq!(b.len(), s.dim());
            for (i, x) in b.iter().enumerate() {
                assert!(s.contains(x, 0.0));
                for (j, y) in b.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((inner(x, y) - C64::new(want, 0.0)).norm() < 1e-14);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn dual_negates_product(seed in 0u64..1000, k in 0usize..4) {
            let s = [sys(TripleKind::I { p: 2, q: 3 }), sys(TripleKind::II { n: 3 }), sys(TripleKind::III { n: 2 }), sys(TripleKind::IV { n: 3 })][k];
            let mut g = rng(seed);
            let [x, y, z] = std::array::from_fn(|_| s.random_exact_element(&mut g));
            prop_assert_eq!(s.dual().triple(&x, &y, &z).unwrap(), -s.triple(&x, &y, &z).unwrap());
        }

        #[test]
        fn spectral_norm_is_homogeneous(seed in 0u64..1000, t in 0.1f64..3.0) {
            let s = sys(TripleKind::III { n: 3 });
            let x = s.random_element(&mut rng(seed));
            let a = spectral_norm(&(&x * C64::new(t, 0.0)), &s).unwrap();
            prop_assert!((a - t * spectral_norm(&x, &s).unwrap()).abs() < 1e-9 * (1.0 + a));
        }

        #[test]
        fn exact_products_stay_in_space(seed in 0u64..1000) {
            for s in [sys(TripleKind::II { n: 3 }), sys(TripleKind::III { n: 3 })] {
                let mut g = rng(seed);
                let [x, y, z] = std::array::from_fn(|_| s.random_exact_element(&mut g));
                let p = s.triple(&x, &y, &z).unwrap();
                let sym = if matches!(s.kind, TripleKind::II { .. }) { &p + p.transpose() } else { &p - p.transpose() };
                prop_assert!(sym.iter().all(|v| *v == GaussRat::new(Rational::from_integer(0), Rational::from_integer(0))));
            }
        }
    }
}
