//! The Kantor-Koecher-Tits algebra `g_C(U) = U ⊕ aut(U)_C ⊕ Ū` of a finite-rank triple
//! system, its real form, the involution θ, the element d, the cocycle `ω_p` with its
//! central extension, and the Heisenberg motion algebra.
//!
//! Derivations are stored as matrices acting on elements: a pair `(a, b)` acting by
//! `x -> ax + xb` (type I), a single `a` acting by `x -> ax + xa^T` (types II and III), or
//! an operator matrix on vectors (type IV).

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::Serialize;

use crate::jhtriple::{TripleError, TripleKind, TripleSign, TripleSystem};
use crate::sampling::{rng, sample_matrix, Sample};
use crate::scalar::{adj, commutator, conj_m, inner, max_abs, Field, C64};

#[derive(Debug, Clone, PartialEq)]
pub enum AutElement<T: Field> {
    Pair { a: DMatrix<T>, b: DMatrix<T> },
    Single { a: DMatrix<T> },
    Op { m: DMatrix<T> },
}

impl<T: Field> AutElement<T> {
    pub fn zero(sys: &TripleSystem) -> Self {
        match sys.kind {
            TripleKind::I { p, q } => AutElement::Pair { a: DMatrix::zeros(p, p), b: DMatrix::zeros(q, q) },
            TripleKind::II { n } | TripleKind::III { n } => AutElement::Single { a: DMatrix::zeros(n, n) },
            TripleKind::IV { n } => AutElement::Op { m: DMatrix::zeros(n, n) },
        }
    }

    /// Action on an element of the triple.
    pub fn apply(&self, x: &DMatrix<T>) -> DMatrix<T> {
        match self {
            AutElement::Pair { a, b } => a * x + x * b,
            AutElement::Single { a } => a * x + x * a.transpose(),
            AutElement::Op { m } => m * x,
        }
    }

    /// Lie bracket, matching the commutator of the actions.
    pub fn bracket(&self, other: &Self) -> Self {
        match (self, other) {
            (AutElement::Pair { a, b }, AutElement::Pair { a: a2, b: b2 }) => {
                AutElement::Pair { a: commutator(a, a2), b: -commutator(b, b2) }
            }
            (AutElement::Single { a }, AutElement::Single { a: a2 }) => AutElement::Single { a: commutator(a, a2) },
            (AutElement::Op { m }, AutElement::Op { m: m2 }) => AutElement::Op { m: commutator(m, m2) },
            _ => panic!("derivations of different triple systems"),
        }
    }

    /// Adjoint for the trace inner product on elements.
    pub fn adjoint(&self) -> Self {
        self.map(|m| adj(m))
    }

    pub fn map(&self, f: impl Fn(&DMatrix<T>) -> DMatrix<T>) -> Self {
        match self {
            AutElement::Pair { a, b } => AutElement::Pair { a: f(a), b: f(b) },
            AutElement::Single { a } => AutElement::Single { a: f(a) },
            AutElement::Op { m } => AutElement::Op { m: f(m) },
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&DMatrix<T>, &DMatrix<T>) -> DMatrix<T>) -> Self {
        match (self, other) {
            (AutElement::Pair { a, b }, AutElement::Pair { a: a2, b: b2 }) => AutElement::Pair { a: f(a, a2), b: f(b, b2) },
            (AutElement::Single { a }, AutElement::Single { a: a2 }) => AutElement::Single { a: f(a, a2) },
            (AutElement::Op { m }, AutElement::Op { m: m2 }) => AutElement::Op { m: f(m, m2) },
            _ => panic!("derivations of different triple systems"),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |x, y| x - y)
    }

    pub fn neg(&self) -> Self {
        self.map(|m| -m)
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks().iter().map(|m| max_abs(m)).fold(0.0, f64::max)
    }

    fn blocks(&self) -> Vec<&DMatrix<T>> {
        match self {
            AutElement::Pair { a, b } => vec![a, b],
            AutElement::Single { a } => vec![a],
            AutElement::Op { m } => vec![m],
        }
    }

    /// The derivation `x□y`.
    pub fn box_of(sys: &TripleSystem, x: &DMatrix<T>, y: &DMatrix<T>) -> Self {
        let lifted = match sys.kind {
            TripleKind::I { .. } => {
                let ys = adj(y);
                AutElement::Pair { a: x * &ys * T::half(), b: &ys * x * T::half() }
            }
            TripleKind::II { .. } | TripleKind::III { .. } => AutElement::Single { a: x * adj(y) * T::half() },
            TripleKind::IV { n } => {
                let yb = conj_m(y);
                let m = DMatrix::<T>::identity(n, n) * inner(x, y) + x * yb.transpose() - &yb * x.transpose();
                AutElement::Op { m }
            }
        };
        match sys.sign {
            TripleSign::Positive => lifted,
            TripleSign::Negative => lifted.neg(),
        }
    }

    /// The element `d`, acting as multiplication by `i`.
    pub fn d(sys: &TripleSystem) -> Self {
        let ih = T::i() * T::half();
        match sys.kind {
            TripleKind::I { p, q } => AutElement::Pair {
                a: DMatrix::<T>::identity(p, p) * ih,
                b: DMatrix::<T>::identity(q, q) * ih,
            },
            TripleKind::II { n } | TripleKind::III { n } => AutElement::Single { a: DMatrix::<T>::identity(n, n) * ih },
            TripleKind::IV { n } => AutElement::Op { m: DMatrix::<T>::identity(n, n) * T::i() },
        }
    }

    /// Random derivation; anti-selfadjoint when `real`.
    pub fn random<R: Rng>(sys: &TripleSystem, rng: &mut R, real: bool) -> Self
    where
        T: Sample,
    {
        let skew = |m: DMatrix<T>| if real { &m - adj(&m) } else { m };
        match sys.kind {
            TripleKind::I { p, q } => AutElement::Pair { a: skew(sample_matrix(rng, p, p)), b: skew(sample_matrix(rng, q, q)) },
            TripleKind::II { n } | TripleKind::III { n } => AutElement::Single { a: skew(sample_matrix(rng, n, n)) },
            TripleKind::IV { n } => {
                let s = T::sample(rng);
                let b: DMatrix<T> = sample_matrix(rng, n, n);
                let b = &b - b.transpose();
                let m = if real {
                    // i·(real scalar) on the centre, real antisymmetric part
                    let s = (s - s.conj()) * T::half();
                    DMatrix::<T>::identity(n, n) * s + (&b + conj_m(&b)) * T::half()
                } else {
                    DMatrix::<T>::identity(n, n) * s + b
                };
                AutElement::Op { m }
            }
        }
    }

    fn coords(&self) -> Vec<T> {
        self.blocks().into_iter().flat_map(|m| m.iter().copied().collect::<Vec<_>>()).collect()
    }

    fn from_coords(sys: &TripleSystem, v: &[T]) -> Self {
        let mut out = AutElement::zero(sys);
        let mut k = 0;
        let fill = |m: &mut DMatrix<T>, k: &mut usize| {
            for z in m.iter_mut() {
                *z = v[*k];
                *k += 1;
            }
        };
        match &mut out {
            AutElement::Pair { a, b } => {
                fill(a, &mut k);
                fill(b, &mut k);
            }
            AutElement::Single { a } => fill(a, &mut k),
            AutElement::Op { m } => fill(m, &mut k),
        }
        out
    }
}

/// `(x, A, y)` in `U ⊕ aut(U)_C ⊕ Ū`.
#[derive(Debug, Clone, PartialEq)]
pub struct KktElement<T: Field> {
    pub x: DMatrix<T>,
    pub a: AutElement<T>,
    pub y: DMatrix<T>,
}

impl<T: Field> KktElement<T> {
    pub fn zero(sys: &TripleSystem) -> Self {
        let (r, c) = sys.shape();
        KktElement { x: DMatrix::zeros(r, c), a: AutElement::zero(sys), y: DMatrix::zeros(r, c) }
    }

    /// The real-form element `(x, A, x)`.
    pub fn real(x: DMatrix<T>, a: AutElement<T>) -> Self {
        KktElement { y: x.clone(), x, a }
    }

    pub fn add(&self, o: &Self) -> Self {
        KktElement { x: &self.x + &o.x, a: self.a.add(&o.a), y: &self.y + &o.y }
    }

    pub fn sub(&self, o: &Self) -> Self {
        KktElement { x: &self.x - &o.x, a: self.a.sub(&o.a), y: &self.y - &o.y }
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.x).max(self.a.max_abs()).max(max_abs(&self.y))
    }

    /// Whether `y = x` and `A* = -A` up to `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        max_abs(&(&self.x - &self.y)) <= tol && self.a.add(&self.a.adjoint()).max_abs() <= tol
    }

    pub fn random<R: Rng>(sys: &TripleSystem, rng: &mut R) -> Self
    where
        T: Sample,
    {
        let x = sys.sample_element(rng);
        let a = AutElement::random(sys, rng, false);
        let y = sys.sample_element(rng);
        KktElement { x, a, y }
    }

    pub fn random_real<R: Rng>(sys: &TripleSystem, rng: &mut R) -> Self
    where
        T: Sample,
    {
        let x = sys.sample_element(rng);
        KktElement::real(x, AutElement::random(sys, rng, true))
    }
}

fn check<T: Field>(sys: &TripleSystem, e: &KktElement<T>) -> Result<(), TripleError> {
    for m in [&e.x, &e.y] {
        if m.shape() != sys.shape() {
            return Err(TripleError::Shape { system: sys.to_string(), got: m.shape(), want: sys.shape() });
        }
    }
    Ok(())
}

/// `[(x,A,y),(x',A',y')] = (Ax'-A'x, x□y' - x'□y + [A,A'], -A*y' + A'*y)`.
pub fn kkt_bracket<T: Field>(sys: &TripleSystem, u: &KktElement<T>, v: &KktElement<T>) -> Result<KktElement<T>, TripleError> {
    check(sys, u)?;
    check(sys, v)?;
    let x = u.a.apply(&v.x) - v.a.apply(&u.x);
    let a = AutElement::box_of(sys, &u.x, &v.y)
        .sub(&AutElement::box_of(sys, &v.x, &u.y))
        .add(&u.a.bracket(&v.a));
    let y = v.a.adjoint().apply(&u.y) - u.a.adjoint().apply(&v.y);
    Ok(KktElement { x, a, y })
}

/// `θ(x, A, y) = (-x, A, -y)`.
pub fn theta<T: Field>(e: &KktElement<T>) -> KktElement<T> {
    KktElement { x: -&e.x, a: e.a.clone(), y: -&e.y }
}

/// `[d, x]` for `x` in `U`.
pub fn d_action<T: Field>(sys: &TripleSystem, x: &DMatrix<T>) -> DMatrix<T> {
    AutElement::<T>::d(sys).apply(x)
}

/// The element `(0, d, 0)`.
pub fn d_element<T: Field>(sys: &TripleSystem) -> KktElement<T> {
    let mut e = KktElement::zero(sys);
    e.a = AutElement::d(sys);
    e
}

/// `ω_p(x, y) = 2 Im <x, y>` on `p ≅ U`.
pub fn omega_p<T: Field>(x: &DMatrix<T>, y: &DMatrix<T>) -> T {
    inner(x, y).im() * T::from_int(2)
}

/// `ω_p` on real-form elements, vanishing on `k`.
pub fn omega<T: Field>(u: &KktElement<T>, v: &KktElement<T>) -> T {
    omega_p(&u.x, &v.x)
}

/// Element `(z, g)` of the central extension `R ⊕_ω g`.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralElement<T: Field> {
    pub z: T,
    pub g: KktElement<T>,
}

/// `[(z, a), (z', b)] = (ω(a, b), [a, b])`.
pub fn hat_bracket<T: Field>(sys: &TripleSystem, u: &CentralElement<T>, v: &CentralElement<T>) -> Result<CentralElement<T>, TripleError> {
    Ok(CentralElement { z: omega(&u.g, &v.g), g: kkt_bracket(sys, &u.g, &v.g)? })
}

/// Element `(t, v, A)` of the Heisenberg motion algebra `(R ⊕_ω p) ⋊ k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MotionElement<T: Field> {
    pub t: T,
    pub v: DMatrix<T>,
    pub k: AutElement<T>,
}

impl<T: Field> MotionElement<T> {
    pub fn random<R: Rng>(sys: &TripleSystem, rng: &mut R) -> Self
    where
        T: Sample,
    {
        MotionElement { t: T::sample(rng).re(), v: sys.sample_element(rng), k: AutElement::random(sys, rng, true) }
    }
}

/// `[(t,v,A),(t',v',A')] = (ω(v,v'), Av' - A'v, [A,A'])`.
pub fn motion_bracket<T: Field>(u: &MotionElement<T>, w: &MotionElement<T>) -> MotionElement<T> {
    MotionElement {
        t: omega_p(&u.v, &w.v),
        v: u.k.apply(&w.v) - w.k.apply(&u.v),
        k: u.k.bracket(&w.k),
    }
}

/// Coordinates `(x, A, conj(y))` of a complexified element, complex linear in the element.
pub fn kkt_coords(sys: &TripleSystem, e: &KktElement<C64>) -> DVector<C64> {
    let mut v: Vec<C64> = sys.coords(&e.x).iter().copied().collect();
    v.extend(e.a.coords());
    v.extend(sys.coords(&e.y).iter().map(|z| z.conj()));
    DVector::from_vec(v)
}

fn kkt_from_coords(sys: &TripleSystem, v: &DVector<C64>) -> KktElement<C64> {
    let basis = sys.basis();
    let d = basis.len();
    let aut_len = AutElement::<C64>::zero(sys).coords().len();
    let (r, c) = sys.shape();
    let mut x = DMatrix::<C64>::zeros(r, c);
    let mut y = DMatrix::<C64>::zeros(r, c);
    for (k, b) in basis.iter().enumerate() {
        x += b * v[k];
        y += b * v[d + aut_len + k].conj();
    }
    let coords: Vec<C64> = v.iter().skip(d).take(aut_len).copied().collect();
    KktElement { x, a: AutElement::from_coords(sys, &coords), y }
}

/// Matrix of `ad u` on `g_C(U)` in [`kkt_coords`] coordinates.
pub fn ad_matrix(sys: &TripleSystem, u: &KktElement<C64>) -> Result<DMatrix<C64>, TripleError> {
    let n = kkt_coords(sys, &KktElement::zero(sys)).len();
    let mut m = DMatrix::<C64>::zeros(n, n);
    for j in 0..n {
        let mut e = DVector::<C64>::zeros(n);
        e[j] = C64::new(1.0, 0.0);
        let col = kkt_coords(sys, &kkt_bracket(sys, u, &kkt_from_coords(sys, &e))?);
        m.set_column(j, &col);
    }
    Ok(m)
}

/// Eigenvalues of `ad d` on `g_C(U)`, sorted by imaginary part.
pub fn ad_d_spectrum(sys: &TripleSystem) -> Result<Vec<C64>, TripleError> {
    let m = ad_matrix(sys, &d_element(sys))?;
    let mut ev: Vec<C64> = m.eigenvalues().map(|v| v.iter().copied().collect()).unwrap_or_else(|| {
        nalgebra::Schur::new(m.clone()).eigenvalues().expect("ad d is diagonalizable").iter().copied().collect()
    });
    ev.sort_by(|a, b| b.im.total_cmp(&a.im));
    Ok(ev)
}

/// `max |e^{π ad d} - θ|` as matrices on `g_C(U)`.
pub fn theta_exp_residual(sys: &TripleSystem) -> Result<f64, TripleError> {
    let ad = ad_matrix(sys, &d_element(sys))?;
    let exp = (ad * C64::new(std::f64::consts::PI, 0.0)).exp();
    let n = exp.nrows();
    let mut th = DMatrix::<C64>::zeros(n, n);
    for j in 0..n {
        let mut e = DVector::<C64>::zeros(n);
        e[j] = C64::new(1.0, 0.0);
        th.set_column(j, &kkt_coords(sys, &theta(&kkt_from_coords(sys, &e))));
    }
    Ok(max_abs(&(exp - th)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LieReport {
    pub system: TripleSystem,
    pub trials: usize,
    pub tol: f64,
    pub kkt_jacobi: f64,
    pub real_form_closure: f64,
    pub theta_automorphism: f64,
    pub cocycle: f64,
    pub k_invariance: f64,
    pub hat_jacobi: f64,
    pub motion_jacobi: f64,
    pub pass: bool,
}

/// Jacobi, closure, automorphism and cocycle residuals on seeded samples.
pub fn check_lie<T: Sample>(sys: &TripleSystem, trials: usize, tol: f64, seed: u64) -> Result<LieReport, TripleError> {
    if trials == 0 {
        return Err(TripleError::NoTrials);
    }
    let mut g = rng(seed);
    let br = |u: &KktElement<T>, v: &KktElement<T>| kkt_bracket(sys, u, v);
    let mut r = LieReport {
        system: *sys,
        trials,
        tol,
        kkt_jacobi: 0.0,
        real_form_closure: 0.0,
        theta_automorphism: 0.0,
        cocycle: 0.0,
        k_invariance: 0.0,
        hat_jacobi: 0.0,
        motion_jacobi: 0.0,
        pass: false,
    };
    for _ in 0..trials {
        let [a, b, c] = std::array::from_fn(|_| KktElement::<T>::random(sys, &mut g));
        let jac = br(&br(&a, &b)?, &c)?.add(&br(&br(&b, &c)?, &a)?).add(&br(&br(&c, &a)?, &b)?);
        r.kkt_jacobi = r.kkt_jacobi.max(jac.max_abs());
        let th = br(&theta(&a), &theta(&b))?.sub(&theta(&br(&a, &b)?));
        r.theta_automorphism = r.theta_automorphism.max(th.max_abs());

        let [u, v, w] = std::array::from_fn(|_| KktElement::<T>::random_real(sys, &mut g));
        let uv = br(&u, &v)?;
        let closure = max_abs(&(&uv.x - &uv.y)).max(uv.a.add(&uv.a.adjoint()).max_abs());
        r.real_form_closure = r.real_form_closure.max(closure);
        let cyc = omega(&uv, &w) + omega(&br(&v, &w)?, &u) + omega(&br(&w, &u)?, &v);
        r.cocycle = r.cocycle.max(cyc.abs_f64());
        let k = KktElement::real(DMatrix::zeros(sys.shape().0, sys.shape().1), u.a.clone());
        let inv = omega(&br(&k, &v)?, &w) + omega(&v, &br(&k, &w)?);
        r.k_invariance = r.k_invariance.max(inv.abs_f64());

        let [zu, zv, zw] = std::array::from_fn(|_| T::sample(&mut g).re());
        let (hu, hv, hw) = (
            CentralElement { z: zu, g: u.clone() },
            CentralElement { z: zv, g: v.clone() },
            CentralElement { z: zw, g: w.clone() },
        );
        let hb = |p: &CentralElement<T>, q: &CentralElement<T>| hat_bracket(sys, p, q);
        let j1 = hb(&hb(&hu, &hv)?, &hw)?;
        let j2 = hb(&hb(&hv, &hw)?, &hu)?;
        let j3 = hb(&hb(&hw, &hu)?, &hv)?;
        let hat = (j1.z + j2.z + j3.z).abs_f64().max(j1.g.add(&j2.g).add(&j3.g).max_abs());
        r.hat_jacobi = r.hat_jacobi.max(hat);

        let [m1, m2, m3] = std::array::from_fn(|_| MotionElement::<T>::random(sys, &mut g));
        let mb = motion_bracket::<T>;
        let (k1, k2, k3) = (mb(&mb(&m1, &m2), &m3), mb(&mb(&m2, &m3), &m1), mb(&mb(&m3, &m1), &m2));
        let mj = (k1.t + k2.t + k3.t)
            .abs_f64()
            .max(max_abs(&(k1.v + k2.v + k3.v)))
            .max(k1.k.add(&k2.k).add(&k3.k).max_abs());
        r.motion_jacobi = r.motion_jacobi.max(mj);
    }
    r.pass = [
        r.kkt_jacobi,
        r.real_form_closure,
        r.theta_automorphism,
        r.cocycle,
        r.k_invariance,
        r.hat_jacobi,
        r.motion_jacobi,
    ]
    .iter()
    .all(|v| *v <= tol);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;

    fn sys(kind: TripleKind) -> TripleSystem {
        TripleSystem::positive(kind).unwrap()
    }

    fn small_models() -> Vec<TripleSystem> {
        let mut v = Vec::new();
        for p in 1..=3 {
            for q in 1..=3 {
                v.push(sys(TripleKind::I { p, q }));
            }
        }
        for n in 1..=3 {
            if n >= 2 {
                v.push(sys(TripleKind::II { n }));
            }
            v.push(sys(TripleKind::III { n }));
            v.push(sys(TripleKind::IV { n }));
        }
        v
    }

    fn e11() -> DMatrix<C64> {
        let mut m = DMatrix::zeros(2, 2);
        m[(0, 0)] = C64::new(1.0, 0.0);
        m
    }

    #[test]
    fn bracket_examples() {
        let s = sys(TripleKind::I { p: 2, q: 2 });
        let mut g = rng(1);
        let x = s.random_element(&mut g);
        let y = s.random_element(&mut g);
        let ux = KktElement { x: x.clone(), ..KktElement::zero(&s) };
        let uy = KktElement { y: y.clone(), ..KktElement::zero(&s) };
        let b = kkt_bracket(&s, &ux, &uy).unwrap();
        assert_eq!(b.a, AutElement::box_of(&s, &x, &y));
        assert!(max_abs(&b.x) == 0.0 && max_abs(&b.y) == 0.0);
        let a = AutElement::<C64>::random(&s, &mut g, true);
        let ua = KktElement { a: a.clone(), ..KktElement::zero(&s) };
        let b = kkt_bracket(&s, &ua, &ux).unwrap();
        assert!(max_abs(&(&b.x - a.apply(&x))) < 1e-15 && b.a.max_abs() == 0.0);
    }

    #[test]
    fn box_lift_acts_as_box_operator() {
        for s in small_models() {
            for t in [s, s.dual()] {
                let mut g = rng(4);
                let [x, y, z] = std::array::from_fn(|_| t.sample_element::<GaussRat, _>(&mut g));
                assert_eq!(AutElement::box_of(&t, &x, &y).apply(&z), t.triple(&x, &y, &z).unwrap(), "{t}");
            }
        }
    }

    #[test]
    fn theta_examples() {
        let s = sys(TripleKind::I { p: 2, q: 2 });
        let mut g = rng(2);
        for _ in 0..50 {
            let e = KktElement::<C64>::random(&s, &mut g);
            assert_eq!(theta(&theta(&e)), e);
            let r = KktElement::<C64>::random_real(&s, &mut g);
            let t = theta(&r);
            assert_eq!((t.x, t.a, t.y), (-&r.x, r.a.clone(), -&r.y));
        }
    }

    #[test]
    fn d_examples() {
        let s = sys(TripleKind::I { p: 2, q: 2 });
        assert_eq!(d_action(&s, &e11()), e11() * C64::new(0.0, 1.0));
        let ev = ad_d_spectrum(&sys(TripleKind::I { p: 1, q: 1 })).unwrap();
        let want = [C64::new(0.0, 1.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, -1.0)];
        assert_eq!(ev.len(), 4);
        for (a, b) in ev.iter().zip(want) {
            assert!((a - b).norm() < 1e-12, "{ev:?}");
        }
        for t in small_models() {
            let x = t.random_element(&mut rng(3));
            assert!(max_abs(&(d_action(&t, &d_action(&t, &x)) + &x)) < 1e-14);
            let spec = ad_d_spectrum(&t).unwrap();
            assert!(spec.iter().all(|z| z.re.abs() < 1e-10 && [-1.0, 0.0, 1.0].iter().any(|v| (z.im - v).abs() < 1e-10)));
        }
    }

    #[test]
    fn omega_examples() {
        let x = e11();
        let y = e11() * C64::new(0.0, 1.0);
        // 2 Im tr(x y*) = 2 Im(-i) = -2 with the trace form linear in the first slot
        assert_eq!(omega_p(&x, &y), C64::new(-2.0, 0.0));
        assert_eq!(omega_p(&y, &x), C64::new(2.0, 0.0));
        let z = sys(TripleKind::I { p: 2, q: 3 }).random_element(&mut rng(5));
        assert!(omega_p(&z, &z).norm() < 1e-15);
    }

    #[test]
    fn hat_and_motion_examples() {
        let s = sys(TripleKind::I { p: 2, q: 2 });
        let mut g = rng(6);
        let x = KktElement::<C64>::random_real(&s, &mut g);
        let one = CentralElement { z: C64::new(1.0, 0.0), g: KktElement::zero(&s) };
        let cx = CentralElement { z: C64::new(0.0, 0.0), g: x.clone() };
        let r = hat_bracket(&s, &one, &cx).unwrap();
        assert_eq!(r.z, C64::new(0.0, 0.0));
        assert_eq!(r.g.max_abs(), 0.0);
        let px = KktElement::real(s.random_element(&mut g), AutElement::zero(&s));
        let py = KktElement::real(s.random_element(&mut g), AutElement::zero(&s));
        let r = hat_bracket(&s, &CentralElement { z: C64::new(0.0, 0.0), g: px.clone() }, &CentralElement { z: C64::new(0.0, 0.0), g: py.clone() }).unwrap();
        assert_eq!(r.z, omega_p(&px.x, &py.x));
        assert_eq!(r.g, kkt_bracket(&s, &px, &py).unwrap());

        let v = s.random_element(&mut g);
        let w = s.random_element(&mut g);
        let zero = AutElement::zero(&s);
        let pv = MotionElement { t: C64::new(0.0, 0.0), v: v.clone(), k: zero.clone() };
        let pw = MotionElement { t: C64::new(0.0, 0.0), v: w.clone(), k: zero.clone() };
        let b = motion_bracket(&pv, &pw);
        assert_eq!(b.t, omega_p(&v, &w));
        assert_eq!(max_abs(&b.v), 0.0);
        let central = MotionElement { t: C64::new(1.0, 0.0), v: DMatrix::zeros(2, 2), k: zero.clone() };
        let b = motion_bracket(&central, &pv);
        assert_eq!(b.t, C64::new(0.0, 0.0));
        assert_eq!(max_abs(&b.v), 0.0);
        let a = AutElement::random(&s, &mut g, true);
        let ka = MotionElement { t: C64::new(0.0, 0.0), v: DMatrix::zeros(2, 2), k: a.clone() };
        assert_eq!(motion_bracket(&ka, &pv).v, a.apply(&v));
    }

    #[test]
    fn float_suites_pass_on_small_models() {
        for s in small_models() {
            for t in [s, s.dual()] {
                let r = check_lie::<C64>(&t, 100, 1e-10, 9).unwrap();
                assert!(r.pass, "{r:?}");
            }
        }
    }

    #[test]
    fn exact_suites_have_zero_residual() {
        for s in small_models() {
            let r = check_lie::<GaussRat>(&s, 10, 0.0, 9).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn theta_is_exp_pi_ad_d() {
        assert!(theta_exp_residual(&sys(TripleKind::I { p: 2, q: 2 })).unwrap() <= 1e-8);
        assert!(theta_exp_residual(&sys(TripleKind::IV { n: 3 })).unwrap() <= 1e-8);
    }

    #[test]
    fn ad_matrix_matches_bracket() {
        let s = sys(TripleKind::III { n: 2 });
        let mut g = rng(8);
        let u = KktElement::<C64>::random(&s, &mut g);
        let v = KktElement::<C64>::random(&s, &mut g);
        let lhs = ad_matrix(&s, &u).unwrap() * kkt_coords(&s, &v);
        let rhs = kkt_coords(&s, &kkt_bracket(&s, &u, &v).unwrap());
        assert!((lhs - rhs).iter().all(|z| z.norm() < 1e-10));
    }
}
